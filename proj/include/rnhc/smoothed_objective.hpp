#pragma once

#include <Eigen/Dense>

#include "rnhc/hypergraph.hpp"
#include "rnhc/parallel.hpp"

namespace rnhc {

// n x p matrix with orthonormal columns.
struct Embedding {
  Eigen::MatrixXd values;

  // Throws std::invalid_argument when entries are non-finite or
  // ||X^T X - I||_max exceeds tol.
  static Embedding from_matrix(Eigen::MatrixXd values, double tol = 1e-8);
  double ortho_drift() const;
};

// Shat(c,e) = max_{v in e} X(v,c) + ln(sum_{v in e} exp(alpha (X(v,c) - max))) / alpha.
// The max shift keeps every exponent argument <= 0.
struct SmoothedSpan {
  Eigen::MatrixXd values;  // p x m
  double alpha = 0.0;
};

SmoothedSpan smoothed_span(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha,
                           ExecPolicy policy = ExecPolicy::Serial);

// f = sum of all p*m entries of Shat, accumulated per edge then across edges
// so that Serial and Parallel agree bitwise.
double objective(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha,
                 ExecPolicy policy = ExecPolicy::Serial);

struct ObjectiveGradient {
  double value = 0.0;
  Eigen::MatrixXd gradient;  // n x p; G(v,c) = sum_{e with v} softmax weight of v in (c,e)
};

ObjectiveGradient objective_gradient(const Hypergraph& h, const Eigen::MatrixXd& x, double alpha,
                                     ExecPolicy policy = ExecPolicy::Serial);

}  // namespace rnhc
