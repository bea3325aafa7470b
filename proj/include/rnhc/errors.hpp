#pragma once

#include <stdexcept>

namespace rnhc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// .hgr format codes 1/10/11 declare weights, which we do not support.
struct UnsupportedFormatError : ParseError {
  using ParseError::ParseError;
};

// A cluster is empty or has zero volume, so nhcut is undefined.
struct InvalidPartitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rnhc
