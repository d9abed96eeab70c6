#pragma once

#include <stdexcept>
#include <string>

namespace zetavoa {

/// A coefficient was requested past the order a truncated series knows.
class TruncationError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// A cell lies outside the region where a series or operator is known exactly.
class UncertifiedRegion : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace zetavoa
