#pragma once

#include <stdexcept>
#include <string>

namespace fobie {

// Quadrature grid cannot integrate the requested products exactly.
class GridTooSmall : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A diagonal operator has an eigenvalue too close to zero to invert.
class DegenerateOperator : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Coefficient content landed beyond the allocated truncation degree.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace fobie
