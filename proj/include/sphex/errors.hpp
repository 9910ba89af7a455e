#pragma once

#include <stdexcept>
#include <string>

namespace sphex {

// Invalid user input or model/domain validation failure.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A method was requested for a model or domain it does not apply to
// (e.g. the EEC formula on a non-smooth field).
class MethodMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Factorization or quadrature failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphex
