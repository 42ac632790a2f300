#pragma once

#include <stdexcept>
#include <string>

namespace rqpe {

/// Malformed or out-of-contract input (bad rational string, wrong bitstring length, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generated artifact failed an internal correctness check.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rqpe
