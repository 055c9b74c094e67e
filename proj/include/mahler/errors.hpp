#pragma once

#include <stdexcept>
#include <string>

namespace mahler {

class MahlerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that the caller can fix: bad syntax, out-of-domain arguments.
class InputError : public MahlerError {
 public:
  using MahlerError::MahlerError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class ZeroInput : public InputError {
 public:
  ZeroInput() : InputError("zero has no exponent vector") {}
};

class IdentityInput : public InputError {
 public:
  IdentityInput() : InputError("the identity class has no Kummer degree") {}
};

class UnsupportedTarget : public InputError {
 public:
  using InputError::InputError;
};

class BudgetZero : public InputError {
 public:
  BudgetZero() : InputError("search budget allows zero terms") {}
};

class InvalidModel : public InputError {
 public:
  using InputError::InputError;
};

// Enclosures still overlap at the maximum precision with width >= tie_eps.
class PrecisionExhausted : public MahlerError {
 public:
  using MahlerError::MahlerError;
};

class ToleranceUnreachable : public MahlerError {
 public:
  using MahlerError::MahlerError;
};

}  // namespace mahler
