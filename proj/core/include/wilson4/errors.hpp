#pragma once

#include <stdexcept>
#include <string>

namespace wilson4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A rational's denominator is divisible by p; reduce through PAdic instead.
class DenominatorDivisible : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class ValuationTooLow : public Error {
 public:
  using Error::Error;
};

/// A value is not known to enough p-adic digits for the requested reduction.
class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

/// Residues (or p-adic numbers) over different moduli were combined.
class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

/// Two routes for the same quantity disagree.
class FormulaMismatch : public Error {
 public:
  using Error::Error;
};

/// No closed form is implemented for the requested (index, exponent).
class Unsupported : public Error {
 public:
  using Error::Error;
};

class UnknownCheck : public Error {
 public:
  using Error::Error;
};

class PrimeTooSmall : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

}  // namespace wilson4
