#pragma once

#include <stdexcept>
#include <string>

namespace fatcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

// B restricted to h is singular, so there is no reductive complement.
class DegenerateRestriction : public Error {
 public:
  using Error::Error;
};

class NotCompact : public Error {
 public:
  using Error::Error;
};

class NotSubalgebra : public Error {
 public:
  using Error::Error;
};

class TorusMismatch : public Error {
 public:
  using Error::Error;
};

class NotInSubspace : public Error {
 public:
  using Error::Error;
};

class IsotropyMismatch : public Error {
 public:
  using Error::Error;
};

class OddDimension : public Error {
 public:
  using Error::Error;
};

class ScaleFailure : public Error {
 public:
  using Error::Error;
};

class InvolutionInvalid : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fatcert
