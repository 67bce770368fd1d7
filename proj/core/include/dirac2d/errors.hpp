#pragma once

#include <stdexcept>
#include <string>

namespace dirac2d {

// Base of every failure raised by the library. Callers that only care about
// "did it work" catch this; callers that branch on cause catch the subclass.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A FieldConfiguration (or other input) field is out of its domain.
// field() names the offending parameter so front ends can map it to a flag.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ExcludedEnergy : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// NU engine failures.
class DegenerateSigma : public Error {
 public:
  using Error::Error;
};
class NoRealK : public Error {
 public:
  using Error::Error;
};
class NoBoundBranch : public Error {
 public:
  using Error::Error;
};
class NotLaguerreClass : public Error {
 public:
  using Error::Error;
};

// Finite-difference oracle failures.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};
class NoSignChange : public Error {
 public:
  using Error::Error;
};

}  // namespace dirac2d
