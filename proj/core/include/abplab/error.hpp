#pragma once

#include <stdexcept>
#include <string>

namespace abplab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad spacing, wrong dimension, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis does not hold for the supplied data. Estimate reports
/// convert this into a verdict instead of propagating it.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

/// Unknown catalog entry (profile, closed form, gallery bundle).
class CatalogError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double final_residual, long sweeps)
      : Error(what), final_residual_(final_residual), sweeps_(sweeps) {}

  double final_residual() const noexcept { return final_residual_; }
  long sweeps() const noexcept { return sweeps_; }

 private:
  double final_residual_;
  long sweeps_;
};

}  // namespace abplab
