#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nwv {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Operands belong to Hilbert spaces of different dimension, or an index is
/// outside the valid range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside its mathematical domain (negative rate, probability
/// outside [0,1], non-finite amplitude, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Attempted to normalize a vector with vanishing norm.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// Matrix fails the unitarity check U†U = I.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

/// Matrix fails the Hermiticity check, or an expectation value retained a
/// non-negligible imaginary part.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

/// Pre- and postselected states are orthogonal within the overlap floor, so a
/// weak value is undefined. Carries the offending overlap magnitude.
class OrthogonalPostselection : public Error {
 public:
  explicit OrthogonalPostselection(double overlap_magnitude)
      : Error("postselection is orthogonal to the preselected state "
              "(|<f|i>| = " +
              std::to_string(overlap_magnitude) + ")"),
        overlap_magnitude_(overlap_magnitude) {}

  double overlap_magnitude() const { return overlap_magnitude_; }

 private:
  double overlap_magnitude_;
};

/// Postselection removed all pointer amplitude; the conditional pointer mean
/// is undefined.
class PostselectionAnnihilated : public Error {
 public:
  using Error::Error;
};

/// The first measurement clicks with certainty, so no post-null-outcome state
/// exists.
class StateDestroyed : public Error {
 public:
  using Error::Error;
};

/// Tunneling probabilities do not have the structure the requested calibration
/// needs. Carries the offending level index.
class CalibrationError : public Error {
 public:
  CalibrationError(int index, const std::string& what_arg)
      : Error("calibration error at level " + std::to_string(index) + ": " +
              what_arg),
        index_(index) {}

  int index() const { return index_; }

 private:
  int index_;
};

/// The conditioning outcome (no click in the final measurement) has zero
/// probability, so the conditional click probability is undefined.
class ConditioningImpossible : public Error {
 public:
  using Error::Error;
};

/// No sampled trajectory survived the conditioning event. Carries the counts.
class InsufficientStatistics : public Error {
 public:
  InsufficientStatistics(std::int64_t n_samples, std::int64_t n_conditioning)
      : Error("no conditioning events observed (" +
              std::to_string(n_conditioning) + " of " +
              std::to_string(n_samples) + " samples)"),
        n_samples_(n_samples),
        n_conditioning_(n_conditioning) {}

  std::int64_t n_samples() const { return n_samples_; }
  std::int64_t n_conditioning() const { return n_conditioning_; }

 private:
  std::int64_t n_samples_;
  std::int64_t n_conditioning_;
};

/// An internal numeric cross-check failed (dual-route disagreement, broken
/// probability identity, non-finite intermediate).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration failed validation. Messages carry the JSON field
/// path of the offending entry.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Two configurations that must share all protocol parameters differ. Lists
/// the differing fields.
class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nwv
