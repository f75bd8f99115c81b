#pragma once

#include <variant>
#include <vector>

#include "nwv/hilbert.hpp"

namespace nwv {

/// A null outcome with survival probability below this threshold counts as
/// certain destruction rather than roundoff.
inline constexpr double kCertainClickTol = 1e-14;

/// Per-level tunneling probabilities p_m in [0,1] and the relative backaction
/// phases phi_m the coupling may induce (default all zero). Immutable.
class PartialCollapseConfig {
 public:
  explicit PartialCollapseConfig(std::vector<double> probs,
                                 std::vector<double> phases = {});

  /// Builds probabilities p_m = 1 - exp(-rate_m * time).
  static PartialCollapseConfig from_rates(const std::vector<double>& rates,
                                          double time,
                                          std::vector<double> phases = {});

  int dim() const { return static_cast<int>(probs_.size()); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& phases() const { return phases_; }

 private:
  std::vector<double> probs_;
  std::vector<double> phases_;
};

/// p_m = 1 - exp(-rate_m * time), componentwise. Rates and time must be
/// nonnegative.
std::vector<double> probabilities_from_rates(const std::vector<double>& rates,
                                             double time);

/// Probability of a positive first-measurement outcome, sum_m p_m |alpha_m|^2.
double click_probability(const PartialCollapseConfig& cfg,
                         const StateVector& s);

/// Normalized state after a null first-measurement outcome: amplitudes are
/// rescaled by sqrt(1 - p_m) e^{i phi_m}. Throws StateDestroyed when the
/// survival probability is below kCertainClickTol.
StateVector backaction(const PartialCollapseConfig& cfg, const StateVector& s);

/// The detector-dependent observable measured by the partial collapse:
/// diagonal with eigenvalues p_l in the computational basis.
Observable mw_observable(const PartialCollapseConfig& cfg);

/// Affine map converting outcomes of the detector-dependent observable into a
/// system observable: value -> (value - offset) / scale.
struct Calibration {
  double scale = 1.0;
  double offset = 0.0;

  double apply(double mw_value) const { return (mw_value - offset) / scale; }

  /// The calibrated system observable (M_w - offset I) / scale.
  Observable system_observable(const PartialCollapseConfig& cfg) const;
};

/// Calibration target: the population of single level `level`, valid when
/// p_level > 0. Exact when the other levels do not tunnel.
struct DominantState {
  int level;
};

/// Calibration target: the population of the subspace spanned by levels
/// 0..k, valid when probabilities are constant on the subspace and constant
/// (but different) on its complement.
struct Subspace {
  int k;
};

using CalibrationMode = std::variant<DominantState, Subspace>;

/// Derives the calibration for the requested target, validating the structure
/// of the tunneling probabilities. Throws CalibrationError naming the
/// offending level on violation.
Calibration calibration_for(const PartialCollapseConfig& cfg,
                            const CalibrationMode& mode);

}  // namespace nwv
