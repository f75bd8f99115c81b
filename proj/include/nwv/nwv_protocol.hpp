#pragma once

#include <optional>

#include "nwv/partial_collapse.hpp"

namespace nwv {

/// Full probability chain of one two-step protocol run. Conventions: a click
/// of the first measurement destroys the system, so the second measurement
/// never clicks afterwards and those runs always survive the conditioning on
/// a negative final outcome.
struct ProtocolProbabilities {
  double p_click1;                  ///< first measurement clicks
  double p_null1;                   ///< first measurement stays silent
  double p_nofail_given_null;       ///< no final click, given a silent first step
  double p_postselect_total;        ///< no final click, unconditioned
  double p_click1_given_postselect; ///< first click, given no final click

  /// Checks ranges and the total/Bayes probability identities at 1e-12.
  void validate() const;
};

/// Calibrated conditional outcome of one protocol run.
struct NwvResult {
  ProtocolProbabilities probabilities;
  double nwv_exact;
  /// The weak-partial-collapse closed form; attached only on the qubit path
  /// with postselection on level 1 and a non-orthogonal effective
  /// postselection state.
  std::optional<double> nwv_weak_limit;
};

/// Evaluates the probability chain analytically: first-click probability from
/// the tunneling configuration, backaction plus unitary evolution for the
/// silent branch, and Bayes inversion for the conditional click probability.
ProtocolProbabilities run_analytic(const PartialCollapseConfig& cfg,
                                   const StateVector& i, const Unitary& U,
                                   int postselect_index);

/// Null weak value: the calibrated conditional click probability
/// (P(click1 | no final click) - offset) / scale. When offset = 0 the result
/// is cross-checked against the equivalent route <M_w>/scale / P(no final
/// click) at 1e-10.
NwvResult nwv_exact(const PartialCollapseConfig& cfg, const Calibration& cal,
                    const StateVector& i, const Unitary& U,
                    int postselect_index);

/// Weak-partial-collapse qubit limit: <i|n_1|i> / |<f|i>|^2, with f the
/// rotated frame's no-click state. Throws OrthogonalPostselection when the
/// squared overlap is at or below the floor.
double nwv_weak_limit_qubit(const StateVector& i, const StateVector& f,
                            double overlap_floor = kDefaultOverlapFloor);

/// Two-state discrimination signal: the difference of conditional click
/// probabilities P(click1 | no final click) between the perturbed and the
/// reference preparation. Uncalibrated by default; the calibrated variant
/// divides by cal.scale.
double discrimination_signal(const PartialCollapseConfig& cfg,
                             const Calibration& cal, const StateVector& i0,
                             const StateVector& i_delta, const Unitary& U,
                             int postselect_index, bool calibrated = false);

}  // namespace nwv
