#pragma once

#include <cstdint>

#include "nwv/partial_collapse.hpp"
#include "nwv/rng.hpp"

namespace nwv {

/// Single-shot outcome of the two-measurement event tree. A first click
/// destroys the system, so the second measurement is recorded as a definite
/// no-click on that branch.
struct TrajectoryOutcome {
  bool first_click;
  bool second_click;
};

/// Binomial estimate of a conditional probability.
struct EstimateWithError {
  double value;
  double std_error;  ///< sqrt(value * (1 - value) / n_conditioning)
  std::int64_t n_samples;
  std::int64_t n_conditioning;  ///< samples surviving the conditioning event
};

/// Samples one run of the protocol: the first click fires with the state's
/// click probability; on a null outcome the state suffers the backaction, is
/// evolved by U, and the final measurement clicks with the evolved population
/// of the postselected level.
TrajectoryOutcome sample_trajectory(const PartialCollapseConfig& cfg,
                                    const StateVector& i, const Unitary& U,
                                    int postselect_index, SplitMix64& rng);

/// Empirical conditional click probability
///   #(first click AND no final click) / #(no final click)
/// over n_samples independent trajectories. Trajectory k draws from
/// SplitMix64::substream(seed, k), so results are identical for any `jobs`.
/// Throws InsufficientStatistics when no trajectory survives the
/// conditioning; warns when fewer than 100 do.
EstimateWithError estimate_conditional(const PartialCollapseConfig& cfg,
                                       const StateVector& i, const Unitary& U,
                                       int postselect_index,
                                       std::int64_t n_samples,
                                       std::uint64_t seed, int jobs = 1);

/// Calibrated Monte Carlo null weak value: (estimate - offset) / scale with
/// the standard error scaled by 1/|scale|.
EstimateWithError estimate_nwv(const PartialCollapseConfig& cfg,
                               const Calibration& cal, const StateVector& i,
                               const Unitary& U, int postselect_index,
                               std::int64_t n_samples, std::uint64_t seed,
                               int jobs = 1);

}  // namespace nwv
