#include "nwv/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "nwv/log.hpp"

namespace nwv {

namespace {

// Deterministic per-run quantities of the event tree: the first-click
// probability and, when a silent branch exists, the final-click probability
// of the evolved post-backaction state.
struct TreeProbabilities {
  double p_click1;
  double p_click2_given_null;  // meaningful only when a silent branch exists
  bool null_branch_exists;
};

TreeProbabilities tree_probabilities(const PartialCollapseConfig& cfg,
                                     const StateVector& i, const Unitary& U,
                                     int postselect_index) {
  if (cfg.dim() != i.dim() || cfg.dim() != U.dim()) {
    throw DimensionError("trajectory sampling dimension mismatch");
  }
  if (postselect_index < 0 || postselect_index >= cfg.dim()) {
    std::ostringstream msg;
    msg << "postselect index " << postselect_index << " out of range for dim "
        << cfg.dim();
    throw DimensionError(msg.str());
  }
  TreeProbabilities tree;
  tree.p_click1 = click_probability(cfg, i);
  tree.null_branch_exists = (1.0 - tree.p_click1) > kCertainClickTol;
  tree.p_click2_given_null = 0.0;
  if (tree.null_branch_exists) {
    const StateVector evolved = apply_unitary(U, backaction(cfg, i));
    tree.p_click2_given_null = std::norm(evolved.amplitude(postselect_index));
  }
  return tree;
}

TrajectoryOutcome sample_with(const TreeProbabilities& tree, SplitMix64& rng) {
  TrajectoryOutcome outcome;
  outcome.first_click = rng.uniform() < tree.p_click1;
  if (outcome.first_click || !tree.null_branch_exists) {
    // Destroyed system: no click upon further measurements.
    outcome.second_click = false;
    return outcome;
  }
  outcome.second_click = rng.uniform() < tree.p_click2_given_null;
  return outcome;
}

struct Counts {
  std::int64_t conditioning = 0;  // trajectories with no final click
  std::int64_t successes = 0;     // of those, trajectories with a first click
};

Counts count_range(const TreeProbabilities& tree, std::uint64_t seed,
                   std::int64_t begin, std::int64_t end) {
  Counts counts;
  for (std::int64_t k = begin; k < end; ++k) {
    SplitMix64 rng =
        SplitMix64::substream(seed, static_cast<std::uint64_t>(k));
    const TrajectoryOutcome outcome = sample_with(tree, rng);
    if (!outcome.second_click) {
      ++counts.conditioning;
      if (outcome.first_click) ++counts.successes;
    }
  }
  return counts;
}

}  // namespace

TrajectoryOutcome sample_trajectory(const PartialCollapseConfig& cfg,
                                    const StateVector& i, const Unitary& U,
                                    int postselect_index, SplitMix64& rng) {
  return sample_with(tree_probabilities(cfg, i, U, postselect_index), rng);
}

EstimateWithError estimate_conditional(const PartialCollapseConfig& cfg,
                                       const StateVector& i, const Unitary& U,
                                       int postselect_index,
                                       std::int64_t n_samples,
                                       std::uint64_t seed, int jobs) {
  if (n_samples < 1) {
    throw DomainError("n_samples must be >= 1");
  }
  const TreeProbabilities tree =
      tree_probabilities(cfg, i, U, postselect_index);

  const int workers = static_cast<int>(std::clamp<std::int64_t>(
      jobs, 1, std::max<std::int64_t>(n_samples, 1)));
  std::vector<Counts> partials(static_cast<std::size_t>(workers));
  if (workers == 1) {
    partials[0] = count_range(tree, seed, 0, n_samples);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (n_samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = std::min<std::int64_t>(w * chunk, n_samples);
      const std::int64_t end =
          std::min<std::int64_t>(begin + chunk, n_samples);
      pool.emplace_back([&, w, begin, end] {
        partials[static_cast<std::size_t>(w)] =
            count_range(tree, seed, begin, end);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  Counts total;
  for (const Counts& c : partials) {
    total.conditioning += c.conditioning;
    total.successes += c.successes;
  }

  if (total.conditioning == 0) {
    throw InsufficientStatistics(n_samples, total.conditioning);
  }
  if (total.conditioning < 100) {
    std::ostringstream msg;
    msg << "only " << total.conditioning << " of " << n_samples
        << " trajectories survived the conditioning; the normal-approximation "
           "standard error is unreliable";
    log_warn(msg.str());
  }

  EstimateWithError estimate;
  estimate.value = static_cast<double>(total.successes) /
                   static_cast<double>(total.conditioning);
  estimate.std_error =
      std::sqrt(estimate.value * (1.0 - estimate.value) /
                static_cast<double>(total.conditioning));
  estimate.n_samples = n_samples;
  estimate.n_conditioning = total.conditioning;
  return estimate;
}

EstimateWithError estimate_nwv(const PartialCollapseConfig& cfg,
                               const Calibration& cal, const StateVector& i,
                               const Unitary& U, int postselect_index,
                               std::int64_t n_samples, std::uint64_t seed,
                               int jobs) {
  if (cal.scale == 0.0 || !std::isfinite(cal.scale) ||
      !std::isfinite(cal.offset)) {
    throw DomainError("calibration scale must be finite and nonzero");
  }
  EstimateWithError estimate =
      estimate_conditional(cfg, i, U, postselect_index, n_samples, seed, jobs);
  estimate.value = cal.apply(estimate.value);
  estimate.std_error /= std::abs(cal.scale);
  return estimate;
}

}  // namespace nwv
