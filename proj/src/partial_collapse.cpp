#include "nwv/partial_collapse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nwv {

PartialCollapseConfig::PartialCollapseConfig(std::vector<double> probs,
                                             std::vector<double> phases)
    : probs_(std::move(probs)), phases_(std::move(phases)) {
  if (probs_.size() < 2) {
    throw DimensionError("PartialCollapseConfig requires dimension >= 2");
  }
  for (std::size_t m = 0; m < probs_.size(); ++m) {
    const double p = probs_[m];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      std::ostringstream msg;
      msg << "tunneling probability p[" << m << "] = " << p
          << " outside [0, 1]";
      throw DomainError(msg.str());
    }
  }
  if (phases_.empty()) {
    phases_.assign(probs_.size(), 0.0);
  } else if (phases_.size() != probs_.size()) {
    throw DimensionError("phases length must match probs length");
  }
  for (std::size_t m = 0; m < phases_.size(); ++m) {
    if (!std::isfinite(phases_[m])) {
      std::ostringstream msg;
      msg << "backaction phase phi[" << m << "] must be finite";
      throw DomainError(msg.str());
    }
  }
}

PartialCollapseConfig PartialCollapseConfig::from_rates(
    const std::vector<double>& rates, double time, std::vector<double> phases) {
  return PartialCollapseConfig(probabilities_from_rates(rates, time),
                               std::move(phases));
}

std::vector<double> probabilities_from_rates(const std::vector<double>& rates,
                                             double time) {
  if (!std::isfinite(time) || time < 0.0) {
    std::ostringstream msg;
    msg << "time window must be nonnegative, got " << time;
    throw DomainError(msg.str());
  }
  std::vector<double> probs(rates.size());
  for (std::size_t m = 0; m < rates.size(); ++m) {
    if (!std::isfinite(rates[m]) || rates[m] < 0.0) {
      std::ostringstream msg;
      msg << "tunneling rate[" << m << "] must be nonnegative, got "
          << rates[m];
      throw DomainError(msg.str());
    }
    probs[m] = -std::expm1(-rates[m] * time);
  }
  return probs;
}

namespace {

void check_dims(const PartialCollapseConfig& cfg, const StateVector& s,
                const char* what) {
  if (cfg.dim() != s.dim()) {
    std::ostringstream msg;
    msg << what << " dimension mismatch: config dim " << cfg.dim()
        << " vs state dim " << s.dim();
    throw DimensionError(msg.str());
  }
}

}  // namespace

double click_probability(const PartialCollapseConfig& cfg,
                         const StateVector& s) {
  check_dims(cfg, s, "click_probability");
  double p = 0.0;
  for (int m = 0; m < cfg.dim(); ++m) {
    p += cfg.probs()[static_cast<std::size_t>(m)] * std::norm(s.amplitude(m));
  }
  return std::clamp(p, 0.0, 1.0);
}

StateVector backaction(const PartialCollapseConfig& cfg,
                       const StateVector& s) {
  check_dims(cfg, s, "backaction");
  double survival = 0.0;
  CVector amps(s.dim());
  for (int m = 0; m < cfg.dim(); ++m) {
    const double keep = 1.0 - cfg.probs()[static_cast<std::size_t>(m)];
    survival += keep * std::norm(s.amplitude(m));
    amps[m] = s.amplitude(m) * std::sqrt(keep) *
              std::polar(1.0, cfg.phases()[static_cast<std::size_t>(m)]);
  }
  if (survival <= kCertainClickTol) {
    std::ostringstream msg;
    msg << "first measurement clicks with certainty (survival probability "
        << survival << ")";
    throw StateDestroyed(msg.str());
  }
  return StateVector::normalized(std::move(amps));
}

Observable mw_observable(const PartialCollapseConfig& cfg) {
  return Observable::diagonal(cfg.probs());
}

Observable Calibration::system_observable(
    const PartialCollapseConfig& cfg) const {
  if (scale == 0.0 || !std::isfinite(scale) || !std::isfinite(offset)) {
    throw DomainError("calibration scale must be finite and nonzero");
  }
  std::vector<double> evals(cfg.probs());
  for (double& v : evals) {
    v = (v - offset) / scale;
  }
  return Observable::diagonal(evals);
}

namespace {

constexpr double kStructureTol = 1e-12;

Calibration dominant_calibration(const PartialCollapseConfig& cfg,
                                 const DominantState& mode) {
  if (mode.level < 0 || mode.level >= cfg.dim()) {
    throw CalibrationError(mode.level, "level index out of range");
  }
  const double p = cfg.probs()[static_cast<std::size_t>(mode.level)];
  if (p <= 0.0) {
    throw CalibrationError(mode.level,
                           "dominant-state calibration needs p > 0");
  }
  return Calibration{p, 0.0};
}

Calibration subspace_calibration(const PartialCollapseConfig& cfg,
                                 const Subspace& mode) {
  if (mode.k < 0 || mode.k >= cfg.dim() - 1) {
    throw CalibrationError(mode.k,
                           "subspace boundary must satisfy 0 <= k < dim - 1");
  }
  const double p = cfg.probs()[0];
  const double p_prime = cfg.probs()[static_cast<std::size_t>(mode.k) + 1];
  for (int l = 1; l <= mode.k; ++l) {
    if (std::abs(cfg.probs()[static_cast<std::size_t>(l)] - p) >
        kStructureTol) {
      throw CalibrationError(l, "probability differs inside the subspace");
    }
  }
  for (int l = mode.k + 2; l < cfg.dim(); ++l) {
    if (std::abs(cfg.probs()[static_cast<std::size_t>(l)] - p_prime) >
        kStructureTol) {
      throw CalibrationError(l, "probability differs on the complement");
    }
  }
  if (std::abs(p - p_prime) <= kStructureTol) {
    throw CalibrationError(
        mode.k, "subspace and complement probabilities must differ");
  }
  return Calibration{p - p_prime, p_prime};
}

}  // namespace

Calibration calibration_for(const PartialCollapseConfig& cfg,
                            const CalibrationMode& mode) {
  return std::visit(
      [&](const auto& m) -> Calibration {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DominantState>) {
          return dominant_calibration(cfg, m);
        } else {
          return subspace_calibration(cfg, m);
        }
      },
      mode);
}

}  // namespace nwv
