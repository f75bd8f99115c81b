#include "nwv/nwv_protocol.hpp"

#include <cmath>
#include <sstream>

namespace nwv {

namespace {

constexpr double kProbIdentityTol = 1e-12;
constexpr double kRouteTol = 1e-10;

void check_range(double p, const char* name) {
  if (!(p >= -kProbIdentityTol && p <= 1.0 + kProbIdentityTol)) {
    std::ostringstream msg;
    msg << name << " = " << p << " outside [0, 1]";
    throw NumericError(msg.str());
  }
}

}  // namespace

void ProtocolProbabilities::validate() const {
  check_range(p_click1, "p_click1");
  check_range(p_null1, "p_null1");
  check_range(p_nofail_given_null, "p_nofail_given_null");
  check_range(p_postselect_total, "p_postselect_total");
  check_range(p_click1_given_postselect, "p_click1_given_postselect");
  if (std::abs(p_click1 + p_null1 - 1.0) > kProbIdentityTol) {
    throw NumericError("p_click1 + p_null1 != 1");
  }
  const double total = p_click1 + p_null1 * p_nofail_given_null;
  if (std::abs(p_postselect_total - total) > kProbIdentityTol) {
    throw NumericError("total-probability identity violated");
  }
}

ProtocolProbabilities run_analytic(const PartialCollapseConfig& cfg,
                                   const StateVector& i, const Unitary& U,
                                   int postselect_index) {
  if (cfg.dim() != i.dim() || cfg.dim() != U.dim()) {
    std::ostringstream msg;
    msg << "run_analytic dimension mismatch: config " << cfg.dim()
        << ", state " << i.dim() << ", unitary " << U.dim();
    throw DimensionError(msg.str());
  }
  if (postselect_index < 0 || postselect_index >= cfg.dim()) {
    std::ostringstream msg;
    msg << "postselect index " << postselect_index << " out of range for dim "
        << cfg.dim();
    throw DimensionError(msg.str());
  }

  ProtocolProbabilities out;
  out.p_click1 = click_probability(cfg, i);
  out.p_null1 = 1.0 - out.p_click1;

  if (out.p_null1 <= kCertainClickTol) {
    // Certain click: the silent branch never occurs; its conditional is
    // vacuous and set to 1 so the probability identities stay consistent.
    out.p_nofail_given_null = 1.0;
    out.p_postselect_total = out.p_click1;
    out.p_click1_given_postselect = 1.0;
    out.validate();
    return out;
  }

  const StateVector evolved = apply_unitary(U, backaction(cfg, i));
  double nofail = 0.0;
  for (int m = 0; m < cfg.dim(); ++m) {
    if (m == postselect_index) continue;
    nofail += std::norm(evolved.amplitude(m));
  }
  out.p_nofail_given_null = std::min(nofail, 1.0);

  // A first click always yields a silent final measurement, so it survives
  // the conditioning with probability 1.
  out.p_postselect_total =
      out.p_click1 + out.p_null1 * out.p_nofail_given_null;
  if (out.p_postselect_total <= 0.0) {
    throw ConditioningImpossible(
        "the conditioning outcome has zero probability: the first measurement "
        "never clicks and the final measurement always does");
  }
  out.p_click1_given_postselect = out.p_click1 / out.p_postselect_total;
  out.validate();
  return out;
}

NwvResult nwv_exact(const PartialCollapseConfig& cfg, const Calibration& cal,
                    const StateVector& i, const Unitary& U,
                    int postselect_index) {
  if (cal.scale == 0.0 || !std::isfinite(cal.scale) ||
      !std::isfinite(cal.offset)) {
    throw DomainError("calibration scale must be finite and nonzero");
  }

  NwvResult result;
  result.probabilities = run_analytic(cfg, i, U, postselect_index);
  result.nwv_exact =
      cal.apply(result.probabilities.p_click1_given_postselect);

  if (cal.offset == 0.0) {
    // Independent route: unconditioned calibrated average over the
    // postselection success probability.
    const double mw_mean = expectation(mw_observable(cfg), i);
    const double route =
        (mw_mean / cal.scale) / result.probabilities.p_postselect_total;
    const double tol = kRouteTol * std::max(1.0, std::abs(result.nwv_exact));
    if (std::abs(result.nwv_exact - route) > tol) {
      std::ostringstream msg;
      msg << "calibrated-average route disagrees with the Bayes route: "
          << route << " vs " << result.nwv_exact;
      throw NumericError(msg.str());
    }
  }

  if (cfg.dim() == 2 && postselect_index == 1) {
    const StateVector f = apply_unitary(U.adjoint(), StateVector::basis(2, 0));
    const double overlap_sq = std::norm(inner(f, i));
    if (overlap_sq > kDefaultOverlapFloor) {
      result.nwv_weak_limit = nwv_weak_limit_qubit(i, f);
    }
  }
  return result;
}

double nwv_weak_limit_qubit(const StateVector& i, const StateVector& f,
                            double overlap_floor) {
  if (i.dim() != 2 || f.dim() != 2) {
    throw DimensionError("weak-partial-collapse limit is a qubit formula");
  }
  const double overlap_sq = std::norm(inner(f, i));
  if (overlap_sq <= overlap_floor) {
    throw OrthogonalPostselection(std::sqrt(overlap_sq));
  }
  return std::norm(i.amplitude(1)) / overlap_sq;
}

double discrimination_signal(const PartialCollapseConfig& cfg,
                             const Calibration& cal, const StateVector& i0,
                             const StateVector& i_delta, const Unitary& U,
                             int postselect_index, bool calibrated) {
  const ProtocolProbabilities reference =
      run_analytic(cfg, i0, U, postselect_index);
  const ProtocolProbabilities perturbed =
      run_analytic(cfg, i_delta, U, postselect_index);
  const double signal = perturbed.p_click1_given_postselect -
                        reference.p_click1_given_postselect;
  if (!calibrated) {
    return signal;
  }
  if (cal.scale == 0.0 || !std::isfinite(cal.scale)) {
    throw DomainError("calibration scale must be finite and nonzero");
  }
  return signal / cal.scale;
}

}  // namespace nwv
