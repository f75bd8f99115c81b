#pragma once

#include "nwv/hilbert.hpp"

namespace nwv {

/// Gaussian detector pointer: rest position q0, wavepacket width delta, and
/// impulsive coupling strength lambda (position shift per observable unit).
struct GaussianPointer {
  double q0 = 0.0;
  double delta = 1.0;
  double lambda = 0.0;

  GaussianPointer(double q0_, double delta_, double lambda_);
};

/// Weak value together with the pointer readouts it predicts.
struct WeakValueResult {
  Complex wv;
  double pointer_mean_linear;
  double pointer_mean_exact;
  Complex overlap;
};

/// The conditional average <f|A|i> / <f|i>. Throws OrthogonalPostselection
/// (carrying |<f|i>|) when the overlap magnitude is at or below the floor.
Complex standard_wv(const Observable& A, const StateVector& i,
                    const StateVector& f,
                    double overlap_floor = kDefaultOverlapFloor);

/// Linear-response pointer mean q0 + lambda * Re(weak value).
double pointer_mean_linear(const Observable& A, const StateVector& i,
                           const StateVector& f, const GaussianPointer& pointer,
                           double overlap_floor = kDefaultOverlapFloor);

/// Exact mean position of the postselected pointer, from the Gaussian overlap
/// of the packets displaced per eigenvalue. With c_m = <f|a_m><a_m|i> and
/// G_mn = exp(-lambda^2 (a_m - a_n)^2 / (8 delta^2)):
///
///   <q> = sum_mn conj(c_m) c_n G_mn (q0 + lambda (a_m + a_n) / 2)
///         / sum_mn conj(c_m) c_n G_mn .
///
/// Throws PostselectionAnnihilated when the postselected pointer norm
/// vanishes.
double pointer_mean_exact(const Observable& A, const StateVector& i,
                          const StateVector& f, const GaussianPointer& pointer);

/// Convenience bundle of the three readouts above.
WeakValueResult analyze_weak_value(const Observable& A, const StateVector& i,
                                   const StateVector& f,
                                   const GaussianPointer& pointer,
                                   double overlap_floor = kDefaultOverlapFloor);

}  // namespace nwv
