#include "nwv/pointer_wv.hpp"

#include <cmath>
#include <sstream>

namespace nwv {

GaussianPointer::GaussianPointer(double q0_, double delta_, double lambda_)
    : q0(q0_), delta(delta_), lambda(lambda_) {
  if (!std::isfinite(q0) || !std::isfinite(delta) || !std::isfinite(lambda)) {
    throw DomainError("pointer parameters must be finite");
  }
  if (delta <= 0.0) {
    std::ostringstream msg;
    msg << "pointer width delta must be positive, got " << delta;
    throw DomainError(msg.str());
  }
}

Complex standard_wv(const Observable& A, const StateVector& i,
                    const StateVector& f, double overlap_floor) {
  const Complex overlap = inner(f, i);
  if (std::abs(overlap) <= overlap_floor) {
    throw OrthogonalPostselection(std::abs(overlap));
  }
  const Complex numerator = f.amplitudes().dot(A.matrix() * i.amplitudes());
  return numerator / overlap;
}

double pointer_mean_linear(const Observable& A, const StateVector& i,
                           const StateVector& f, const GaussianPointer& pointer,
                           double overlap_floor) {
  return pointer.q0 +
         pointer.lambda * standard_wv(A, i, f, overlap_floor).real();
}

double pointer_mean_exact(const Observable& A, const StateVector& i,
                          const StateVector& f,
                          const GaussianPointer& pointer) {
  if (A.dim() != i.dim() || A.dim() != f.dim()) {
    throw DimensionError("pointer_mean_exact dimension mismatch");
  }
  const Eigen::VectorXd& a = A.eigenvalues();
  const CMatrix& basis = A.eigenvectors();
  // c_m = <f|a_m><a_m|i>
  const CVector f_coeffs = basis.adjoint() * f.amplitudes();
  const CVector i_coeffs = basis.adjoint() * i.amplitudes();
  const int n = A.dim();

  Complex numerator(0.0, 0.0);
  Complex denominator(0.0, 0.0);
  const double width_factor =
      pointer.lambda * pointer.lambda / (8.0 * pointer.delta * pointer.delta);
  for (int m = 0; m < n; ++m) {
    const Complex cm = std::conj(f_coeffs[m]) * i_coeffs[m];
    for (int k = 0; k < n; ++k) {
      const Complex ck = std::conj(f_coeffs[k]) * i_coeffs[k];
      const double gap = a[m] - a[k];
      const Complex weight =
          std::conj(cm) * ck * std::exp(-width_factor * gap * gap);
      denominator += weight;
      numerator += weight * (pointer.q0 + 0.5 * pointer.lambda * (a[m] + a[k]));
    }
  }
  if (denominator.real() <= 1e-28) {
    std::ostringstream msg;
    msg << "postselection annihilated the pointer state (norm^2 = "
        << denominator.real() << ")";
    throw PostselectionAnnihilated(msg.str());
  }
  const double mean = numerator.real() / denominator.real();
  if (!std::isfinite(mean)) {
    throw NumericError("exact pointer mean is not finite");
  }
  return mean;
}

WeakValueResult analyze_weak_value(const Observable& A, const StateVector& i,
                                   const StateVector& f,
                                   const GaussianPointer& pointer,
                                   double overlap_floor) {
  WeakValueResult result;
  result.overlap = inner(f, i);
  result.wv = standard_wv(A, i, f, overlap_floor);
  result.pointer_mean_linear = pointer.q0 + pointer.lambda * result.wv.real();
  result.pointer_mean_exact = pointer_mean_exact(A, i, f, pointer);
  return result;
}

}  // namespace nwv
