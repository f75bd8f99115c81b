#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "nwv/hilbert.hpp"

namespace nwv_test {

inline nwv::StateVector random_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  nwv::CVector v(dim);
  for (int m = 0; m < dim; ++m) {
    v[m] = nwv::Complex(gauss(rng), gauss(rng));
  }
  return nwv::StateVector::normalized(std::move(v));
}

inline nwv::Unitary random_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  nwv::CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = nwv::Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<nwv::CMatrix> qr(g);
  nwv::CMatrix q = qr.householderQ();
  return nwv::Unitary(std::move(q));
}

inline nwv::Observable random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  nwv::CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = nwv::Complex(gauss(rng), gauss(rng));
    }
  }
  nwv::CMatrix h = 0.5 * (g + g.adjoint());
  return nwv::Observable(std::move(h));
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Composite Simpson rule on [lo, hi] with an even number of panels.
template <typename F>
double simpson(F&& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int k = 1; k < panels; ++k) {
    sum += f(lo + k * h) * ((k % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace nwv_test
