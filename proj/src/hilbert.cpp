#include "nwv/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace nwv {

namespace {

bool all_finite(const CVector& v) {
  for (Eigen::Index m = 0; m < v.size(); ++m) {
    if (!std::isfinite(v[m].real()) || !std::isfinite(v[m].imag())) {
      return false;
    }
  }
  return true;
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        return false;
      }
    }
  }
  return true;
}

void check_dim(Eigen::Index dim, const char* what) {
  if (dim < 2) {
    std::ostringstream msg;
    msg << what << " requires dimension >= 2, got " << dim;
    throw DimensionError(msg.str());
  }
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  check_dim(amps_.size(), "StateVector");
  if (!all_finite(amps_)) {
    throw DomainError("StateVector amplitudes must be finite");
  }
  const double nrm = amps_.norm();
  if (std::abs(nrm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "StateVector amplitudes are not normalized (norm = " << nrm << ")";
    throw DomainError(msg.str());
  }
  amps_ /= nrm;
}

StateVector StateVector::normalized(CVector raw) {
  check_dim(raw.size(), "StateVector");
  if (!all_finite(raw)) {
    throw DomainError("StateVector amplitudes must be finite");
  }
  const double nrm = raw.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw DegenerateState("cannot normalize a zero vector");
  }
  raw /= nrm;
  return StateVector(std::move(raw), AlreadyNormalized{});
}

StateVector StateVector::normalized(const std::vector<Complex>& raw) {
  CVector v(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t m = 0; m < raw.size(); ++m) {
    v[static_cast<Eigen::Index>(m)] = raw[m];
  }
  return normalized(std::move(v));
}

StateVector StateVector::basis(int dim, int index) {
  check_dim(dim, "StateVector");
  if (index < 0 || index >= dim) {
    std::ostringstream msg;
    msg << "basis index " << index << " out of range for dim " << dim;
    throw DimensionError(msg.str());
  }
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return StateVector(std::move(v), AlreadyNormalized{});
}

StateVector qubit_state(double alpha) {
  CVector v(2);
  v << std::cos(alpha), std::sin(alpha);
  return StateVector::normalized(std::move(v));
}

Complex inner(const StateVector& u, const StateVector& v) {
  if (u.dim() != v.dim()) {
    std::ostringstream msg;
    msg << "inner product dimension mismatch: " << u.dim() << " vs " << v.dim();
    throw DimensionError(msg.str());
  }
  return u.amplitudes().dot(v.amplitudes());
}

Unitary::Unitary(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("Unitary matrix must be square");
  }
  check_dim(matrix_.rows(), "Unitary");
  if (!all_finite(matrix_)) {
    throw DomainError("Unitary entries must be finite");
  }
  const CMatrix gram = matrix_.adjoint() * matrix_;
  const double defect =
      (gram - CMatrix::Identity(matrix_.rows(), matrix_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kUnitaryTol) {
    std::ostringstream msg;
    msg << "matrix is not unitary (max |U†U - I| = " << defect << ")";
    throw UnitarityError(msg.str());
  }
}

Unitary Unitary::identity(int dim) {
  check_dim(dim, "Unitary");
  return Unitary(CMatrix::Identity(dim, dim), Checked{});
}

Unitary Unitary::adjoint() const {
  return Unitary(matrix_.adjoint(), Checked{});
}

Unitary qubit_rotation(double gamma) {
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  CMatrix m(2, 2);
  m << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
  return Unitary(std::move(m));
}

StateVector apply_unitary(const Unitary& U, const StateVector& v) {
  if (U.dim() != v.dim()) {
    std::ostringstream msg;
    msg << "apply_unitary dimension mismatch: " << U.dim() << " vs " << v.dim();
    throw DimensionError(msg.str());
  }
  CVector w = U.matrix() * v.amplitudes();
  const double nrm = w.norm();
  if (std::abs(nrm - 1.0) > kUnitaryTol) {
    std::ostringstream msg;
    msg << "unitary application failed to preserve the norm (" << nrm << ")";
    throw NumericError(msg.str());
  }
  return StateVector::normalized(std::move(w));
}

struct Observable::EigCache {
  std::once_flag once;
  Eigen::VectorXd values;
  CMatrix vectors;
};

Observable::Observable(CMatrix matrix)
    : matrix_(std::move(matrix)), eig_(std::make_shared<EigCache>()) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("Observable matrix must be square");
  }
  check_dim(matrix_.rows(), "Observable");
  if (!all_finite(matrix_)) {
    throw DomainError("Observable entries must be finite");
  }
  const double defect = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kHermitianTol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |A - A†| = " << defect << ")";
    throw HermiticityError(msg.str());
  }
}

Observable Observable::identity(int dim) {
  check_dim(dim, "Observable");
  return Observable(CMatrix::Identity(dim, dim));
}

Observable Observable::diagonal(const std::vector<double>& eigenvalues) {
  const auto dim = static_cast<Eigen::Index>(eigenvalues.size());
  check_dim(dim, "Observable");
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    if (!std::isfinite(eigenvalues[static_cast<std::size_t>(l)])) {
      throw DomainError("Observable eigenvalues must be finite");
    }
    m(l, l) = eigenvalues[static_cast<std::size_t>(l)];
  }
  return Observable(std::move(m));
}

Observable Observable::level_population(int dim, int level) {
  check_dim(dim, "Observable");
  if (level < 0 || level >= dim) {
    std::ostringstream msg;
    msg << "population level " << level << " out of range for dim " << dim;
    throw DimensionError(msg.str());
  }
  std::vector<double> evals(static_cast<std::size_t>(dim), 0.0);
  evals[static_cast<std::size_t>(level)] = 1.0;
  return diagonal(evals);
}

namespace {

// Rotates the global phase of each column so its first significant entry is
// real positive, giving a deterministic representative of each eigenray.
void canonicalize_phases(CMatrix& vectors) {
  constexpr double kSignificant = 1e-9;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const Complex a = vectors(r, c);
      if (std::abs(a) > kSignificant) {
        vectors.col(c) *= std::conj(a) / std::abs(a);
        break;
      }
    }
  }
}

bool column_lex_less(const CMatrix& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Complex x = m(r, a);
    const Complex y = m(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

void Observable::ensure_eig() const {
  std::call_once(eig_->once, [this] {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_);
    if (solver.info() != Eigen::Success) {
      throw NumericError("Hermitian eigendecomposition failed to converge");
    }
    Eigen::VectorXd values = solver.eigenvalues();
    CMatrix vectors = solver.eigenvectors();
    canonicalize_phases(vectors);

    // Order degenerate groups lexicographically for deterministic output.
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const double degeneracy_tol = 1e-12 * scale;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::size_t lo = 0;
    while (lo < order.size()) {
      std::size_t hi = lo + 1;
      while (hi < order.size() &&
             values[order[hi]] - values[order[lo]] <= degeneracy_tol) {
        ++hi;
      }
      std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
                order.begin() + static_cast<std::ptrdiff_t>(hi),
                [&](Eigen::Index a, Eigen::Index b) {
                  return column_lex_less(vectors, a, b);
                });
      lo = hi;
    }

    Eigen::VectorXd sorted_values(values.size());
    CMatrix sorted_vectors(vectors.rows(), vectors.cols());
    for (std::size_t c = 0; c < order.size(); ++c) {
      sorted_values[static_cast<Eigen::Index>(c)] = values[order[c]];
      sorted_vectors.col(static_cast<Eigen::Index>(c)) = vectors.col(order[c]);
    }
    eig_->values = std::move(sorted_values);
    eig_->vectors = std::move(sorted_vectors);
  });
}

const Eigen::VectorXd& Observable::eigenvalues() const {
  ensure_eig();
  return eig_->values;
}

const CMatrix& Observable::eigenvectors() const {
  ensure_eig();
  return eig_->vectors;
}

double expectation(const Observable& A, const StateVector& v) {
  if (A.dim() != v.dim()) {
    std::ostringstream msg;
    msg << "expectation dimension mismatch: " << A.dim() << " vs " << v.dim();
    throw DimensionError(msg.str());
  }
  const Complex value = v.amplitudes().dot(A.matrix() * v.amplitudes());
  if (std::abs(value.imag()) > kHermitianTol) {
    std::ostringstream msg;
    msg << "expectation value has imaginary residue " << value.imag();
    throw HermiticityError(msg.str());
  }
  return value.real();
}

}  // namespace nwv
