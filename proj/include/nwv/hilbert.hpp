#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "nwv/errors.hpp"

namespace nwv {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for state normalization after any constructor or normalizing
/// operation.
inline constexpr double kNormTol = 1e-12;
/// Entrywise tolerance for the unitarity check U†U = I.
inline constexpr double kUnitaryTol = 1e-10;
/// Entrywise tolerance for the Hermiticity check A = A†.
inline constexpr double kHermitianTol = 1e-10;
/// Default floor on |<f|i>| below which postselection counts as orthogonal.
inline constexpr double kDefaultOverlapFloor = 1e-12;

/// Normalized pure state of an n-level system (n >= 2). Immutable value type.
class StateVector {
 public:
  /// Requires amplitudes already normalized within kNormTol; snaps the norm
  /// to exactly 1 afterwards.
  explicit StateVector(CVector amplitudes);

  /// Normalizes an arbitrary raw vector. Throws DegenerateState on a zero
  /// vector, DomainError on non-finite amplitudes.
  static StateVector normalized(CVector raw);
  static StateVector normalized(const std::vector<Complex>& raw);

  /// Computational basis state |index> in dimension dim.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex amplitude(int m) const { return amps_[m]; }

 private:
  struct AlreadyNormalized {};
  StateVector(CVector amps, AlreadyNormalized) : amps_(std::move(amps)) {}

  CVector amps_;
};

/// Real qubit state cos(alpha)|0> + sin(alpha)|1>.
StateVector qubit_state(double alpha);

/// <u|v> with the first argument conjugated.
Complex inner(const StateVector& u, const StateVector& v);

/// Unitary operator on an n-level system. Construction verifies U†U = I
/// within kUnitaryTol. Immutable value type.
class Unitary {
 public:
  explicit Unitary(CMatrix matrix);

  static Unitary identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  Unitary adjoint() const;

 private:
  struct Checked {};
  Unitary(CMatrix matrix, Checked) : matrix_(std::move(matrix)) {}

  CMatrix matrix_;
};

/// Real 2x2 rotation U(gamma) = [[cos g, -sin g], [sin g, cos g]], so that
/// U†|0> = cos(g)|0> - sin(g)|1>: postselecting |0> after U equals projecting
/// the pre-rotation state onto that tilted state.
Unitary qubit_rotation(double gamma);

/// Applies U to v. Norm is preserved up to roundoff and re-snapped to 1.
StateVector apply_unitary(const Unitary& U, const StateVector& v);

/// Hermitian observable with a lazily computed eigendecomposition. Copies
/// share the decomposition cache; all access is thread-safe.
class Observable {
 public:
  explicit Observable(CMatrix matrix);

  static Observable identity(int dim);
  /// Diagonal observable in the computational basis.
  static Observable diagonal(const std::vector<double>& eigenvalues);
  /// Population projector |level><level| in dimension dim.
  static Observable level_population(int dim, int level);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  /// Eigenvalues in ascending order. Degenerate groups are ordered by a
  /// lexicographic comparison of their (phase-canonicalized) eigenvectors, so
  /// the decomposition is deterministic.
  const Eigen::VectorXd& eigenvalues() const;
  /// Eigenvectors as columns, matching eigenvalues(); each column's first
  /// significant amplitude is real positive.
  const CMatrix& eigenvectors() const;

 private:
  struct EigCache;
  void ensure_eig() const;

  CMatrix matrix_;
  std::shared_ptr<EigCache> eig_;
};

/// Real expectation value <v|A|v>. The imaginary residue must stay below
/// kHermitianTol; it is discarded after the check.
double expectation(const Observable& A, const StateVector& v);

}  // namespace nwv
