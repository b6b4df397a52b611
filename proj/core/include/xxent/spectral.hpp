#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "xxent/matrix.hpp"

namespace xxent {

using Complex = std::complex<double>;
using ComplexMatrix = DenseMatrix<Complex>;

/// Determinant in sign / log-magnitude form. `sign == 0` marks a singular
/// matrix, in which case `log_abs` is -inf.
struct LogDet {
  int sign = 0;
  double log_abs = 0.0;

  double value() const;
};

/// Row-pivoted LU factorization P A = L U, stored packed (unit L below the
/// diagonal, U on and above it).
///
/// A pivot whose magnitude is at or below `singular_tolerance` times the
/// largest column 2-norm of the input marks the factorization singular. The
/// elimination still runs to completion so that pivots stay inspectable.
template <typename T>
class LuFactorization {
 public:
  static constexpr double kDefaultSingularTolerance = 1e-12;

  explicit LuFactorization(DenseMatrix<T> a,
                           double singular_tolerance = kDefaultSingularTolerance);

  std::size_t dim() const noexcept { return lu_.rows(); }
  bool singular() const noexcept { return singular_; }

  /// Permutation parity times the product of pivot phases is returned by
  /// `det_phase`; `log_abs_det` is the sum of log pivot magnitudes.
  double log_abs_det() const noexcept { return log_abs_det_; }
  T det_phase() const noexcept { return det_phase_; }

  /// Smallest |pivot| relative to the largest |pivot|; a cheap conditioning
  /// indicator, not a true condition number.
  double pivot_ratio() const noexcept { return pivot_ratio_; }

  /// Solves A x = b. Requires a nonsingular factorization.
  std::vector<T> solve(std::span<const T> b) const;

  /// P^T L U, for checking the factorization against its input.
  DenseMatrix<T> reconstruct() const;

 private:
  DenseMatrix<T> lu_;
  std::vector<std::size_t> perm_;  // row i of LU came from row perm_[i] of A
  bool singular_ = false;
  double log_abs_det_ = 0.0;
  T det_phase_ = T{1};
  double pivot_ratio_ = 1.0;
};

extern template class LuFactorization<double>;
extern template class LuFactorization<Complex>;

LogDet lu_logdet(const Matrix& a);

/// Principal-branch log det of a complex matrix: sum of log pivots plus
/// i*pi for an odd row permutation. Throws NearSingularShift when a pivot
/// collapses.
Complex lu_logdet(const ComplexMatrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]; empty unless requested
};

enum class EigenMethod {
  /// Householder tridiagonalization plus implicit QL.
  kTridiagonalQL,
  /// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops to
  /// kJacobiTolerance * ||A||_F. Converges only linearly once eigenvalues
  /// pile up geometrically (as they do near +-1 for long blocks), so it can
  /// hit kJacobiMaxSweeps there.
  kJacobi,
};

/// Eigendecomposition of a real symmetric matrix. Raises NotSymmetric if
/// |a_ij - a_ji| exceeds 1e-12 * max(1, max|a|) and NoConvergence when the
/// iteration cap is reached.
SymmetricEigen eig_symmetric(const Matrix& a, bool want_vectors = false,
                             EigenMethod method = EigenMethod::kTridiagonalQL);

inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 60;

/// Eigenvalues of a correlation matrix: ascending, each within [-1, 1].
class Spectrum {
 public:
  static constexpr double kClampTolerance = 1e-9;

  /// Sorts, clamps values within kClampTolerance of [-1, 1] and raises
  /// DomainError for anything further out.
  static Spectrum from_values(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t source_dim() const noexcept { return values_.size(); }

 private:
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

Spectrum correlation_spectrum(const Matrix& a);

/// trace((lambda I - A)^-1) through one complex LU factorization and N solves.
Complex resolvent_trace(const Matrix& a, Complex lambda);

/// The same trace from known eigenvalues: sum_i 1 / (lambda - nu_i).
Complex resolvent_trace(std::span<const double> eigenvalues, Complex lambda);

}  // namespace xxent
