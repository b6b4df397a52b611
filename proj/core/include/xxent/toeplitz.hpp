#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "xxent/matrix.hpp"
#include "xxent/model.hpp"
#include "xxent/spectral.hpp"

namespace xxent {

/// Bordered matrix over row sites (p, D_1..D_K) and column sites
/// (q, D_1..D_K). With a translation-invariant source, entry (i, j) is
/// g_{row_sites[i] - col_sites[j]}.
struct ToeplitzLike {
  std::vector<std::int64_t> row_sites;
  std::vector<std::int64_t> col_sites;
  Matrix entries;
};

struct SitePair {
  std::int64_t p;
  std::int64_t q;
};

/// Source of entries for the bordered layout, indexed by (row site, col site).
using EntrySource = std::function<double(std::int64_t, std::int64_t)>;

/// Lays out the bordered matrix with an arbitrary entry source. Separators
/// must be strictly ascending and must not contain p or q (DuplicateSite).
ToeplitzLike build_bordered(std::int64_t p, std::int64_t q,
                            std::span<const std::int64_t> separators,
                            const EntrySource& source);

/// Bordered matrix with entries g_{i-j} from `table`. Raises TableRange when
/// the table does not cover every pairwise distance.
ToeplitzLike build_toeplitz_like(std::int64_t p, std::int64_t q,
                                 std::span<const std::int64_t> separators,
                                 const FourierTable& table);

/// Determinant through a pivoted LU of the full bordered matrix.
double det_direct(const ToeplitzLike& t);

/// The K x K trailing block M(i, j) = g_{D_i - D_j} shared by every
/// bordered matrix of one interval pair, factored once.
class SeparatorCore {
 public:
  static SeparatorCore factor(std::vector<std::int64_t> sites, const FourierTable& table);

  std::span<const std::int64_t> sites() const noexcept { return sites_; }
  bool singular() const noexcept { return singular_; }
  int det_sign() const noexcept { return det_sign_; }
  double log_abs_det() const noexcept { return log_abs_det_; }
  double det() const;
  /// min |pivot| / max |pivot| of the factorization (1 for an empty core).
  double pivot_ratio() const noexcept;

  /// M x = b through the stored factorization.
  std::vector<double> solve(std::span<const double> b) const;

  const Matrix& matrix() const noexcept { return matrix_; }
  const LuFactorization<double>& factorization() const { return *lu_; }

 private:
  SeparatorCore() = default;

  std::vector<std::int64_t> sites_;
  Matrix matrix_;
  std::optional<LuFactorization<double>> lu_;
  bool singular_ = false;
  int det_sign_ = 1;
  double log_abs_det_ = 0.0;
};

/// det(T_pq) = det(M) (g_{p-q} - u^T M^{-1} v) for every pair, with one
/// solve per distinct q. Raises SingularCore when the core is singular.
std::vector<double> batch_det_schur(const SeparatorCore& core, std::span<const SitePair> pairs,
                                    const FourierTable& table);

/// det(T_pq) = g_{p-q} det(M) - u^T adj(M) v with the adjugate taken from the
/// eigendecomposition of the symmetric core, so it stays valid when M is
/// singular.
std::vector<double> batch_det_adjugate(std::span<const std::int64_t> separators,
                                       std::span<const SitePair> pairs,
                                       const FourierTable& table);

}  // namespace xxent
