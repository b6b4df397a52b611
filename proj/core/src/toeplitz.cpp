#include "xxent/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "xxent/error.hpp"

namespace xxent {

namespace {

void check_separators(std::span<const std::int64_t> separators) {
  for (std::size_t i = 1; i < separators.size(); ++i) {
    if (separators[i] == separators[i - 1]) {
      raise(ErrorKind::kDuplicateSite,
            "separator site " + std::to_string(separators[i]) + " repeated");
    }
    if (separators[i] < separators[i - 1]) {
      raise(ErrorKind::kInvalidParams, "separator sites must be ascending");
    }
  }
}

void check_border(std::int64_t site, std::span<const std::int64_t> separators) {
  if (std::binary_search(separators.begin(), separators.end(), site)) {
    raise(ErrorKind::kDuplicateSite,
          "border site " + std::to_string(site) + " is also a separator");
  }
}

void check_range(std::int64_t lo, std::int64_t hi, const FourierTable& table) {
  if (hi - lo > table.max_lag()) {
    raise(ErrorKind::kTableRange, "site distance " + std::to_string(hi - lo) +
                                      " exceeds table range " +
                                      std::to_string(table.max_lag()));
  }
}

void check_pair(const SitePair& pair, std::span<const std::int64_t> separators,
                const FourierTable& table) {
  check_border(pair.p, separators);
  check_border(pair.q, separators);
  std::int64_t lo = std::min(pair.p, pair.q);
  std::int64_t hi = std::max(pair.p, pair.q);
  if (!separators.empty()) {
    lo = std::min(lo, separators.front());
    hi = std::max(hi, separators.back());
  }
  check_range(lo, hi, table);
}

// Running product kept as sign and log-magnitude.
struct SignedLog {
  int sign = 1;
  double log_abs = 0.0;

  void times(double x) {
    if (x == 0.0) {
      sign = 0;
      return;
    }
    if (x < 0.0) sign = -sign;
    log_abs += std::log(std::abs(x));
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

}  // namespace

ToeplitzLike build_bordered(std::int64_t p, std::int64_t q,
                            std::span<const std::int64_t> separators,
                            const EntrySource& source) {
  check_separators(separators);
  check_border(p, separators);
  check_border(q, separators);

  ToeplitzLike t;
  t.row_sites.reserve(separators.size() + 1);
  t.row_sites.push_back(p);
  t.row_sites.insert(t.row_sites.end(), separators.begin(), separators.end());
  t.col_sites = t.row_sites;
  t.col_sites.front() = q;

  const std::size_t n = t.row_sites.size();
  t.entries = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.entries(i, j) = source(t.row_sites[i], t.col_sites[j]);
  return t;
}

ToeplitzLike build_toeplitz_like(std::int64_t p, std::int64_t q,
                                 std::span<const std::int64_t> separators,
                                 const FourierTable& table) {
  check_separators(separators);
  check_pair({p, q}, separators, table);
  return build_bordered(p, q, separators,
                        [&table](std::int64_t r, std::int64_t c) { return table[r - c]; });
}

double det_direct(const ToeplitzLike& t) {
  const LuFactorization<double> lu(t.entries);
  if (lu.det_phase() == 0.0) return 0.0;
  return lu.det_phase() * std::exp(lu.log_abs_det());
}

SeparatorCore SeparatorCore::factor(std::vector<std::int64_t> sites, const FourierTable& table) {
  check_separators(sites);
  if (!sites.empty()) check_range(sites.front(), sites.back(), table);

  SeparatorCore core;
  core.sites_ = std::move(sites);
  const std::size_t k = core.sites_.size();
  core.matrix_ = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      core.matrix_(i, j) = table[core.sites_[i] - core.sites_[j]];

  core.lu_.emplace(core.matrix_);
  core.singular_ = core.lu_->singular();
  core.log_abs_det_ = core.lu_->log_abs_det();
  core.det_sign_ = core.singular_ ? 0 : (core.lu_->det_phase() > 0.0 ? 1 : -1);
  return core;
}

double SeparatorCore::det() const {
  return det_sign_ == 0 ? 0.0 : det_sign_ * std::exp(log_abs_det_);
}

double SeparatorCore::pivot_ratio() const noexcept { return lu_ ? lu_->pivot_ratio() : 1.0; }

std::vector<double> SeparatorCore::solve(std::span<const double> b) const {
  if (singular_) raise(ErrorKind::kSingularCore, "separator core is singular");
  return lu_->solve(b);
}

std::vector<double> batch_det_schur(const SeparatorCore& core, std::span<const SitePair> pairs,
                                    const FourierTable& table) {
  if (core.singular()) {
    raise(ErrorKind::kSingularCore,
          "separator core of size " + std::to_string(core.sites().size()) +
              " is singular; fall back to a per-entry determinant");
  }
  const auto sites = core.sites();
  const std::size_t k = sites.size();
  for (const SitePair& pair : pairs) check_pair(pair, sites, table);

  // M^{-1} v_q for each distinct column border q.
  std::unordered_map<std::int64_t, std::vector<double>> solved;
  std::vector<double> v(k);
  for (const SitePair& pair : pairs) {
    if (solved.contains(pair.q)) continue;
    for (std::size_t i = 0; i < k; ++i) v[i] = table[sites[i] - pair.q];
    solved.emplace(pair.q, core.solve(v));
  }

  const double det_core = core.det();
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const SitePair& pair : pairs) {
    const std::vector<double>& x = solved.at(pair.q);
    double schur = table[pair.p - pair.q];
    for (std::size_t i = 0; i < k; ++i) schur -= table[pair.p - sites[i]] * x[i];
    out.push_back(det_core * schur);
  }
  return out;
}

std::vector<double> batch_det_adjugate(std::span<const std::int64_t> separators,
                                       std::span<const SitePair> pairs,
                                       const FourierTable& table) {
  check_separators(separators);
  for (const SitePair& pair : pairs) check_pair(pair, separators, table);
  const std::size_t k = separators.size();

  Matrix core(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) core(i, j) = table[separators[i] - separators[j]];
  const SymmetricEigen eig = eig_symmetric(core, true);

  // weights[i] = prod_{j != i} mu_j, from prefix and suffix products.
  std::vector<SignedLog> prefix(k + 1), suffix(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    prefix[i + 1] = prefix[i];
    prefix[i + 1].times(eig.values[i]);
  }
  for (std::size_t i = k; i-- > 0;) {
    suffix[i] = suffix[i + 1];
    suffix[i].times(eig.values[i]);
  }
  const double det_core = prefix[k].value();
  std::vector<double> weights(k);
  for (std::size_t i = 0; i < k; ++i) {
    SignedLog w = prefix[i];
    w.sign *= suffix[i + 1].sign;
    w.log_abs += suffix[i + 1].log_abs;
    weights[i] = w.value();
  }

  // Border vectors rotated into the eigenbasis, one per distinct site.
  auto rotate = [&](auto&& entry) {
    std::vector<double> out(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double e = entry(separators[i]);
      if (e == 0.0) continue;
      const auto row = eig.vectors.row(i);
      for (std::size_t c = 0; c < k; ++c) out[c] += row[c] * e;
    }
    return out;
  };
  std::unordered_map<std::int64_t, std::vector<double>> rows, cols;
  for (const SitePair& pair : pairs) {
    if (!rows.contains(pair.p)) {
      rows.emplace(pair.p, rotate([&](std::int64_t d) { return table[pair.p - d]; }));
    }
    if (!cols.contains(pair.q)) {
      cols.emplace(pair.q, rotate([&](std::int64_t d) { return table[d - pair.q]; }));
    }
  }

  std::vector<double> out;
  out.reserve(pairs.size());
  for (const SitePair& pair : pairs) {
    const auto& u = rows.at(pair.p);
    const auto& v = cols.at(pair.q);
    double bilinear = 0.0;
    for (std::size_t i = 0; i < k; ++i) bilinear += u[i] * v[i] * weights[i];
    out.push_back(table[pair.p - pair.q] * det_core - bilinear);
  }
  return out;
}

}  // namespace xxent
