#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xxent/matrix.hpp"
#include "xxent/model.hpp"

namespace xxent {

/// A maximal run of consecutive sites.
struct Interval {
  std::int64_t start;
  std::int64_t length;

  std::int64_t last() const noexcept { return start + length - 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted set of distinct 1-based sites with its decomposition into
/// subsystem intervals and the gaps between them. Intervals and gaps
/// alternate and tile [first site, last site].
class SubsystemSpec {
 public:
  /// Raises EmptySubsystem, NonPositiveSite or DuplicateSite. Input order
  /// does not matter.
  static SubsystemSpec parse(std::span<const std::int64_t> sites);

  std::span<const std::int64_t> sites() const noexcept { return sites_; }
  std::span<const Interval> intervals() const noexcept { return intervals_; }
  std::span<const Interval> gaps() const noexcept { return gaps_; }
  std::size_t size() const noexcept { return sites_.size(); }
  std::int64_t span() const noexcept { return sites_.back() - sites_.front(); }
  bool contains(std::int64_t site) const;

  /// Complement sites strictly between m and n, ascending.
  std::vector<std::int64_t> separators_between(std::int64_t m, std::int64_t n) const;

  SubsystemSpec shifted(std::int64_t offset) const;

  friend bool operator==(const SubsystemSpec& a, const SubsystemSpec& b) {
    return a.sites_ == b.sites_;
  }

 private:
  std::vector<std::int64_t> sites_;
  std::vector<Interval> intervals_;
  std::vector<Interval> gaps_;
};

inline SubsystemSpec parse_spec(std::span<const std::int64_t> sites) {
  return SubsystemSpec::parse(sites);
}

/// A_mn = -det(T_mn) with the separators taken from the complement sites
/// strictly between m and n.
double correlation_entry(std::int64_t m, std::int64_t n, const SubsystemSpec& spec,
                         const FourierTable& table);

enum class FillStrategy {
  /// Shared Schur-complement factorization per interval pair; singular cores
  /// go through the eigendecomposition adjugate instead.
  kBatched,
  /// One LU of the full bordered matrix per entry.
  kDirect,
};

struct CorrelationOptions {
  FillStrategy fill = FillStrategy::kBatched;
  std::int64_t span_cap = 1'000'000;
  unsigned threads = 1;
};

struct FillStats {
  std::size_t schur_blocks = 0;
  std::size_t adjugate_blocks = 0;
  std::size_t direct_blocks = 0;
  /// Worst pivot ratio over the Schur cores that were used (1 if none).
  double worst_core_pivot_ratio = 1.0;
};

/// The real symmetric correlation matrix of a subsystem, rows and columns in
/// ascending site order.
struct CorrMatrix {
  SubsystemSpec spec;
  ModelParams params;
  Matrix entries;
  FillStats stats;
};

/// Raises SpanTooLarge when the site span exceeds options.span_cap.
CorrMatrix build_corr_matrix(const SubsystemSpec& spec, const ModelParams& params,
                             const CorrelationOptions& options = {});

}  // namespace xxent
