#include "xxent/correlation.hpp"

#include <algorithm>
#include <string>

#include "xxent/error.hpp"
#include "xxent/parallel.hpp"
#include "xxent/toeplitz.hpp"

namespace xxent {

SubsystemSpec SubsystemSpec::parse(std::span<const std::int64_t> raw) {
  if (raw.empty()) raise(ErrorKind::kEmptySubsystem, "subsystem has no sites");
  SubsystemSpec spec;
  spec.sites_.assign(raw.begin(), raw.end());
  std::sort(spec.sites_.begin(), spec.sites_.end());
  if (spec.sites_.front() < 1) {
    raise(ErrorKind::kNonPositiveSite,
          "site " + std::to_string(spec.sites_.front()) + " is not a positive index");
  }
  for (std::size_t i = 1; i < spec.sites_.size(); ++i) {
    if (spec.sites_[i] == spec.sites_[i - 1]) {
      raise(ErrorKind::kDuplicateSite, "site " + std::to_string(spec.sites_[i]) + " repeated");
    }
  }
  Interval run{spec.sites_.front(), 1};
  for (std::size_t i = 1; i < spec.sites_.size(); ++i) {
    const std::int64_t s = spec.sites_[i];
    if (s == run.last() + 1) {
      ++run.length;
      continue;
    }
    spec.intervals_.push_back(run);
    spec.gaps_.push_back({run.last() + 1, s - run.last() - 1});
    run = {s, 1};
  }
  spec.intervals_.push_back(run);
  return spec;
}

bool SubsystemSpec::contains(std::int64_t site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

std::vector<std::int64_t> SubsystemSpec::separators_between(std::int64_t m,
                                                            std::int64_t n) const {
  const std::int64_t lo = std::min(m, n);
  const std::int64_t hi = std::max(m, n);
  std::vector<std::int64_t> out;
  for (const Interval& gap : gaps_) {
    for (std::int64_t s = std::max(gap.start, lo + 1); s <= std::min(gap.last(), hi - 1); ++s) {
      out.push_back(s);
    }
  }
  return out;
}

SubsystemSpec SubsystemSpec::shifted(std::int64_t offset) const {
  std::vector<std::int64_t> moved(sites_);
  for (auto& s : moved) s += offset;
  return parse(moved);
}

double correlation_entry(std::int64_t m, std::int64_t n, const SubsystemSpec& spec,
                         const FourierTable& table) {
  if (!spec.contains(m) || !spec.contains(n)) {
    raise(ErrorKind::kInvalidParams, "correlation entry outside the subsystem");
  }
  const std::vector<std::int64_t> separators = spec.separators_between(m, n);
  return -det_direct(build_toeplitz_like(m, n, separators, table));
}

namespace {

struct Block {
  std::size_t a;
  std::size_t b;
};

std::vector<SitePair> block_pairs(const Interval& rows, const Interval& cols) {
  std::vector<SitePair> pairs;
  pairs.reserve(static_cast<std::size_t>(rows.length * cols.length));
  for (std::int64_t p = rows.start; p <= rows.last(); ++p)
    for (std::int64_t q = cols.start; q <= cols.last(); ++q) pairs.push_back({p, q});
  return pairs;
}

}  // namespace

CorrMatrix build_corr_matrix(const SubsystemSpec& spec, const ModelParams& params,
                             const CorrelationOptions& options) {
  if (spec.span() > options.span_cap) {
    raise(ErrorKind::kSpanTooLarge, "site span " + std::to_string(spec.span()) +
                                        " exceeds cap " + std::to_string(options.span_cap));
  }
  const FourierTable table(params, spec.span());
  const auto intervals = spec.intervals();
  const auto gaps = spec.gaps();
  const std::size_t n = spec.size();

  std::vector<std::size_t> offset(intervals.size());
  for (std::size_t a = 1; a < intervals.size(); ++a) {
    offset[a] = offset[a - 1] + static_cast<std::size_t>(intervals[a - 1].length);
  }

  CorrMatrix out{spec, params, Matrix(n, n), {}};
  Matrix& entries = out.entries;

  // Same-interval blocks are Toeplitz: no separators between their sites.
  for (std::size_t a = 0; a < intervals.size(); ++a) {
    const auto len = static_cast<std::size_t>(intervals[a].length);
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j)
        entries(offset[a] + i, offset[a] + j) =
            -table[static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j)];
  }

  std::vector<Block> blocks;
  for (std::size_t a = 0; a < intervals.size(); ++a)
    for (std::size_t b = a + 1; b < intervals.size(); ++b) blocks.push_back({a, b});
  std::vector<FillStats> block_stats(blocks.size());

  parallel_for(blocks.size(), options.threads, [&](std::size_t index) {
    const auto [a, b] = blocks[index];
    // Every entry of this block shares the complement sites between the two
    // intervals; subsystem intervals lying in between are not separators.
    std::vector<std::int64_t> separators;
    for (std::size_t g = a; g < b; ++g)
      for (std::int64_t s = gaps[g].start; s <= gaps[g].last(); ++s) separators.push_back(s);

    const std::vector<SitePair> pairs = block_pairs(intervals[a], intervals[b]);
    std::vector<double> dets;
    FillStats& stats = block_stats[index];
    if (options.fill == FillStrategy::kDirect) {
      dets.reserve(pairs.size());
      for (const SitePair& pair : pairs) {
        dets.push_back(det_direct(build_toeplitz_like(pair.p, pair.q, separators, table)));
      }
      stats.direct_blocks = 1;
    } else {
      const SeparatorCore core = SeparatorCore::factor(separators, table);
      if (core.singular()) {
        dets = batch_det_adjugate(separators, pairs, table);
        stats.adjugate_blocks = 1;
      } else {
        dets = batch_det_schur(core, pairs, table);
        stats.schur_blocks = 1;
        stats.worst_core_pivot_ratio = core.pivot_ratio();
      }
    }

    const auto cols = static_cast<std::size_t>(intervals[b].length);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::size_t i = offset[a] + k / cols;
      const std::size_t j = offset[b] + k % cols;
      entries(i, j) = -dets[k];
      entries(j, i) = -dets[k];
    }
  });

  for (const FillStats& s : block_stats) {
    out.stats.schur_blocks += s.schur_blocks;
    out.stats.adjugate_blocks += s.adjugate_blocks;
    out.stats.direct_blocks += s.direct_blocks;
    out.stats.worst_core_pivot_ratio =
        std::min(out.stats.worst_core_pivot_ratio, s.worst_core_pivot_ratio);
  }
  return out;
}

}  // namespace xxent
