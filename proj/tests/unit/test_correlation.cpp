#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "xxent/correlation.hpp"
#include "xxent/error.hpp"
#include "xxent/spectral.hpp"

namespace xxent {
namespace {

using std::numbers::pi;

SubsystemSpec spec_of(std::vector<std::int64_t> sites) { return SubsystemSpec::parse(sites); }

SubsystemSpec two_intervals(std::int64_t m) {
  std::vector<std::int64_t> sites;
  for (std::int64_t s = 1; s <= m; ++s) sites.push_back(s);
  for (std::int64_t s = 2 * m + 1; s <= 3 * m; ++s) sites.push_back(s);
  return SubsystemSpec::parse(sites);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInvalidParams;
}

TEST(ParseSpec, Decomposition) {
  const auto block = spec_of({1, 2, 3});
  ASSERT_EQ(block.intervals().size(), 1u);
  EXPECT_EQ(block.intervals()[0], (Interval{1, 3}));
  EXPECT_TRUE(block.gaps().empty());

  const auto pair = spec_of({3, 1});
  ASSERT_EQ(pair.intervals().size(), 2u);
  EXPECT_EQ(pair.intervals()[0], (Interval{1, 1}));
  EXPECT_EQ(pair.intervals()[1], (Interval{3, 1}));
  ASSERT_EQ(pair.gaps().size(), 1u);
  EXPECT_EQ(pair.gaps()[0], (Interval{2, 1}));

  const auto two = two_intervals(6);
  ASSERT_EQ(two.intervals().size(), 2u);
  EXPECT_EQ(two.intervals()[0], (Interval{1, 6}));
  EXPECT_EQ(two.intervals()[1], (Interval{13, 6}));
  EXPECT_EQ(two.gaps()[0], (Interval{7, 6}));
}

TEST(ParseSpec, IntervalsAndGapsTileTheSpan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = SubsystemSpec::parse(testing::random_sites(1 + trial % 20, 40, rng));
    std::int64_t cursor = spec.sites().front();
    for (std::size_t i = 0; i < spec.intervals().size(); ++i) {
      EXPECT_EQ(spec.intervals()[i].start, cursor);
      cursor += spec.intervals()[i].length;
      if (i < spec.gaps().size()) {
        EXPECT_EQ(spec.gaps()[i].start, cursor);
        cursor += spec.gaps()[i].length;
      }
    }
    EXPECT_EQ(cursor - 1, spec.sites().back());
  }
}

TEST(ParseSpec, Rejections) {
  EXPECT_EQ(kind_of([] { spec_of({1, 2, 2}); }), ErrorKind::kDuplicateSite);
  EXPECT_EQ(kind_of([] { spec_of({0, 2}); }), ErrorKind::kNonPositiveSite);
  EXPECT_EQ(kind_of([] { spec_of({-3}); }), ErrorKind::kNonPositiveSite);
  EXPECT_EQ(kind_of([] { spec_of({}); }), ErrorKind::kEmptySubsystem);
}

TEST(CorrelationEntry, Examples) {
  const FourierTable table(ModelParams::create(0.0), 16);
  const auto pair = spec_of({1, 3});
  EXPECT_EQ(correlation_entry(1, 1, pair, table), 0.0);
  const double g0 = table[0], g1 = table[1], g2 = table[2];
  EXPECT_NEAR(correlation_entry(1, 3, pair, table), g1 * g1 - g2 * g0, 1e-15);
  EXPECT_NEAR(correlation_entry(1, 3, pair, table), 4.0 / (pi * pi), 1e-15);
  EXPECT_NEAR(correlation_entry(5, 6, spec_of({5, 6}), table), -2.0 / pi, 1e-15);
}

TEST(BuildCorrMatrix, WorkedExample) {
  const auto a = build_corr_matrix(spec_of({1, 3}), ModelParams::create(0.0));
  EXPECT_NEAR(a.entries(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(a.entries(1, 1), 0.0, 1e-12);
  EXPECT_NEAR(a.entries(0, 1), 4.0 / (pi * pi), 1e-12);
  EXPECT_EQ(a.entries(0, 1), a.entries(1, 0));
}

TEST(BuildCorrMatrix, ContiguousBlockIsToeplitz) {
  const auto params = ModelParams::create(0.6);
  const auto a = build_corr_matrix(spec_of({4, 5, 6, 7, 8, 9}), params);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      EXPECT_EQ(a.entries(i, j),
                -fourier_coefficient(params, static_cast<std::int64_t>(i) -
                                                 static_cast<std::int64_t>(j)));
}

TEST(BuildCorrMatrix, SingleSite) {
  for (double h : {0.0, 0.5, 1.5}) {
    const auto params = ModelParams::create(h);
    const auto a = build_corr_matrix(spec_of({1}), params);
    EXPECT_NEAR(a.entries(0, 0), (pi - 2.0 * params.fermi_momentum()) / pi, 1e-15);
    EXPECT_NEAR(a.entries(0, 0), -testing::quadrature_coefficient(h, 0), 1e-10);
  }
}

TEST(BuildCorrMatrix, Invariants) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const double h = (trial % 3) * 0.6;
    const auto params = ModelParams::create(h);
    const auto spec = SubsystemSpec::parse(testing::random_sites(2 + trial % 15, 30, rng));
    const auto a = build_corr_matrix(spec, params);
    const std::size_t n = spec.size();
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(a.entries(i, i), -fourier_coefficient(params, 0));
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(a.entries(i, j), a.entries(j, i));
        EXPECT_LE(std::abs(a.entries(i, j)), 1.0 + 1e-9);
        const std::int64_t m = spec.sites()[i];
        const std::int64_t k = spec.sites()[j];
        if (spec.separators_between(m, k).empty()) {
          EXPECT_EQ(a.entries(i, j), -fourier_coefficient(params, m - k));
        }
      }
    }
    for (std::int64_t shift : {1, 7, 100}) {
      const auto moved = build_corr_matrix(spec.shifted(shift), params);
      EXPECT_EQ(moved.entries, a.entries) << "shift " << shift;
    }
  }
}

TEST(BuildCorrMatrix, ReflectionKeepsSpectrum) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const auto params = ModelParams::create(trial % 2 ? 0.0 : 1.1);
    const auto sites = testing::random_sites(2 + trial % 10, 25, rng);
    std::vector<std::int64_t> mirrored;
    const std::int64_t axis = sites.back() + 1;
    for (auto s : sites) mirrored.push_back(axis - s);
    const auto a = correlation_spectrum(build_corr_matrix(SubsystemSpec::parse(sites), params).entries);
    const auto b =
        correlation_spectrum(build_corr_matrix(SubsystemSpec::parse(mirrored), params).entries);
    for (std::size_t k = 0; k < a.source_dim(); ++k)
      EXPECT_NEAR(a.values()[k], b.values()[k], 1e-10);
  }
}

TEST(BuildCorrMatrix, BatchedAndDirectFillsAgree) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 12; ++trial) {
    const auto params = ModelParams::create(trial % 3 == 0 ? 0.0 : 0.3 * (trial % 3));
    std::uniform_int_distribution<std::size_t> count(5, 60);
    const auto spec = SubsystemSpec::parse(testing::random_sites(count(rng), 90, rng));
    const auto batched = build_corr_matrix(spec, params, {.fill = FillStrategy::kBatched});
    const auto direct = build_corr_matrix(spec, params, {.fill = FillStrategy::kDirect});
    const std::size_t n = spec.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_NEAR(batched.entries(i, j), direct.entries(i, j), 1e-9);
    EXPECT_EQ(batched.stats.direct_blocks, 0u);
    EXPECT_EQ(batched.stats.schur_blocks + batched.stats.adjugate_blocks,
              direct.stats.direct_blocks);
  }
}

TEST(BuildCorrMatrix, TwoIntervalBlockMatchesBorderedLayout) {
  const auto params = ModelParams::create(0.0);
  for (std::int64_t m = 1; m <= 12; ++m) {
    const FourierTable table(params, 3 * m);
    const auto a = build_corr_matrix(two_intervals(m), params);
    const auto mm = static_cast<std::size_t>(m);
    for (std::int64_t i = 1; i <= m; ++i) {
      for (std::int64_t j = 1; j <= m; ++j) {
        const double expected = testing::two_interval_block_entry(table, m, i, j);
        EXPECT_NEAR(a.entries(static_cast<std::size_t>(i - 1), mm + static_cast<std::size_t>(j - 1)),
                    expected, 1e-10)
            << "m=" << m << " i=" << i << " j=" << j;
      }
    }
    EXPECT_EQ(a.stats.schur_blocks + a.stats.adjugate_blocks, 1u);
    // Odd-length separator cores are singular at half filling.
    EXPECT_EQ(a.stats.adjugate_blocks, static_cast<std::size_t>(m % 2));
  }
}

TEST(BuildCorrMatrix, SeparatorsDependOnTheWholeSubsystem) {
  const auto params = ModelParams::create(0.0);
  const auto alone = build_corr_matrix(spec_of({1, 3}), params);
  const auto joined = build_corr_matrix(spec_of({1, 2, 3}), params);
  EXPECT_NEAR(alone.entries(0, 1), 0.4052847345693511, 1e-15);
  EXPECT_EQ(joined.entries(0, 2), -fourier_coefficient(params, -2));
  EXPECT_EQ(joined.entries(0, 2), 0.0);
}

TEST(BuildCorrMatrix, SpanCap) {
  EXPECT_EQ(kind_of([] {
              build_corr_matrix(spec_of({1, 500}), ModelParams::create(0.0), {.span_cap = 100});
            }),
            ErrorKind::kSpanTooLarge);
}

TEST(BuildCorrMatrix, ThreadedFillIsIdentical) {
  std::vector<std::int64_t> sites;
  for (std::int64_t start : {1, 15, 40, 70})
    for (std::int64_t s = start; s < start + 8; ++s) sites.push_back(s);
  const auto spec = SubsystemSpec::parse(sites);
  const auto params = ModelParams::create(0.2);
  const auto serial = build_corr_matrix(spec, params, {.threads = 1});
  const auto threaded = build_corr_matrix(spec, params, {.threads = 4});
  EXPECT_EQ(serial.entries, threaded.entries);
}

}  // namespace
}  // namespace xxent
