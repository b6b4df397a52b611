#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "xxent/entropy.hpp"
#include "xxent/error.hpp"
#include "xxent/oracle.hpp"

namespace xxent {
namespace {

using oracle::FiniteChain;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInvalidParams;
}

SubsystemSpec spec_of(std::vector<std::int64_t> sites) { return SubsystemSpec::parse(sites); }

std::vector<SubsystemSpec> subsets_up_to(int length, int max_size) {
  std::vector<SubsystemSpec> out;
  for (unsigned mask = 1; mask < (1u << length); ++mask) {
    if (std::popcount(mask) > max_size) continue;
    std::vector<std::int64_t> sites;
    for (int s = 1; s <= length; ++s)
      if (mask & (1u << (s - 1))) sites.push_back(s);
    out.push_back(SubsystemSpec::parse(sites));
  }
  return out;
}

bool contiguous(const SubsystemSpec& spec) { return spec.intervals().size() == 1; }

TEST(ExactDiagonalization, TwoSites) {
  const auto gs = oracle::ed_ground_state({2, 0.0});
  EXPECT_NEAR(gs.energy, -2.0, 1e-12);
  EXPECT_NEAR(gs.gap, 2.0, 1e-12);
  // (|up down> + |down up>) / sqrt 2
  EXPECT_NEAR(std::abs(gs.amplitudes[1]), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(std::abs(gs.amplitudes[2]), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(oracle::ed_reduced_entropy(gs, spec_of({1})), std::log(2.0), 1e-12);
}

TEST(ExactDiagonalization, NormalizedAndSchmidtSymmetric) {
  for (double h : {0.0, 0.7}) {
    const auto gs = oracle::ed_ground_state({8, h});
    double norm = 0.0;
    for (double a : gs.amplitudes) norm += a * a;
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_NEAR(oracle::ed_reduced_entropy(gs, spec_of({1, 2, 3})),
                oracle::ed_reduced_entropy(gs, spec_of({4, 5, 6, 7, 8})), 1e-10);
    EXPECT_NEAR(oracle::ed_reduced_entropy(gs, spec_of({2, 5})),
                oracle::ed_reduced_entropy(gs, spec_of({1, 3, 4, 6, 7, 8})), 1e-10);
  }
}

TEST(ExactDiagonalization, PolarizedStateHasNoEntanglement) {
  const auto gs = oracle::ed_ground_state({4, 1.9});
  EXPECT_NEAR(std::abs(gs.amplitudes.back()), 1.0, 1e-12);
  EXPECT_NEAR(oracle::ed_reduced_entropy(gs, spec_of({1, 3})), 0.0, 1e-12);
  EXPECT_NEAR(oracle::ff_finite_entropy({4, 1.9}, spec_of({1, 3})), 0.0, 1e-12);
}

TEST(ExactDiagonalization, Errors) {
  EXPECT_EQ(kind_of([] { oracle::ed_ground_state({3, 0.0}); }),
            ErrorKind::kDegenerateGroundState);
  EXPECT_EQ(kind_of([] { oracle::finite_correlator({3, 0.0}); }),
            ErrorKind::kDegenerateFermiLevel);
  EXPECT_EQ(kind_of([] { oracle::ed_ground_state({13, 0.0}); }), ErrorKind::kTooLarge);
  const auto gs = oracle::ed_ground_state({4, 0.0});
  EXPECT_EQ(kind_of([&] { oracle::ed_reduced_entropy(gs, spec_of({2, 5})); }),
            ErrorKind::kInvalidParams);
}

TEST(FreeFermions, CorrelatorOfFilledSea) {
  const Matrix g = oracle::finite_correlator({8, 0.3});
  double trace = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    trace += g(i, i);
    for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(g(i, j), g(j, i), 1e-14);
  }
  // G^2 = I for a pure Slater determinant.
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 8; ++k) s += g(i, k) * g(k, j);
      EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-12);
    }
  EXPECT_NEAR(std::round(trace), trace, 1e-12);
}

TEST(FreeFermions, RestrictedStringCorrelatorsMatchSpinMeasurement) {
  for (double h : {0.0, 0.5}) {
    const FiniteChain chain{8, h};
    const auto gs = oracle::ed_ground_state(chain);
    const Matrix g = oracle::finite_correlator(chain);
    for (const auto& spec : subsets_up_to(8, 4)) {
      const Matrix measured = oracle::ed_restricted_correlation(gs, spec);
      const Matrix predicted = oracle::finite_corr_matrix(g, spec);
      for (std::size_t i = 0; i < spec.size(); ++i)
        for (std::size_t j = 0; j < spec.size(); ++j)
          ASSERT_NEAR(measured(i, j), predicted(i, j), 1e-10);
    }
  }
}

TEST(FreeFermions, ContiguousBlocksMatchSpinEntropy) {
  for (double h : {0.0, 0.5, 1.2}) {
    const FiniteChain chain{10, h};
    const auto gs = oracle::ed_ground_state(chain);
    for (const auto& spec : subsets_up_to(10, 5)) {
      if (!contiguous(spec)) continue;
      EXPECT_NEAR(oracle::ed_reduced_entropy(gs, spec), oracle::ff_finite_entropy(chain, spec),
                  1e-8);
    }
  }
}

TEST(FreeFermions, DisjointSubsetsDifferFromSpinEntropy) {
  // With separated pieces the spin reduced state is not a Gaussian state of
  // the restricted-string fermions: the two-point functions agree (see above)
  // but the entropies do not.
  const FiniteChain chain{8, 0.0};
  const auto gs = oracle::ed_ground_state(chain);
  double worst = 0.0;
  for (const auto& spec : subsets_up_to(8, 4)) {
    const double d =
        std::abs(oracle::ed_reduced_entropy(gs, spec) - oracle::ff_finite_entropy(chain, spec));
    if (contiguous(spec)) {
      EXPECT_LT(d, 1e-8);
    } else {
      worst = std::max(worst, d);
    }
  }
  EXPECT_GT(worst, 1e-2);
  // Even a single one-site gap is enough.
  EXPECT_GT(std::abs(oracle::ed_reduced_entropy(gs, spec_of({1, 3})) -
                     oracle::ff_finite_entropy(chain, spec_of({1, 3}))),
            1e-2);
}

TEST(FreeFermions, LongChainApproachesInfiniteChain) {
  const auto params = ModelParams::create(0.0);
  const double bulk = compute_entropy(spec_of({1, 3}), params).s_von_neumann;
  double previous = INFINITY;
  for (int length : {100, 200, 400}) {
    const std::int64_t mid = length / 2;
    const double s = oracle::ff_finite_entropy({length, 0.0}, spec_of({mid, mid + 2}));
    const double d = std::abs(s - bulk);
    EXPECT_LT(d, previous);
    previous = d;
  }
  EXPECT_LT(previous, 1e-2);
}

}  // namespace
}  // namespace xxent
