#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "xxent/error.hpp"
#include "xxent/model.hpp"

namespace xxent {
namespace {

using std::numbers::pi;

TEST(ModelParams, FermiMomentum) {
  EXPECT_DOUBLE_EQ(ModelParams::create(0.0).fermi_momentum(), pi / 2.0);
  EXPECT_NEAR(ModelParams::create(1.0).fermi_momentum(), std::acos(0.5), 1e-15);
  EXPECT_NEAR(ModelParams::create(-1.0).fermi_momentum(), std::acos(0.5), 1e-15);
}

TEST(ModelParams, RejectsNonCriticalField) {
  for (double h : {2.0, -2.0, 3.5, std::nan("")}) {
    try {
      ModelParams::create(h);
      FAIL() << "accepted h = " << h;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidParams);
    }
  }
}

TEST(Symbol, HalfFillingValues) {
  const auto p = ModelParams::create(0.0);
  EXPECT_EQ(symbol(p, 0.0), 1.0);
  EXPECT_EQ(symbol(p, pi), -1.0);
  EXPECT_EQ(symbol(p, 2.0 * pi), 1.0);
  EXPECT_EQ(symbol(p, -0.1), 1.0);
  EXPECT_EQ(symbol(p, pi / 2.0), 1.0);  // boundary convention
  EXPECT_EQ(symbol(p, 5.0 * pi), -1.0);
}

TEST(FourierCoefficient, HalfFillingClosedForm) {
  const auto p = ModelParams::create(0.0);
  EXPECT_DOUBLE_EQ(fourier_coefficient(p, 1), 2.0 / pi);
  EXPECT_EQ(fourier_coefficient(p, 2), 0.0);
  EXPECT_EQ(fourier_coefficient(p, 0), 0.0);
  EXPECT_DOUBLE_EQ(fourier_coefficient(p, 3), -2.0 / (3.0 * pi));
  EXPECT_NEAR(fourier_coefficient(p, 1), 0.6366198, 1e-7);
  EXPECT_NEAR(fourier_coefficient(p, 3), -0.2122066, 1e-7);
}

TEST(FourierCoefficient, HalfFillingZeroLagMatchesQuadrature) {
  EXPECT_NEAR(testing::quadrature_coefficient(0.0, 0), 0.0, 1e-12);
}

TEST(FourierCoefficient, ClosedFormMatchesQuadrature) {
  for (double h : {0.0, 0.5, 1.0, 1.9}) {
    const auto p = ModelParams::create(h);
    for (std::int64_t l = -8; l <= 8; ++l) {
      EXPECT_NEAR(fourier_coefficient(p, l), testing::quadrature_coefficient(h, l), 1e-10)
          << "h=" << h << " l=" << l;
    }
  }
}

TEST(FourierCoefficient, EvenAndDecaying) {
  for (double h : {0.0, 0.3, 1.2, 1.99}) {
    const auto p = ModelParams::create(h);
    for (std::int64_t l = 1; l <= 500; ++l) {
      const double g = fourier_coefficient(p, l);
      EXPECT_EQ(g, fourier_coefficient(p, -l));
      EXPECT_LE(std::abs(g), 2.0 / (pi * static_cast<double>(l)) + 1e-15);
    }
    EXPECT_LE(std::abs(fourier_coefficient(p, 0)), 1.0);
  }
}

TEST(FourierTable, EntriesMatchCoefficients) {
  const auto p = ModelParams::create(0.0);
  const FourierTable zero(p, 0);
  EXPECT_EQ(zero.at(0), 0.0);

  const FourierTable two(p, 2);
  EXPECT_EQ(two.at(0), 0.0);
  EXPECT_DOUBLE_EQ(two.at(1), 2.0 / pi);
  EXPECT_DOUBLE_EQ(two.at(-1), 2.0 / pi);
  EXPECT_EQ(two.at(2), 0.0);
  EXPECT_EQ(two.at(-2), 0.0);

  const auto q = ModelParams::create(0.7);
  const FourierTable t(q, 40);
  for (std::int64_t l = -40; l <= 40; ++l) {
    EXPECT_EQ(t.at(l), fourier_coefficient(q, l));
    EXPECT_EQ(t.at(l), t.at(-l));
  }
}

TEST(FourierTable, RangeChecked) {
  const FourierTable t(ModelParams::create(0.0), 3);
  try {
    t.at(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTableRange);
  }
  EXPECT_THROW(FourierTable(ModelParams::create(0.0), -1), Error);
}

}  // namespace
}  // namespace xxent
