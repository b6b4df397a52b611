#pragma once

// Test-only reference computations, kept independent of the library's
// production code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "xxent/matrix.hpp"
#include "xxent/model.hpp"

namespace xxent::testing {

/// g_l by composite trapezoid quadrature of (1/2pi) \int e^{-il theta} g(theta),
/// with panel edges on the symbol's jumps so each piece is smooth.
inline double quadrature_coefficient(double h, std::int64_t lag,
                                     int panels_per_piece = 1'000'000) {
  using std::numbers::pi;
  const double kf = std::acos(std::abs(h) / 2.0);
  const double edges[] = {0.0, kf, 2.0 * pi - kf, 2.0 * pi};
  const double signs[] = {1.0, -1.0, 1.0};
  const double l = static_cast<double>(lag);
  double total = 0.0;
  for (int piece = 0; piece < 3; ++piece) {
    const double a = edges[piece];
    const double b = edges[piece + 1];
    const double step = (b - a) / panels_per_piece;
    double s = 0.5 * (std::cos(l * a) + std::cos(l * b));
    for (int k = 1; k < panels_per_piece; ++k) s += std::cos(l * (a + k * step));
    total += signs[piece] * s * step;
  }
  return total / (2.0 * pi);
}

/// Determinant by Laplace expansion along the first row. Exponential cost;
/// only for matrices up to about 8 x 8.
inline double cofactor_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * m(0, col) * cofactor_det(minor);
  }
  return det;
}

/// Gaussian elimination without any shared code, for cross-checking dense
/// determinants of moderate size.
inline double elimination_det(Matrix m) {
  const std::size_t n = m.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
  return a;
}

/// Random strictly increasing site list of `count` sites drawn from [1, max_site].
inline std::vector<std::int64_t> random_sites(std::size_t count, std::int64_t max_site,
                                              std::mt19937_64& rng) {
  std::vector<std::int64_t> all;
  for (std::int64_t s = 1; s <= max_site; ++s) all.push_back(s);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

/// Off-diagonal block entry for the two-interval subsystem {1..m} u {2m+1..3m},
/// laid out as a bordered determinant with first row
/// g_{i-j-2m}, g_{i-m-1}, ..., g_{i-2m} and row k (k = 1..m)
/// g_{k-j-m}, g_{k-1}, ..., g_{k-m}. Indices i, j run over 1..m.
inline double two_interval_block_entry(const FourierTable& table, std::int64_t m,
                                       std::int64_t i, std::int64_t j) {
  const auto n = static_cast<std::size_t>(m + 1);
  Matrix b(n, n);
  b(0, 0) = table.at(i - j - 2 * m);
  for (std::int64_t c = 1; c <= m; ++c) b(0, static_cast<std::size_t>(c)) = table.at(i - m - c);
  for (std::int64_t k = 1; k <= m; ++k) {
    b(static_cast<std::size_t>(k), 0) = table.at(k - j - m);
    for (std::int64_t c = 1; c <= m; ++c)
      b(static_cast<std::size_t>(k), static_cast<std::size_t>(c)) = table.at(k - c);
  }
  return -elimination_det(b);
}

}  // namespace xxent::testing
