#include "xxent/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "xxent/entropy.hpp"
#include "xxent/error.hpp"
#include "xxent/spectral.hpp"
#include "xxent/toeplitz.hpp"

namespace xxent::oracle {

namespace {

using State = std::uint32_t;

void check_chain(const FiniteChain& chain, int limit) {
  if (chain.sites < 2) raise(ErrorKind::kInvalidParams, "a chain needs at least two sites");
  if (chain.sites > limit) {
    raise(ErrorKind::kTooLarge,
          std::to_string(chain.sites) + " sites exceed the limit of " + std::to_string(limit));
  }
  if (!std::isfinite(chain.h)) raise(ErrorKind::kInvalidParams, "field must be finite");
}

void check_sites(const SubsystemSpec& sites, int length) {
  if (sites.sites().back() > length) {
    raise(ErrorKind::kInvalidParams, "site " + std::to_string(sites.sites().back()) +
                                         " lies outside a chain of " + std::to_string(length));
  }
}

unsigned bit_of(int site, int length) { return static_cast<unsigned>(length - site); }

double entropy_of(const Eigen::VectorXd& probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

GroundState ed_ground_state(const FiniteChain& chain) {
  check_chain(chain, kMaxSpinSites);
  const int length = chain.sites;
  const State dim = State{1} << length;

  double lowest = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  std::vector<double> amplitudes(dim, 0.0);

  for (int up = 0; up <= length; ++up) {
    std::vector<State> basis;
    for (State s = 0; s < dim; ++s) {
      if (std::popcount(s) == up) basis.push_back(s);
    }
    const auto size = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const State s = basis[static_cast<std::size_t>(i)];
      h(i, i) = -chain.h * (2.0 * up - length);
      for (int site = 1; site < length; ++site) {
        const State mask = (State{1} << bit_of(site, length)) | (State{1} << bit_of(site + 1, length));
        const State pair = s & mask;
        if (pair == 0 || pair == mask) continue;
        const State flipped = s ^ mask;
        const auto j = std::lower_bound(basis.begin(), basis.end(), flipped) - basis.begin();
        h(i, j) += -2.0;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::VectorXd& values = solver.eigenvalues();
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const double e = values[k];
      if (e < lowest) {
        second = lowest;
        lowest = e;
        if (k == 0) {
          std::fill(amplitudes.begin(), amplitudes.end(), 0.0);
          for (Eigen::Index i = 0; i < size; ++i) {
            amplitudes[basis[static_cast<std::size_t>(i)]] = solver.eigenvectors()(i, 0);
          }
        }
      } else if (e < second) {
        second = e;
      }
    }
  }
  const double gap = second - lowest;
  if (gap < 1e-10) {
    raise(ErrorKind::kDegenerateGroundState,
          "ground state of L = " + std::to_string(length) + ", h = " + std::to_string(chain.h) +
              " is degenerate");
  }
  return {length, std::move(amplitudes), lowest, gap};
}

double ed_reduced_entropy(const GroundState& state, const SubsystemSpec& sites) {
  const int length = state.sites;
  check_sites(sites, length);
  const int kept = static_cast<int>(sites.size());
  if (kept > kMaxReducedSites) {
    raise(ErrorKind::kTooLarge, std::to_string(kept) + " sites exceed the partial-trace limit");
  }
  std::vector<int> traced;
  for (int s = 1; s <= length; ++s) {
    if (!sites.contains(s)) traced.push_back(s);
  }
  const Eigen::Index rows = Eigen::Index{1} << kept;
  const Eigen::Index cols = Eigen::Index{1} << traced.size();
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(rows, cols);
  for (State s = 0; s < (State{1} << length); ++s) {
    Eigen::Index r = 0;
    for (std::int64_t site : sites.sites()) {
      r = (r << 1) | ((s >> bit_of(static_cast<int>(site), length)) & 1U);
    }
    Eigen::Index c = 0;
    for (int site : traced) c = (c << 1) | ((s >> bit_of(site, length)) & 1U);
    psi(r, c) = state.amplitudes[s];
  }
  const Eigen::MatrixXd rho = psi * psi.transpose();
  return entropy_of(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(rho).eigenvalues());
}

Matrix ed_restricted_correlation(const GroundState& state, const SubsystemSpec& sites) {
  const int length = state.sites;
  check_sites(sites, length);
  const State dim = State{1} << length;
  using Vec = std::vector<std::complex<double>>;

  // c~ on site l: sigma^z string over subsystem sites left of l, then
  // sigma^x (kind 0) or sigma^y (kind 1) on l.
  auto apply = [&](int site, int kind, const Vec& in) {
    Vec out(dim);
    const unsigned b = bit_of(site, length);
    for (State s = 0; s < dim; ++s) {
      if (in[s] == 0.0) continue;
      double sign = 1.0;
      for (std::int64_t n : sites.sites()) {
        if (n >= site) break;
        if (((s >> bit_of(static_cast<int>(n), length)) & 1U) == 0) sign = -sign;
      }
      const bool up = (s >> b) & 1U;
      std::complex<double> factor = sign;
      if (kind == 1) factor *= up ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
      out[s ^ (State{1} << b)] += factor * in[s];
    }
    return out;
  };
  const Vec psi(state.amplitudes.begin(), state.amplitudes.end());
  auto expect = [&](int m, int km, int n, int kn) {
    const Vec right = apply(m, km, apply(n, kn, psi));
    std::complex<double> v = 0.0;
    for (State s = 0; s < dim; ++s) v += std::conj(psi[s]) * right[s];
    return v;
  };

  const auto list = sites.sites();
  Matrix a(list.size(), list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < list.size(); ++j) {
      const int m = static_cast<int>(list[i]);
      const int n = static_cast<int>(list[j]);
      const std::complex<double> v =
          std::complex<double>{0.0, 0.5} * (expect(m, 0, n, 1) + expect(n, 0, m, 1));
      a(i, j) = v.real();
    }
  }
  return a;
}

Matrix finite_correlator(const FiniteChain& chain) {
  check_chain(chain, kMaxFermionSites);
  const int length = chain.sites;
  Eigen::MatrixXd hopping = Eigen::MatrixXd::Zero(length, length);
  for (int i = 0; i + 1 < length; ++i) hopping(i, i + 1) = hopping(i + 1, i) = 2.0;
  for (int i = 0; i < length; ++i) hopping(i, i) = -2.0 * chain.h;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hopping);
  const Eigen::VectorXd& energies = solver.eigenvalues();
  for (double e : energies) {
    if (std::abs(e) < 1e-12) {
      raise(ErrorKind::kDegenerateFermiLevel,
            "a single-particle level sits at zero energy for L = " + std::to_string(length));
    }
  }
  Eigen::MatrixXd occupied = Eigen::MatrixXd::Zero(length, length);
  for (int k = 0; k < length; ++k) {
    if (energies[k] < 0.0) {
      const Eigen::VectorXd u = solver.eigenvectors().col(k);
      occupied += u * u.transpose();
    }
  }
  Matrix g(static_cast<std::size_t>(length), static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i)
    for (int j = 0; j < length; ++j)
      g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          2.0 * occupied(i, j) - (i == j ? 1.0 : 0.0);
  return g;
}

Matrix finite_corr_matrix(const Matrix& correlator, const SubsystemSpec& sites) {
  check_sites(sites, static_cast<int>(correlator.rows()));
  const EntrySource source = [&correlator](std::int64_t r, std::int64_t c) {
    return correlator(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1));
  };
  const auto list = sites.sites();
  Matrix a(list.size(), list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i; j < list.size(); ++j) {
      const auto separators = sites.separators_between(list[i], list[j]);
      const double v = -det_direct(build_bordered(list[i], list[j], separators, source));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

double ff_finite_entropy(const FiniteChain& chain, const SubsystemSpec& sites) {
  const Matrix g = finite_correlator(chain);
  return von_neumann(correlation_spectrum(finite_corr_matrix(g, sites)));
}

}  // namespace xxent::oracle
