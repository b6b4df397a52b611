#pragma once

#include <complex>
#include <vector>

#include "xxent/correlation.hpp"
#include "xxent/matrix.hpp"

namespace xxent::oracle {

/// Open XX chain of `sites` spins with field h, used as brute-force ground
/// truth. The spin-space path is limited to kMaxSpinSites.
struct FiniteChain {
  int sites;
  double h;
};

inline constexpr int kMaxSpinSites = 12;
inline constexpr int kMaxFermionSites = 2000;
inline constexpr int kMaxReducedSites = 10;

/// Ground state in the spin basis. Basis index bit (L - s) holds site s
/// (site 1 is the most significant bit); a set bit is spin up.
struct GroundState {
  int sites;
  std::vector<double> amplitudes;
  double energy;
  /// Distance to the next level over all magnetization sectors.
  double gap;
};

/// Dense diagonalization of H = -sum (sx sx + sy sy) - h sum sz, one
/// magnetization sector at a time. Raises TooLarge for L > kMaxSpinSites and
/// DegenerateGroundState when the gap is below 1e-10.
GroundState ed_ground_state(const FiniteChain& chain);

/// Von Neumann entropy of the reduced density matrix obtained by tracing out
/// every site not in `sites`. Raises TooLarge for more than kMaxReducedSites.
double ed_reduced_entropy(const GroundState& state, const SubsystemSpec& sites);

/// (i/2)(<c~_{2m-1} c~_{2n}> + <c~_{2n-1} c~_{2m}>) measured directly on the
/// spin ground state, with Jordan-Wigner strings restricted to `sites`.
Matrix ed_restricted_correlation(const GroundState& state, const SubsystemSpec& sites);

/// G_mn = 2 <a+_m a_n> - delta_mn for the filled negative-energy modes of the
/// fermionized chain. Raises DegenerateFermiLevel when a single-particle
/// energy lies within 1e-12 of zero.
Matrix finite_correlator(const FiniteChain& chain);

/// A_mn = -det(T^_mn) with the bordered layout filled from G instead of g.
Matrix finite_corr_matrix(const Matrix& correlator, const SubsystemSpec& sites);

/// Free-fermion entropy of `sites` in the finite chain.
double ff_finite_entropy(const FiniteChain& chain, const SubsystemSpec& sites);

}  // namespace xxent::oracle
