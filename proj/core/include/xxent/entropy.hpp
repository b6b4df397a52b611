#pragma once

#include <map>
#include <span>

#include "xxent/correlation.hpp"
#include "xxent/matrix.hpp"
#include "xxent/model.hpp"
#include "xxent/spectral.hpp"

namespace xxent {

/// Entropy of one fermionic mode with correlation eigenvalue nu:
/// -(1+nu)/2 ln((1+nu)/2) - (1-nu)/2 ln((1-nu)/2), with 0 ln 0 = 0.
/// Raises DomainError for |nu| > 1.
double binary_term(double nu);

/// (1 - alpha)^-1 ln[((1+nu)/2)^alpha + ((1-nu)/2)^alpha].
double renyi_term(double nu, double alpha);

/// Raises BadAlpha unless alpha > 0 and alpha != 1.
void check_alpha(double alpha);

double von_neumann(const Spectrum& spectrum);
double renyi(const Spectrum& spectrum, double alpha);

/// All entropies in nats.
struct EntropyReport {
  SubsystemSpec spec;
  ModelParams params;
  double s_von_neumann;
  std::map<double, double> renyi;
  Spectrum spectrum;
  FillStats fill;
};

EntropyReport compute_entropy(const SubsystemSpec& spec, const ModelParams& params,
                              std::span<const double> alphas = {},
                              const CorrelationOptions& options = {});

struct MutualInformationReport {
  SubsystemSpec part1;
  SubsystemSpec part2;
  double mutual_info;
  double s1;
  double s2;
  double s_union;
};

/// I = S(part1) + S(part2) - S(part1 u part2), each from its own correlation
/// matrix: the separators of a pair inside part1 change once part2 joins the
/// subsystem, so sub-blocks of the union matrix cannot be reused.
/// Raises OverlappingParts when the parts share a site.
MutualInformationReport mutual_information(const SubsystemSpec& part1,
                                           const SubsystemSpec& part2,
                                           const ModelParams& params,
                                           const CorrelationOptions& options = {});

inline constexpr std::size_t kMaxDensityMatrixModes = 12;

/// Diagonal 2^N x 2^N reduced density matrix in the mode-occupation basis.
/// Bit i of the basis index set means mode i contributes (1 - nu_i)/2.
/// Raises TooLarge for N > kMaxDensityMatrixModes.
Matrix reduced_density_matrix(const Spectrum& spectrum);
Matrix reduced_density_matrix(const SubsystemSpec& spec, const ModelParams& params);

}  // namespace xxent
