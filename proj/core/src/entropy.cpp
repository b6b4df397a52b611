#include "xxent/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "xxent/error.hpp"
#include "xxent/parallel.hpp"

namespace xxent {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_nu(double nu) {
  if (!(std::abs(nu) <= 1.0)) {
    raise(ErrorKind::kDomainError, "mode eigenvalue " + std::to_string(nu) + " outside [-1, 1]");
  }
}

}  // namespace

double binary_term(double nu) {
  check_nu(nu);
  return -xlogx(0.5 * (1.0 + nu)) - xlogx(0.5 * (1.0 - nu));
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || std::abs(alpha - 1.0) < 1e-12) {
    raise(ErrorKind::kBadAlpha, "Renyi index " + std::to_string(alpha) +
                                    " must be positive and different from 1");
  }
}

double renyi_term(double nu, double alpha) {
  check_nu(nu);
  check_alpha(alpha);
  const double p = 0.5 * (1.0 + nu);
  const double q = 0.5 * (1.0 - nu);
  return std::log(std::pow(p, alpha) + std::pow(q, alpha)) / (1.0 - alpha);
}

double von_neumann(const Spectrum& spectrum) {
  double s = 0.0;
  for (double nu : spectrum.values()) s += binary_term(nu);
  return s;
}

double renyi(const Spectrum& spectrum, double alpha) {
  check_alpha(alpha);
  double s = 0.0;
  for (double nu : spectrum.values()) s += renyi_term(nu, alpha);
  return s;
}

EntropyReport compute_entropy(const SubsystemSpec& spec, const ModelParams& params,
                              std::span<const double> alphas,
                              const CorrelationOptions& options) {
  for (double alpha : alphas) check_alpha(alpha);
  const CorrMatrix corr = build_corr_matrix(spec, params, options);
  Spectrum spectrum = correlation_spectrum(corr.entries);
  EntropyReport report{spec, params, von_neumann(spectrum), {}, std::move(spectrum), corr.stats};
  for (double alpha : alphas) report.renyi[alpha] = renyi(report.spectrum, alpha);
  return report;
}

MutualInformationReport mutual_information(const SubsystemSpec& part1,
                                           const SubsystemSpec& part2,
                                           const ModelParams& params,
                                           const CorrelationOptions& options) {
  for (std::int64_t s : part2.sites()) {
    if (part1.contains(s)) {
      raise(ErrorKind::kOverlappingParts, "site " + std::to_string(s) + " is in both parts");
    }
  }
  std::vector<std::int64_t> joined(part1.sites().begin(), part1.sites().end());
  joined.insert(joined.end(), part2.sites().begin(), part2.sites().end());
  const SubsystemSpec both = SubsystemSpec::parse(joined);

  const std::array<const SubsystemSpec*, 3> specs{&part1, &part2, &both};
  std::array<double, 3> s{};
  CorrelationOptions inner = options;
  inner.threads = 1;
  parallel_for(specs.size(), options.threads, [&](std::size_t i) {
    s[i] = compute_entropy(*specs[i], params, {}, inner).s_von_neumann;
  });
  return {part1, part2, s[0] + s[1] - s[2], s[0], s[1], s[2]};
}

Matrix reduced_density_matrix(const Spectrum& spectrum) {
  const std::size_t modes = spectrum.source_dim();
  if (modes > kMaxDensityMatrixModes) {
    raise(ErrorKind::kTooLarge, std::to_string(modes) + " modes exceed the dense limit of " +
                                    std::to_string(kMaxDensityMatrixModes));
  }
  const std::size_t dim = std::size_t{1} << modes;
  Matrix rho(dim, dim);
  const auto nu = spectrum.values();
  for (std::size_t state = 0; state < dim; ++state) {
    double w = 1.0;
    for (std::size_t i = 0; i < modes; ++i) {
      w *= ((state >> i) & 1U) ? 0.5 * (1.0 - nu[i]) : 0.5 * (1.0 + nu[i]);
    }
    rho(state, state) = w;
  }
  return rho;
}

Matrix reduced_density_matrix(const SubsystemSpec& spec, const ModelParams& params) {
  if (spec.size() > kMaxDensityMatrixModes) {
    raise(ErrorKind::kTooLarge, std::to_string(spec.size()) + " sites exceed the dense limit");
  }
  return reduced_density_matrix(correlation_spectrum(build_corr_matrix(spec, params).entries));
}

}  // namespace xxent
