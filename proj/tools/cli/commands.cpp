#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "cli/output.hpp"
#include "cli/site_syntax.hpp"
#include "xxent/contour.hpp"
#include "xxent/entropy.hpp"
#include "xxent/error.hpp"
#include "xxent/oracle.hpp"
#include "xxent/parallel.hpp"

namespace xxent::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kContourTolerance = 1e-6;
constexpr double kOracleTolerance = 1e-8;

struct Outcome {
  std::string text;
  bool passed = true;
};

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParams:
    case ErrorKind::kDuplicateSite:
    case ErrorKind::kNonPositiveSite:
    case ErrorKind::kEmptySubsystem:
    case ErrorKind::kSpanTooLarge:
    case ErrorKind::kBadAlpha:
    case ErrorKind::kOverlappingParts:
    case ErrorKind::kTooLarge:
    case ErrorKind::kBadContour:
      return true;
    default:
      return false;
  }
}

SubsystemSpec spec_from(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(flag, std::string(flag) + " is required");
  return SubsystemSpec::parse(parse_sites(text));
}

std::vector<double> alphas_from(const std::string& text) {
  if (text.empty()) return {};
  std::vector<double> alphas = parse_reals(text);
  for (double a : alphas) check_alpha(a);
  return alphas;
}

Json sites_json(const SubsystemSpec& spec) {
  return Json(std::vector<std::int64_t>(spec.sites().begin(), spec.sites().end()));
}

Json base_config(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["h"] = c.h;
  j["units"] = c.bits ? "bits" : "nats";
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// entropy ------------------------------------------------------------------

Outcome cmd_entropy(const RunConfig& c) {
  const SubsystemSpec spec = spec_from(c.sites, "--sites");
  const ModelParams params = ModelParams::create(c.h);
  const std::vector<double> alphas = alphas_from(c.alphas);
  const EntropyReport r = compute_entropy(spec, params, alphas, {.threads = c.threads});

  if (c.format == "csv") {
    std::string text = "quantity,index,value\n";
    text += "s_von_neumann,," + format_real(in_units(r.s_von_neumann, c.bits)) + "\n";
    for (double a : alphas)
      text += "renyi," + format_real(a) + "," + format_real(in_units(r.renyi.at(a), c.bits)) + "\n";
    const auto nu = r.spectrum.values();
    for (std::size_t k = 0; k < nu.size(); ++k)
      text += "nu," + std::to_string(k) + "," + format_real(nu[k]) + "\n";
    return {text};
  }
  Json config = base_config(c);
  config["sites"] = format_sites(spec.sites());
  config["alphas"] = alphas;
  Json renyi = Json::object();
  for (double a : alphas) renyi[format_real(a)] = in_units(r.renyi.at(a), c.bits);
  Json results;
  results["sites"] = sites_json(spec);
  results["size"] = spec.size();
  results["s_von_neumann"] = in_units(r.s_von_neumann, c.bits);
  results["renyi"] = renyi;
  results["spectrum"] = std::vector<double>(r.spectrum.values().begin(), r.spectrum.values().end());
  Json residuals;
  residuals["schur_blocks"] = r.fill.schur_blocks;
  residuals["adjugate_blocks"] = r.fill.adjugate_blocks;
  residuals["worst_core_pivot_ratio"] = r.fill.worst_core_pivot_ratio;
  return {dump({{"config", config}, {"results", results}, {"residuals", residuals}})};
}

// mutual -------------------------------------------------------------------

Outcome cmd_mutual(const RunConfig& c) {
  const SubsystemSpec a = spec_from(c.part1, "--part1");
  const SubsystemSpec b = spec_from(c.part2, "--part2");
  const ModelParams params = ModelParams::create(c.h);
  const MutualInformationReport r = mutual_information(a, b, params, {.threads = c.threads});
  const double s1 = in_units(r.s1, c.bits);
  const double s2 = in_units(r.s2, c.bits);
  const double su = in_units(r.s_union, c.bits);
  const double mi = in_units(r.mutual_info, c.bits);
  if (c.format == "csv") {
    return {"s_a1,s_a2,s_union,mutual_info\n" + format_real(s1) + "," + format_real(s2) + "," +
            format_real(su) + "," + format_real(mi) + "\n"};
  }
  Json config = base_config(c);
  config["part1"] = format_sites(a.sites());
  config["part2"] = format_sites(b.sites());
  Json results{{"s_a1", s1}, {"s_a2", s2}, {"s_union", su}, {"mutual_info", mi}};
  Json residuals{{"s_a1_minus_s_a2", r.s1 - r.s2}};
  return {dump({{"config", config}, {"results", results}, {"residuals", residuals}})};
}

// scan-fig2 ----------------------------------------------------------------

struct ScanRow {
  std::int64_t m = 0;
  bool computed = false;
  MutualInformationReport report{};
  std::string failure{};
};

SubsystemSpec interval(std::int64_t first, std::int64_t length) {
  std::vector<std::int64_t> sites;
  for (std::int64_t s = first; s < first + length; ++s) sites.push_back(s);
  return SubsystemSpec::parse(sites);
}

Outcome cmd_scan_fig2(const RunConfig& c, std::ostream& err) {
  std::vector<std::int64_t> ms = c.m_list.empty() ? kFig2Defaults : parse_integers(c.m_list);
  for (std::int64_t m : ms)
    if (m < 1) throw UsageError(std::to_string(m), "m must be positive, got " + std::to_string(m));
  if (c.max_m) std::erase_if(ms, [&](std::int64_t m) { return m > *c.max_m; });
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  const ModelParams params = ModelParams::create(c.h);

  std::vector<ScanRow> rows(ms.size());
  parallel_for(rows.size(), c.threads, [&](std::size_t i) {
    ScanRow& row = rows[i];
    row.m = ms[i];
    try {
      // Intervals of length m separated by m sites.
      row.report = mutual_information(interval(1, row.m), interval(2 * row.m + 1, row.m), params);
      row.computed = true;
      const double asym = std::abs(row.report.s1 - row.report.s2);
      if (!(asym <= kSymmetryTolerance)) {
        row.failure = "S_A1 and S_A2 differ by " + format_real(asym);
      }
    } catch (const Error& e) {
      row.failure = e.what();
    }
  });

  bool passed = true;
  for (const ScanRow& row : rows) {
    if (!row.failure.empty()) {
      passed = false;
      err << "scan-fig2: m=" << row.m << ": " << row.failure << "\n";
    }
  }

  const auto inv = [](std::int64_t m) { return 1.0 / static_cast<double>(m); };
  if (c.plot_data) {
    std::string text = "# inv_m mutual_info\n";
    for (const ScanRow& row : rows) {
      if (!row.computed) continue;
      text += format_real(inv(row.m)) + " " +
              format_real(in_units(row.report.mutual_info, c.bits)) + "\n";
    }
    return {text, passed};
  }
  if (c.format == "json") {
    Json config = base_config(c);
    config["m"] = ms;
    Json results = Json::array();
    Json residuals = Json::array();
    for (const ScanRow& row : rows) {
      if (row.computed) {
        results.push_back({{"m", row.m},
                           {"inv_m", inv(row.m)},
                           {"parity", row.m % 2 == 0 ? "even" : "odd"},
                           {"s_a1", in_units(row.report.s1, c.bits)},
                           {"s_a2", in_units(row.report.s2, c.bits)},
                           {"s_union", in_units(row.report.s_union, c.bits)},
                           {"mutual_info", in_units(row.report.mutual_info, c.bits)}});
      }
      Json res{{"m", row.m}};
      res["s_a1_minus_s_a2"] = row.computed ? Json(row.report.s1 - row.report.s2) : Json(nullptr);
      res["failure"] = row.failure.empty() ? Json(nullptr) : Json(row.failure);
      residuals.push_back(res);
    }
    return {dump({{"config", config}, {"results", results}, {"residuals", residuals}}), passed};
  }
  std::string text = "m,inv_m,s_a1,s_a2,s_union,mutual_info\n";
  for (const ScanRow& row : rows) {
    if (!row.computed) continue;
    text += std::to_string(row.m) + "," + format_real(inv(row.m)) + "," +
            format_real(in_units(row.report.s1, c.bits)) + "," +
            format_real(in_units(row.report.s2, c.bits)) + "," +
            format_real(in_units(row.report.s_union, c.bits)) + "," +
            format_real(in_units(row.report.mutual_info, c.bits)) + "\n";
  }
  return {text, passed};
}

// contour-check ------------------------------------------------------------

std::vector<std::int64_t> draw_sites(std::size_t count, std::int64_t max_site,
                                     std::mt19937_64& rng) {
  std::vector<std::int64_t> all;
  for (std::int64_t s = 1; s <= max_site; ++s) all.push_back(s);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

struct CheckCase {
  std::string sites{};
  double h = 0.0;
  double epsilon = 0.0;
  std::optional<double> alpha{};
  double computed = NAN;
  double reference = NAN;
  double delta = NAN;
  bool pass = false;
  std::string failure{};
};

Json case_json(const CheckCase& k) {
  Json j{{"sites", k.sites}, {"h", k.h}};
  if (k.epsilon > 0) j["epsilon"] = k.epsilon;
  j["alpha"] = k.alpha ? Json(*k.alpha) : Json(nullptr);
  j["computed"] = std::isfinite(k.computed) ? Json(k.computed) : Json(nullptr);
  j["reference"] = std::isfinite(k.reference) ? Json(k.reference) : Json(nullptr);
  j["delta"] = std::isfinite(k.delta) ? Json(k.delta) : Json(nullptr);
  j["pass"] = k.pass;
  if (!k.failure.empty()) j["failure"] = k.failure;
  return j;
}

std::string cases_csv(const std::vector<CheckCase>& cases, bool with_epsilon) {
  std::string text = with_epsilon ? "case,sites,h,epsilon,alpha,computed,reference,delta,pass\n"
                                  : "case,sites,h,computed,reference,delta,pass\n";
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const CheckCase& k = cases[i];
    text += std::to_string(i) + "," + csv_field(k.sites) + "," + format_real(k.h) + ",";
    if (with_epsilon) {
      text += format_real(k.epsilon) + "," + (k.alpha ? format_real(*k.alpha) : "") + ",";
    }
    text += format_real(k.computed) + "," + format_real(k.reference) + "," +
            format_real(k.delta) + "," + (k.pass ? "1" : "0") + "\n";
  }
  return text;
}

Outcome check_outcome(const RunConfig& c, Json config, const std::vector<CheckCase>& cases,
                      bool with_epsilon, Json extra_residuals, std::ostream& err) {
  std::size_t passed = 0;
  double worst = 0.0;
  for (const CheckCase& k : cases) {
    if (k.pass) ++passed;
    if (std::isfinite(k.delta)) worst = std::max(worst, k.delta);
    if (!k.failure.empty()) err << c.command << ": " << k.sites << ": " << k.failure << "\n";
  }
  err << c.command << ": " << passed << "/" << cases.size() << " cases within tolerance, max |delta| = "
      << format_real(worst) << "\n";
  const bool ok = passed == cases.size();
  if (c.format == "csv") return {cases_csv(cases, with_epsilon), ok};
  Json results = Json::array();
  for (const CheckCase& k : cases) results.push_back(case_json(k));
  extra_residuals["max_delta"] = worst;
  extra_residuals["passed"] = passed;
  extra_residuals["total"] = cases.size();
  return {dump({{"config", config}, {"results", results}, {"residuals", extra_residuals}}), ok};
}

Outcome cmd_contour_check(const RunConfig& c, std::ostream& err) {
  const double tolerance = c.tolerance.value_or(kContourTolerance);
  const std::vector<double> epsilons = parse_reals(c.epsilons);
  const std::vector<double> alphas = alphas_from(c.alphas);
  if (c.cases < 1) throw UsageError(std::to_string(c.cases), "--cases must be positive");
  if (c.shape != "rectangle" && c.shape != "ellipse") {
    throw UsageError(c.shape, "unknown contour shape '" + c.shape + "'");
  }
  for (double eps : epsilons) validate(ContourSpec::rectangle(eps));

  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, 12);
  std::uniform_int_distribution<int> field_dist(0, 15);
  std::vector<CheckCase> cases;
  for (int n = 0; n < c.cases; ++n) {
    const std::size_t size = size_dist(rng);
    const auto sites = draw_sites(size, static_cast<std::int64_t>(2 * size + 4), rng);
    const double h = 0.1 * field_dist(rng);
    const SubsystemSpec spec = SubsystemSpec::parse(sites);
    const CorrMatrix a = build_corr_matrix(spec, ModelParams::create(h));
    const Spectrum spectrum = correlation_spectrum(a.entries);
    std::vector<std::optional<double>> orders{std::nullopt};
    for (double alpha : alphas) orders.emplace_back(alpha);
    for (double eps : epsilons) {
      const ContourSpec contour =
          c.shape == "ellipse" ? ContourSpec::ellipse(eps) : ContourSpec::rectangle(eps);
      for (const auto& alpha : orders) {
        CheckCase k{.sites = format_sites(spec.sites()), .h = h, .epsilon = eps, .alpha = alpha};
        try {
          if (alpha) {
            k.reference = shifted_renyi(spectrum.values(), eps, *alpha);
            k.computed = renyi_by_contour(a, contour, *alpha).value;
          } else {
            k.reference = shifted_entropy(spectrum.values(), eps);
            k.computed = entropy_by_contour(a, contour).value;
          }
          if (c.inject_failure && cases.empty()) k.computed += 10.0 * tolerance;
          k.delta = std::abs(k.computed - k.reference);
          k.pass = k.delta <= tolerance;
        } catch (const Error& e) {
          k.failure = e.what();
        }
        cases.push_back(std::move(k));
      }
    }
  }
  Json config = base_config(c);
  config["seed"] = c.seed;
  config["cases"] = c.cases;
  config["epsilons"] = epsilons;
  config["alphas"] = alphas;
  config["shape"] = c.shape;
  config["tolerance"] = tolerance;
  config["inject_failure"] = c.inject_failure;
  return check_outcome(c, config, cases, true, Json::object(), err);
}

// oracle-check -------------------------------------------------------------

Outcome cmd_oracle_check(const RunConfig& c, std::ostream& err) {
  const double tolerance = c.tolerance.value_or(kOracleTolerance);
  const int length = c.chain_length;
  if (length < 2 || length > oracle::kMaxSpinSites) {
    throw UsageError(std::to_string(length), "--L must lie in [2, " +
                                                 std::to_string(oracle::kMaxSpinSites) + "]");
  }
  if (c.max_size < 0 || c.max_size > length || c.random_size < 1 || c.random_size > length ||
      c.random_subsets < 0) {
    throw UsageError("subset sizes", "subset sizes must lie in [1, L]");
  }
  const oracle::FiniteChain chain{length, c.h};
  const oracle::GroundState state = oracle::ed_ground_state(chain);
  const Matrix correlator = oracle::finite_correlator(chain);

  std::vector<std::vector<std::int64_t>> subsets;
  for (unsigned mask = 1; mask < (1u << length); ++mask) {
    if (std::popcount(mask) > c.max_size) continue;
    std::vector<std::int64_t> s;
    for (int site = 1; site <= length; ++site)
      if (mask & (1u << (site - 1))) s.push_back(site);
    subsets.push_back(std::move(s));
  }
  std::mt19937_64 rng(c.seed);
  for (int k = 0; k < c.random_subsets; ++k)
    subsets.push_back(draw_sites(static_cast<std::size_t>(c.random_size), length, rng));

  std::vector<CheckCase> cases;
  double worst_correlator = 0.0;
  for (const auto& sites : subsets) {
    const SubsystemSpec spec = SubsystemSpec::parse(sites);
    if (c.contiguous_only && spec.intervals().size() > 1) continue;
    CheckCase k{.sites = format_sites(spec.sites()), .h = c.h};
    try {
      k.reference = oracle::ed_reduced_entropy(state, spec);
      k.computed = oracle::ff_finite_entropy(chain, spec);
      if (c.inject_failure && cases.empty()) k.computed += 10.0 * tolerance;
      k.delta = std::abs(k.computed - k.reference);
      k.pass = k.delta <= tolerance;
      const Matrix measured = oracle::ed_restricted_correlation(state, spec);
      const Matrix predicted = oracle::finite_corr_matrix(correlator, spec);
      for (std::size_t i = 0; i < spec.size(); ++i)
        for (std::size_t j = 0; j < spec.size(); ++j)
          worst_correlator = std::max(worst_correlator, std::abs(measured(i, j) - predicted(i, j)));
    } catch (const Error& e) {
      k.failure = e.what();
    }
    cases.push_back(std::move(k));
  }
  Json config = base_config(c);
  config["L"] = length;
  config["seed"] = c.seed;
  config["max_size"] = c.max_size;
  config["random_subsets"] = c.random_subsets;
  config["random_size"] = c.random_size;
  config["contiguous_only"] = c.contiguous_only;
  config["tolerance"] = tolerance;
  config["inject_failure"] = c.inject_failure;
  Json residuals{{"max_correlator_delta", worst_correlator}, {"gap", state.gap}};
  return check_outcome(c, config, cases, false, residuals, err);
}

}  // namespace

unsigned worker_threads() {
  if (const char* env = std::getenv("FERMION_ENTROPY_THREADS"); env != nullptr && *env != '\0') {
    const auto values = parse_integers(env);
    if (values.size() != 1 || values[0] < 1 || values[0] > 1024) {
      throw UsageError(env, "FERMION_ENTROPY_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(values[0]);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Entanglement entropy of subsystems of the XX spin chain", "xxent"};
  app.require_subcommand(1);
  // -h is taken by the field, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    c.format = default_format;
    sub->add_option("--h", c.h, "Transverse field, |h| < 2");
    sub->add_option("--output,-o", c.output, "Write to this file instead of stdout");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_flag("--bits", c.bits, "Report entropies in bits instead of nats");
  };

  auto* entropy = app.add_subcommand("entropy", "Entropy of one subsystem");
  entropy->add_option("--sites", c.sites, "Sites, e.g. 1-10,21-30")->required();
  entropy->add_option("--alpha", c.alphas, "Renyi orders, comma separated");

  auto* mutual = app.add_subcommand("mutual", "Mutual information of two disjoint parts");
  mutual->add_option("--part1", c.part1, "Sites of the first part")->required();
  mutual->add_option("--part2", c.part2, "Sites of the second part")->required();

  auto* scan = app.add_subcommand("scan-fig2", "Two intervals of length m at distance m");
  scan->add_option("--m", c.m_list, "Comma-separated m values");
  scan->add_option("--max-m", c.max_m, "Drop m values above this");
  scan->add_flag("--plot-data", c.plot_data, "Two whitespace-separated columns: inv_m mutual_info");

  auto* contour = app.add_subcommand("contour-check", "Contour integrals against the spectrum");
  contour->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  contour->add_option("--cases", c.cases, "Number of random subsystems")->capture_default_str();
  contour->add_option("--epsilon", c.epsilons, "Cut offsets, comma separated")
      ->capture_default_str();
  contour->add_option("--alpha", c.alphas, "Also check these Renyi orders");
  contour->add_option("--shape", c.shape, "rectangle or ellipse")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Free fermions against exact diagonalization");
  oracle_cmd->add_option("--L", c.chain_length, "Chain length")->capture_default_str();
  oracle_cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  oracle_cmd->add_option("--max-size", c.max_size, "Check every subset up to this size")
      ->capture_default_str();
  oracle_cmd->add_option("--random-subsets", c.random_subsets, "Extra random subsets")
      ->capture_default_str();
  oracle_cmd->add_option("--random-size", c.random_size, "Size of the random subsets")
      ->capture_default_str();
  oracle_cmd->add_flag("--contiguous-only", c.contiguous_only, "Skip subsets with gaps");

  add_common(entropy, "json");
  add_common(mutual, "json");
  add_common(scan, "csv");
  add_common(contour, "json");
  add_common(oracle_cmd, "json");
  for (auto* sub : {contour, oracle_cmd}) {
    sub->add_option("--tolerance", c.tolerance, "Largest accepted |delta|");
    sub->add_flag("--inject-failure", c.inject_failure, "Perturb the first case (self-test)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  // The default of --format depends on the subcommand.
  if (chosen->count("--format") == 0) c.format = c.command == "scan-fig2" ? "csv" : "json";

  try {
    c.threads = worker_threads();
    Outcome outcome;
    if (c.command == "entropy") {
      outcome = cmd_entropy(c);
    } else if (c.command == "mutual") {
      outcome = cmd_mutual(c);
    } else if (c.command == "scan-fig2") {
      outcome = cmd_scan_fig2(c, err);
    } else if (c.command == "contour-check") {
      outcome = cmd_contour_check(c, err);
    } else {
      outcome = cmd_oracle_check(c, err);
    }
    if (!emit(outcome.text, c.output, out, err)) return kExitNumeric;
    return outcome.passed ? kExitOk : kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? kExitUsage : kExitNumeric;
  }
}

}  // namespace xxent::cli
