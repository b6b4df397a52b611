#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace xxent::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

struct RunConfig {
  std::string command;
  double h = 0.0;
  std::string sites;
  std::string part1;
  std::string part2;
  std::string alphas;
  std::string m_list;
  std::optional<std::int64_t> max_m;
  std::string output;
  std::string format;
  std::uint64_t seed = 1;
  bool bits = false;
  bool plot_data = false;
  bool inject_failure = false;
  std::optional<double> tolerance;
  // contour-check
  int cases = 20;
  std::string epsilons = "1e-3,1e-4";
  std::string shape = "rectangle";
  // oracle-check
  int chain_length = 8;
  int max_size = 3;
  int random_subsets = 200;
  int random_size = 4;
  bool contiguous_only = false;
  unsigned threads = 1;
};

/// Default m values of the two-interval scan.
inline const std::vector<std::int64_t> kFig2Defaults = {21,  40,  41,  63,  80,  81,  160,
                                                        161, 189, 320, 321, 567, 640, 641};

/// Worker count from FERMION_ENTROPY_THREADS, else the hardware count.
/// Throws UsageError for a malformed value.
unsigned worker_threads();

/// Runs one command line (without the program name). Output goes to `out`
/// unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xxent::cli
