#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace xxent::cli {

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_sites(std::span<const std::int64_t> sites) {
  std::string out;
  std::size_t i = 0;
  while (i < sites.size()) {
    std::size_t j = i;
    while (j + 1 < sites.size() && sites[j + 1] == sites[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(sites[i]);
    if (j > i) out += '-' + std::to_string(sites[j]);
    i = j + 1;
  }
  return out;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

double in_units(double nats, bool bits) { return bits ? nats / std::numbers::ln2 : nats; }

bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (file) file << text;
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace xxent::cli
