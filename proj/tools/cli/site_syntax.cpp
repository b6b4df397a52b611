#include "cli/site_syntax.hpp"

#include <charconv>
#include <cmath>

namespace xxent::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    out.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t to_integer(std::string_view token, std::string_view whole) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw UsageError(std::string(whole), "'" + std::string(whole) + "' is not an integer");
  }
  return value;
}

}  // namespace

std::vector<std::int64_t> parse_sites(std::string_view text) {
  if (trim(text).empty()) throw UsageError(std::string(text), "empty site list");
  std::vector<std::int64_t> sites;
  for (std::string_view raw : split(text, ',')) {
    const std::string_view token = trim(raw);
    if (token.empty()) throw UsageError(std::string(text), "empty entry in site list '" + std::string(text) + "'");
    // A leading '-' would be a negative number, not a range.
    const std::size_t dash = token.find('-', 1);
    if (dash == std::string_view::npos) {
      sites.push_back(to_integer(token, token));
      continue;
    }
    const std::int64_t first = to_integer(trim(token.substr(0, dash)), token);
    const std::int64_t last = to_integer(trim(token.substr(dash + 1)), token);
    if (last < first) {
      throw UsageError(std::string(token), "range '" + std::string(token) + "' runs backwards");
    }
    if (last - first > 10'000'000) {
      throw UsageError(std::string(token), "range '" + std::string(token) + "' is too long");
    }
    for (std::int64_t s = first; s <= last; ++s) sites.push_back(s);
  }
  return sites;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (std::string_view raw : split(text, ',')) {
    const std::string_view token = trim(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
        !std::isfinite(value)) {
      throw UsageError(std::string(token), "'" + std::string(token) + "' is not a number");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<std::int64_t> parse_integers(std::string_view text) {
  std::vector<std::int64_t> out;
  for (std::string_view raw : split(text, ',')) out.push_back(to_integer(trim(raw), trim(raw)));
  return out;
}

}  // namespace xxent::cli
