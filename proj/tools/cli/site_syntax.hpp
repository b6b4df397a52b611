#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xxent::cli {

/// Bad command-line input. token() is the piece of text that was rejected.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string token, const std::string& message)
      : std::runtime_error(message), token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// "a-b,c,d-e": 1-based, inclusive ranges. Order is kept; duplicates are
/// left for SubsystemSpec to reject.
std::vector<std::int64_t> parse_sites(std::string_view text);

/// Comma-separated reals or integers, e.g. "0.5,2,3".
std::vector<double> parse_reals(std::string_view text);
std::vector<std::int64_t> parse_integers(std::string_view text);

}  // namespace xxent::cli
