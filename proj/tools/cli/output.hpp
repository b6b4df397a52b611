#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace xxent::cli {

/// Round-trip decimal: 17 significant digits.
std::string format_real(double value);

/// Compact site syntax, e.g. {1,2,3,7} -> "1-3,7".
std::string format_sites(std::span<const std::int64_t> sites);

/// Quotes a CSV field when it contains a comma or a quote.
std::string csv_field(const std::string& field);

/// Entropies are computed in nats; bits only at serialization.
double in_units(double nats, bool bits);

/// Writes to `path` when it is non-empty, otherwise to `out`. Returns false
/// (with a message on `err`) if the file cannot be written.
bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace xxent::cli
