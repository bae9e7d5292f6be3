#pragma once

#include <optional>
#include <string>

namespace tsexplain {

/// Parses "YYYY-MM-DD HH:MM:SS" or "YYYY-MM-DDTHH:MM:SS" (optionally with a
/// trailing 'Z', optionally date-only) as UTC epoch seconds. Returns nullopt
/// on malformed input.
std::optional<double> parse_timestamp(const std::string& text);

/// Formats UTC epoch seconds as "YYYY-MM-DD HH:MM:SS".
std::string format_timestamp(double epoch_seconds);

}  // namespace tsexplain
