#pragma once

#include <stdexcept>
#include <string>

#include "tsexplain/series.hpp"

namespace tsexplain {

/// Malformed or unreadable input data (maps to CLI exit code 2).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reads a series from `path`: one value per row, or two comma-separated
/// columns (ISO-8601 timestamp, value), optional single header line.
/// Timestamped files must be uniformly spaced within 1% of the median
/// interval; the spacing becomes sample_period and the first timestamp
/// becomes start_time. Non-numeric or non-finite values raise DataError with
/// the offending line number.
TimeSeries load_csv(const std::string& path);

/// Writes one value per row (plus an ISO timestamp column when the series
/// carries time metadata).
void write_csv(const std::string& path, const TimeSeries& s);

}  // namespace tsexplain
