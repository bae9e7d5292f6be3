#include "tsexplain/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "tsexplain/time_utils.hpp"

namespace tsexplain {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

}  // namespace

TimeSeries load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path);
    }

    std::vector<double> values;
    std::vector<double> timestamps;
    bool timestamped = false;
    bool shape_known = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto comma = row.find(',');
        const bool two_cols = comma != std::string::npos;

        if (!shape_known) {
            // Establish the shape from the first row; a first row that parses
            // as neither shape is treated as a header, unless its value field
            // is a recognizable non-finite number, which is a data error.
            double v = 0.0;
            if (two_cols) {
                const std::string ts = row.substr(0, comma);
                const std::string val = row.substr(comma + 1);
                if (parse_timestamp(ts) && parse_double(val, v)) {
                    timestamped = true;
                    shape_known = true;
                } else if (parse_double(val, v) || parse_double(ts, v)) {
                    throw DataError(path + ":" + std::to_string(line_no) +
                                    ": malformed row (expected timestamp,value)");
                } else {
                    continue;  // header
                }
            } else {
                if (parse_double(row, v)) {
                    timestamped = false;
                    shape_known = true;
                } else {
                    continue;  // header
                }
            }
        }

        if (timestamped) {
            if (!two_cols) {
                throw DataError(path + ":" + std::to_string(line_no) + ": expected two columns");
            }
            const auto ts = parse_timestamp(row.substr(0, comma));
            double v = 0.0;
            if (!ts) {
                throw DataError(path + ":" + std::to_string(line_no) + ": bad timestamp");
            }
            if (!parse_double(row.substr(comma + 1), v)) {
                throw DataError(path + ":" + std::to_string(line_no) + ": bad value");
            }
            if (!std::isfinite(v)) {
                throw DataError(path + ":" + std::to_string(line_no) + ": non-finite value");
            }
            timestamps.push_back(*ts);
            values.push_back(v);
        } else {
            if (two_cols) {
                throw DataError(path + ":" + std::to_string(line_no) + ": expected one column");
            }
            double v = 0.0;
            if (!parse_double(row, v)) {
                throw DataError(path + ":" + std::to_string(line_no) + ": bad value");
            }
            if (!std::isfinite(v)) {
                throw DataError(path + ":" + std::to_string(line_no) + ": non-finite value");
            }
            values.push_back(v);
        }
    }

    if (values.empty()) {
        throw DataError(path + ": no data rows");
    }

    TimeSeries out;
    out.values = std::move(values);
    out.sample_period = 1.0;
    if (timestamped && timestamps.size() >= 2) {
        std::vector<double> gaps(timestamps.size() - 1);
        for (std::size_t i = 0; i + 1 < timestamps.size(); ++i) {
            gaps[i] = timestamps[i + 1] - timestamps[i];
        }
        std::vector<double> sorted = gaps;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        if (!(median > 0.0)) {
            throw DataError(path + ": timestamps are not increasing");
        }
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            if (std::abs(gaps[i] - median) > 0.01 * median) {
                throw DataError(path + ":" + std::to_string(i + 2) +
                                ": non-uniform timestamp spacing");
            }
        }
        out.sample_period = median;
        out.start_time = timestamps.front();
    } else if (timestamped) {
        out.start_time = timestamps.front();
    }
    return out;
}

void write_csv(const std::string& path, const TimeSeries& s) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    out.precision(17);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.start_time) {
            out << format_timestamp(*s.start_time + static_cast<double>(i) * s.sample_period)
                << ',';
        }
        out << s.values[i] << '\n';
    }
    if (!out) {
        throw DataError("failed writing file: " + path);
    }
}

}  // namespace tsexplain
