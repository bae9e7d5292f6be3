#include "tsexplain/time_utils.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>

namespace tsexplain {

std::optional<double> parse_timestamp(const std::string& text) {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;
    int minute = 0;
    int second = 0;
    char sep = ' ';
    int fields = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &year, &month, &day, &sep,
                             &hour, &minute, &second);
    if (fields == 3) {
        // date only
    } else if (fields == 7) {
        if (sep != ' ' && sep != 'T') {
            return std::nullopt;
        }
    } else {
        return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour < 0 || hour > 23 ||
        minute < 0 || minute > 59 || second < 0 || second > 60) {
        return std::nullopt;
    }
    std::tm tm{};
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = second;
    const time_t t = timegm(&tm);
    if (t == static_cast<time_t>(-1)) {
        return std::nullopt;
    }
    return static_cast<double>(t);
}

std::string format_timestamp(double epoch_seconds) {
    const time_t t = static_cast<time_t>(std::llround(epoch_seconds));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%d %H:%M:%S", &tm);
    return buf;
}

}  // namespace tsexplain
