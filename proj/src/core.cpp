#include "snb/core.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace snb {

namespace {

constexpr std::array<int, 12> kMonthDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(std::int32_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(std::int32_t y, std::int32_t m) {
    if (m == 2 && is_leap(y)) return 29;
    return kMonthDays[static_cast<std::size_t>(m - 1)];
}

std::int64_t parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    if (ec != std::errc{} || ptr != s.data() + pos + len) {
        throw SnbError("malformed numeric field in date/time literal: " + std::string(s));
    }
    return out;
}

}  // namespace

std::int64_t days_from_civil(std::int32_t y, std::int32_t m, std::int32_t d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<std::int32_t>(y + (m <= 2)), static_cast<std::int32_t>(m),
                static_cast<std::int32_t>(d)};
}

DateTime to_datetime(const Date& d) {
    return DateTime{days_from_civil(d.year, d.month, d.day) * 86'400'000LL};
}

Date to_date(const DateTime& t) {
    std::int64_t days = t.ms / 86'400'000LL;
    if (t.ms % 86'400'000LL < 0) --days;
    return civil_from_days(days);
}

DateTime make_datetime(std::int32_t y, std::int32_t mo, std::int32_t d, std::int32_t h,
                       std::int32_t mi, std::int32_t s, std::int32_t ms) {
    std::int64_t out = days_from_civil(y, mo, d) * 86'400'000LL;
    out += h * 3'600'000LL + mi * 60'000LL + s * 1'000LL + ms;
    return DateTime{out};
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::string format_datetime(const DateTime& t) {
    std::int64_t days = t.ms / 86'400'000LL;
    std::int64_t rem = t.ms % 86'400'000LL;
    if (rem < 0) {
        rem += 86'400'000LL;
        --days;
    }
    const Date d = civil_from_days(days);
    const int h = static_cast<int>(rem / 3'600'000);
    const int mi = static_cast<int>(rem / 60'000 % 60);
    const int s = static_cast<int>(rem / 1'000 % 60);
    const int ms = static_cast<int>(rem % 1'000);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03d+0000", d.year, d.month,
                  d.day, h, mi, s, ms);
    return buf;
}

bool is_valid_date(std::int32_t y, std::int32_t m, std::int32_t d) {
    if (m < 1 || m > 12 || d < 1) return false;
    return d <= days_in_month(y, m);
}

Date parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
        throw SnbError("malformed date literal: " + std::string(s));
    }
    Date d;
    d.year = static_cast<std::int32_t>(parse_fixed_int(s, 0, 4));
    d.month = static_cast<std::int32_t>(parse_fixed_int(s, 5, 2));
    d.day = static_cast<std::int32_t>(parse_fixed_int(s, 8, 2));
    if (!is_valid_date(d.year, d.month, d.day)) {
        throw SnbError("date out of range: " + std::string(s));
    }
    return d;
}

DateTime parse_datetime(std::string_view s) {
    // yyyy-mm-ddTHH:MM:SS.sss+0000
    if (s.size() != 28 || s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != '.' ||
        s.substr(23) != "+0000") {
        throw SnbError("malformed datetime literal: " + std::string(s));
    }
    const Date d = parse_date(s.substr(0, 10));
    const auto h = parse_fixed_int(s, 11, 2);
    const auto mi = parse_fixed_int(s, 14, 2);
    const auto sec = parse_fixed_int(s, 17, 2);
    const auto ms = parse_fixed_int(s, 20, 3);
    if (h > 23 || mi > 59 || sec > 59) {
        throw SnbError("time of day out of range: " + std::string(s));
    }
    return make_datetime(d.year, d.month, d.day, static_cast<std::int32_t>(h),
                         static_cast<std::int32_t>(mi), static_cast<std::int32_t>(sec),
                         static_cast<std::int32_t>(ms));
}

UnknownIdError::UnknownIdError(std::string_view entityType, Id id)
    : SnbError("unknown " + std::string(entityType) + " id " + std::to_string(id)), id_(id) {}

ParseError::ParseError(std::string file, std::size_t line, std::string reason)
    : SnbError(file + ":" + std::to_string(line) + ": " + reason),
      file_(std::move(file)),
      line_(line),
      reason_(std::move(reason)) {}

InsufficientCandidatesError::InsufficientCandidatesError(std::string what, double achievedBand)
    : SnbError(std::move(what)), achievedBand_(achievedBand) {}

MissingParametersError::MissingParametersError(std::string templateName)
    : SnbError("no substitution parameters for template " + templateName),
      template_(std::move(templateName)) {}

}  // namespace snb
