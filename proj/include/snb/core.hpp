#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace snb {

/// Entity identifier. Unique within one entity type; distinct entity types
/// may reuse the same numeric value.
using Id = std::uint64_t;

/// Sentinel for "no entity" (absent foreign key, unused reply slot, ...).
inline constexpr Id kNoId = static_cast<Id>(-1);

/// Calendar date, always interpreted in GMT.
struct Date {
    std::int32_t year = 1970;
    std::int32_t month = 1;  // 1..12
    std::int32_t day = 1;    // 1..31

    friend constexpr auto operator<=>(const Date&, const Date&) = default;
};

/// Instant with millisecond precision, fixed GMT offset.
/// Stored as milliseconds since the Unix epoch.
struct DateTime {
    std::int64_t ms = 0;

    friend constexpr auto operator<=>(const DateTime&, const DateTime&) = default;
};

// Proleptic Gregorian calendar conversions (days relative to 1970-01-01).
std::int64_t days_from_civil(std::int32_t y, std::int32_t m, std::int32_t d);
Date civil_from_days(std::int64_t days);

/// Midnight GMT of the given date.
DateTime to_datetime(const Date& d);
/// Calendar date of the given instant (GMT).
Date to_date(const DateTime& t);

DateTime make_datetime(std::int32_t y, std::int32_t mo, std::int32_t d, std::int32_t h,
                       std::int32_t mi, std::int32_t s, std::int32_t ms);

/// "yyyy-mm-dd"
std::string format_date(const Date& d);
/// "yyyy-mm-ddTHH:MM:SS.sss+0000"
std::string format_datetime(const DateTime& t);

Date parse_date(std::string_view s);
DateTime parse_datetime(std::string_view s);

/// True for "yyyy-mm-dd", including leap-day and month-length validation.
bool is_valid_date(std::int32_t y, std::int32_t m, std::int32_t d);

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

class SnbError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnknownIdError : public SnbError {
  public:
    UnknownIdError(std::string_view entityType, Id id);
    Id id() const { return id_; }

  private:
    Id id_;
};

class ParseError : public SnbError {
  public:
    ParseError(std::string file, std::size_t line, std::string reason);
    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }

  private:
    std::string file_;
    std::size_t line_;
    std::string reason_;
};

class SchemaViolationError : public SnbError {
  public:
    using SnbError::SnbError;
};

class IoError : public SnbError {
  public:
    using SnbError::SnbError;
};

class DependencyMissingError : public SnbError {
  public:
    using SnbError::SnbError;
};

class EmptyDictionaryError : public SnbError {
  public:
    using SnbError::SnbError;
};

class InsufficientCandidatesError : public SnbError {
  public:
    InsufficientCandidatesError(std::string what, double achievedBand);
    double achieved_band() const { return achievedBand_; }

  private:
    double achievedBand_;
};

class MissingParametersError : public SnbError {
  public:
    explicit MissingParametersError(std::string templateName);
    const std::string& template_name() const { return template_; }

  private:
    std::string template_;
};

class RangeTooLargeError : public SnbError {
  public:
    using SnbError::SnbError;
};

class ConfigError : public SnbError {
  public:
    using SnbError::SnbError;
};

}  // namespace snb
