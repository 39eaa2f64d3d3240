#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace decentral {

/// UTC calendar day.
using Date = std::chrono::sys_days;
/// UTC instant at one-second resolution.
using Timestamp = std::chrono::sys_seconds;

enum class TimestampFormat { Iso8601, EpochSeconds };

std::string_view to_string(TimestampFormat format) noexcept;

/// Parses `YYYY-MM-DD`. Returns nullopt on malformed or impossible dates.
std::optional<Date> parse_date(std::string_view text);

/// Formats as `YYYY-MM-DD`.
std::string format_date(Date date);

/// Parses an ISO-8601 timestamp (`T` or space separator, optional fractional
/// seconds, `Z`, ` UTC` or a numeric offset) into UTC. Fractional seconds are
/// truncated.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Parses decimal epoch seconds, optionally with a fractional part.
std::optional<Timestamp> parse_epoch_seconds(std::string_view text);

/// Guesses the format from a sample value: all digits (and at most one dot)
/// is epoch seconds, anything else ISO-8601.
TimestampFormat detect_timestamp_format(std::string_view sample);

std::optional<Timestamp> parse_timestamp(std::string_view text, TimestampFormat format);

inline Date day_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

/// Signed whole days from `from` to `to`.
inline long days_between(Date from, Date to) { return static_cast<long>((to - from).count()); }

}  // namespace decentral
