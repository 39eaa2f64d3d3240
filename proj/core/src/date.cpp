#include "decentral/date.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace decentral {

namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc() && ptr == text.data() + pos + len;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(TimestampFormat format) noexcept {
    return format == TimestampFormat::Iso8601 ? "iso8601" : "epoch-seconds";
}

std::optional<Date> parse_date(std::string_view text) {
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!read_int(text, 0, 4, y) || !read_int(text, 5, 2, m) || !read_int(text, 8, 2, d)) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

std::string format_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
    text = trim(text);
    const auto date = parse_date(text.substr(0, std::min<std::size_t>(10, text.size())));
    if (!date) return std::nullopt;
    Timestamp ts{*date};
    std::string_view rest = text.substr(10);
    if (rest.empty()) return ts;
    if (rest.front() != 'T' && rest.front() != ' ') return std::nullopt;
    rest.remove_prefix(1);

    int hh = 0, mm = 0, ss = 0;
    if (!read_int(rest, 0, 2, hh) || rest.size() < 5 || rest[2] != ':' || !read_int(rest, 3, 2, mm)) {
        return std::nullopt;
    }
    std::size_t pos = 5;
    if (pos < rest.size() && rest[pos] == ':') {
        if (!read_int(rest, pos + 1, 2, ss)) return std::nullopt;
        pos += 3;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    if (pos < rest.size() && rest[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos == start) return std::nullopt;
    }
    ts += std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss};

    std::string_view zone = trim(rest.substr(pos));
    if (zone.empty() || zone == "Z" || zone == "UTC" || zone == "+00:00" || zone == "+0000") return ts;
    if ((zone.front() == '+' || zone.front() == '-') && (zone.size() == 6 || zone.size() == 5)) {
        int oh = 0, om = 0;
        const bool colon = zone.size() == 6;
        if (!read_int(zone, 1, 2, oh) || (colon && zone[3] != ':') || !read_int(zone, colon ? 4 : 3, 2, om)) {
            return std::nullopt;
        }
        const auto offset = std::chrono::hours{oh} + std::chrono::minutes{om};
        return zone.front() == '+' ? ts - offset : ts + offset;
    }
    return std::nullopt;
}

std::optional<Timestamp> parse_epoch_seconds(std::string_view text) {
    text = trim(text);
    const std::size_t dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    if (whole.empty()) return std::nullopt;
    if (dot != std::string_view::npos) {
        std::string_view frac = text.substr(dot + 1);
        for (char c : frac) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        }
    }
    long long secs = 0;
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
    if (ec != std::errc() || ptr != whole.data() + whole.size() || secs < 0) return std::nullopt;
    return Timestamp{std::chrono::seconds{secs}};
}

TimestampFormat detect_timestamp_format(std::string_view sample) {
    sample = trim(sample);
    int dots = 0;
    for (char c : sample) {
        if (c == '.') {
            ++dots;
        } else if (!std::isdigit(static_cast<unsigned char>(c))) {
            return TimestampFormat::Iso8601;
        }
    }
    return (!sample.empty() && dots <= 1) ? TimestampFormat::EpochSeconds : TimestampFormat::Iso8601;
}

std::optional<Timestamp> parse_timestamp(std::string_view text, TimestampFormat format) {
    return format == TimestampFormat::Iso8601 ? parse_iso8601(text) : parse_epoch_seconds(text);
}

}  // namespace decentral
