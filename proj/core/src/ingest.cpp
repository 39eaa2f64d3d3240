#include "decentral/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>

#include "decentral/error.hpp"

namespace decentral {

namespace {

std::string trim_copy(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string location(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

bool is_missing_marker(std::string_view s) {
    return s.empty() || s == "NA" || s == "N/A" || s == "NaN" || s == "nan" || s == "null" || s == "NULL";
}

}  // namespace

std::optional<TokenAmount> parse_token_amount(std::string_view text) {
    std::string s = trim_copy(text);
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        if (!std::all_of(frac.begin(), frac.end(), [](char c) { return c == '0'; })) return std::nullopt;
        s.erase(dot);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return std::nullopt;
    }
    try {
        return TokenAmount(s);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string format_timestamp(Timestamp ts) {
    const Date day = day_of(ts);
    const std::chrono::hh_mm_ss hms{ts - Timestamp{day}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "T%02d:%02d:%02dZ", static_cast<int>(hms.hours().count()),
                  static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()));
    return format_date(day) + buf;
}

TransferReader::TransferReader(std::istream& in, std::string source, TransferReaderOptions options)
    : reader_(in), source_(std::move(source)), options_(std::move(options)), format_(options_.timestamp_format) {
    read_header();
}

TransferReader::TransferReader(const std::filesystem::path& path, TransferReaderOptions options)
    : owned_(std::make_unique<std::ifstream>(path)),
      reader_(*owned_),
      source_(path.string()),
      options_(std::move(options)),
      format_(options_.timestamp_format) {
    if (!*owned_) throw Error(ErrorCode::IoError, "cannot open transfer file " + source_);
    read_header();
}

void TransferReader::read_header() {
    auto header = reader_.next();
    if (!header) throw Error(ErrorCode::SchemaMismatch, source_ + ": file has no header row");
    const TransferSchema& s = options_.schema;
    const std::array<const std::string*, 5> wanted = {&s.value, &s.from_address, &s.to_address, &s.block_timestamp,
                                                      &s.token_address};
    std::vector<std::string> names;
    for (const auto& f : header->fields) names.push_back(trim_copy(f));
    width_ = names.size();
    for (std::size_t k = 0; k < wanted.size(); ++k) {
        const auto it = std::find(names.begin(), names.end(), *wanted[k]);
        if (it == names.end()) {
            throw Error(ErrorCode::SchemaMismatch, location(source_, header->line) + ": missing column '" + *wanted[k] + "'");
        }
        column_[k] = static_cast<std::size_t>(it - names.begin());
    }
}

std::optional<TransferRecord> TransferReader::parse_row(const csv::Row& row) {
    auto fail = [&](std::string message) -> std::optional<TransferRecord> {
        errors_.push_back({row.line, std::move(message)});
        if (errors_.size() > options_.error_budget) {
            throw Error(ErrorCode::RowParseError, location(source_, row.line) + ": " + errors_.back().message +
                                                      " (error budget of " + std::to_string(options_.error_budget) +
                                                      " rows exceeded)");
        }
        return std::nullopt;
    };
    if (row.fields.size() != width_) {
        return fail("expected " + std::to_string(width_) + " fields, found " + std::to_string(row.fields.size()));
    }
    const std::string& value_text = row.fields[column_[0]];
    auto value = parse_token_amount(value_text);
    if (!value) return fail("value '" + value_text + "' is not a nonnegative integer");

    TransferRecord rec;
    rec.value = std::move(*value);
    rec.from_address = trim_copy(row.fields[column_[1]]);
    rec.to_address = trim_copy(row.fields[column_[2]]);
    rec.token_address = trim_copy(row.fields[column_[4]]);
    if (rec.from_address.empty() || rec.to_address.empty()) return fail("empty from/to address");
    if (rec.token_address.empty()) return fail("empty token address");

    const std::string& ts_text = row.fields[column_[3]];
    if (!format_) format_ = detect_timestamp_format(ts_text);
    auto ts = parse_timestamp(ts_text, *format_);
    if (!ts) return fail("timestamp '" + ts_text + "' is not valid " + std::string(to_string(*format_)));
    rec.block_timestamp = *ts;
    const Date day = day_of(*ts);
    if (options_.genesis && day < *options_.genesis) {
        return fail("timestamp " + ts_text + " precedes token genesis " + format_date(*options_.genesis));
    }
    if (options_.dataset_end && day > *options_.dataset_end) {
        return fail("timestamp " + ts_text + " is after dataset end " + format_date(*options_.dataset_end));
    }
    return rec;
}

std::optional<TransferRecord> TransferReader::next() {
    while (auto row = reader_.next()) {
        if (auto rec = parse_row(*row)) {
            ++records_read_;
            return rec;
        }
    }
    return std::nullopt;
}

std::vector<TransferRecord> parse_transfers(const std::filesystem::path& path, TransferReaderOptions options,
                                            std::vector<RowError>* errors) {
    TransferReader reader(path, std::move(options));
    std::vector<TransferRecord> out;
    while (auto rec = reader.next()) out.push_back(std::move(*rec));
    if (errors) *errors = reader.errors();
    return out;
}

void write_transfers_csv(std::ostream& out, std::span<const TransferRecord> records) {
    out << "value,from_address,to_address,block_timestamp,token_address\n";
    for (const auto& r : records) {
        out << r.value.str() << ',' << csv::escape(r.from_address) << ',' << csv::escape(r.to_address) << ','
            << format_timestamp(r.block_timestamp) << ',' << csv::escape(r.token_address) << '\n';
    }
}

bool TransferFilter::accepts(const TransferRecord& record) const {
    if (drop_self_transfers && iequals(record.from_address, record.to_address)) return false;
    if (drop_mint_burn && (iequals(record.from_address, kZeroAddress) || iequals(record.to_address, kZeroAddress))) {
        return false;
    }
    return true;
}

DailyWindower::DailyWindower(std::string token, TransferFilter filter)
    : token_(std::move(token)), filter_(filter) {}

bool DailyWindower::add(const TransferRecord& record) {
    if (!token_.empty() && !iequals(record.token_address, token_)) {
        throw Error(ErrorCode::InvalidArgument,
                    "record for token " + record.token_address + " passed to the window of " + token_);
    }
    if (!filter_.accepts(record)) return false;
    days_[day_of(record.block_timestamp)].push_back(record.value.convert_to<double>());
    ++accepted_;
    return true;
}

std::vector<DailyWindow> DailyWindower::finish() && {
    std::vector<DailyWindow> out;
    out.reserve(days_.size());
    for (auto& [date, values] : days_) out.push_back({date, std::move(values)});
    return out;
}

std::vector<DailyWindow> window_daily(std::span<const TransferRecord> records, std::string_view token,
                                      TransferFilter filter) {
    DailyWindower windower{std::string(token), filter};
    for (const auto& r : records) windower.add(r);
    return std::move(windower).finish();
}

const Column* MarketSeries::find(std::string_view name) const {
    const auto it = columns.find(name);
    return it == columns.end() ? nullptr : &it->second;
}

std::optional<std::size_t> MarketSeries::position(Date date) const {
    if (dates.empty() || date < dates.front() || date > dates.back()) return std::nullopt;
    return static_cast<std::size_t>(days_between(dates.front(), date));
}

MarketSeries parse_market(std::istream& in, const std::string& source) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) throw Error(ErrorCode::SchemaMismatch, source + ": file has no header row");

    std::optional<std::size_t> date_col;
    std::vector<std::pair<std::size_t, std::string>> value_cols;
    MarketSeries series;
    for (std::size_t i = 0; i < header->fields.size(); ++i) {
        const std::string name = trim_copy(header->fields[i]);
        if (name == "date") {
            date_col = i;
        } else if (std::find(kMarketColumns.begin(), kMarketColumns.end(), name) != kMarketColumns.end()) {
            value_cols.emplace_back(i, name);
            series.columns[name];
        } else {
            series.warnings.push_back(source + ": ignoring column '" + name + "'");
        }
    }
    if (!date_col) throw Error(ErrorCode::SchemaMismatch, source + ": missing 'date' column");

    while (auto row = reader.next()) {
        const std::string where = location(source, row->line);
        if (row->fields.size() != header->fields.size()) {
            throw Error(ErrorCode::RowParseError, where + ": expected " + std::to_string(header->fields.size()) +
                                                      " fields, found " + std::to_string(row->fields.size()));
        }
        // Accept timestamps such as 2021-08-05T00:00:00.000000000Z by keeping the day.
        const std::string date_text = trim_copy(row->fields[*date_col]);
        const auto date = parse_date(date_text.substr(0, 10));
        if (!date) throw Error(ErrorCode::RowParseError, where + ": bad date '" + date_text + "'");
        if (!series.dates.empty() && *date <= series.dates.back()) {
            throw Error(ErrorCode::NonMonotoneDates,
                        where + ": date " + format_date(*date) + " does not follow " + format_date(series.dates.back()));
        }
        // Fill calendar gaps with explicit missing rows.
        while (!series.dates.empty() && series.dates.back() + std::chrono::days{1} < *date) {
            series.dates.push_back(series.dates.back() + std::chrono::days{1});
            for (auto& [name, col] : series.columns) col.push_back(std::nullopt);
        }
        series.dates.push_back(*date);
        for (const auto& [idx, name] : value_cols) {
            const std::string text = trim_copy(row->fields[idx]);
            std::optional<double> value;
            if (!is_missing_marker(text)) {
                double v = 0.0;
                auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
                if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
                    throw Error(ErrorCode::RowParseError, where + ": " + name + " value '" + text + "' is not a number");
                }
                if (v < 0.0) throw Error(ErrorCode::RowParseError, where + ": " + name + " is negative");
                value = v;
            }
            series.columns[name].push_back(value);
        }
    }
    return series;
}

MarketSeries parse_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open market file " + path.string());
    return parse_market(in, path.string());
}

}  // namespace decentral
