#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "decentral/csv.hpp"
#include "decentral/date.hpp"

namespace decentral {

/// Token amount in base units. ERC-20 values are uint256.
using TokenAmount = boost::multiprecision::checked_uint256_t;

struct TransferRecord {
    TokenAmount value;
    std::string from_address;
    std::string to_address;
    Timestamp block_timestamp;
    std::string token_address;

    bool operator==(const TransferRecord&) const = default;
};

/// Header names for each transfer field.
struct TransferSchema {
    std::string value = "value";
    std::string from_address = "from_address";
    std::string to_address = "to_address";
    std::string block_timestamp = "block_timestamp";
    std::string token_address = "token_address";
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct TransferReaderOptions {
    TransferSchema schema;
    /// Malformed rows tolerated before parsing aborts with RowParseError.
    std::size_t error_budget = 100;
    /// Detected from the first data row when unset.
    std::optional<TimestampFormat> timestamp_format;
    /// Inclusive bounds on the record's UTC day.
    std::optional<Date> genesis;
    std::optional<Date> dataset_end;
};

/// Single-pass reader over a transfer CSV. Rows are validated one at a time;
/// malformed rows are recorded in errors() and skipped.
class TransferReader {
public:
    TransferReader(std::istream& in, std::string source, TransferReaderOptions options = {});
    /// Opens `path`; throws IoError when it cannot be read.
    explicit TransferReader(const std::filesystem::path& path, TransferReaderOptions options = {});

    TransferReader(const TransferReader&) = delete;
    TransferReader& operator=(const TransferReader&) = delete;

    /// Next valid record in file order, or nullopt at end of input. Throws
    /// RowParseError once the error budget is exceeded.
    std::optional<TransferRecord> next();

    const std::vector<RowError>& errors() const noexcept { return errors_; }
    /// Format in use; detected lazily from the first data row.
    std::optional<TimestampFormat> timestamp_format() const noexcept { return format_; }
    std::size_t records_read() const noexcept { return records_read_; }
    const std::string& source() const noexcept { return source_; }

private:
    void read_header();
    std::optional<TransferRecord> parse_row(const csv::Row& row);

    std::unique_ptr<std::ifstream> owned_;
    csv::Reader reader_;
    std::string source_;
    TransferReaderOptions options_;
    std::array<std::size_t, 5> column_{};
    std::size_t width_ = 0;
    std::optional<TimestampFormat> format_;
    std::vector<RowError> errors_;
    std::size_t records_read_ = 0;
};

/// Reads every valid record. Convenience over TransferReader.
std::vector<TransferRecord> parse_transfers(const std::filesystem::path& path, TransferReaderOptions options = {},
                                            std::vector<RowError>* errors = nullptr);

/// Parses a decimal nonnegative integer, optionally with an all-zero fraction
/// such as "12.0". Returns nullopt for anything else, including values above
/// 2^256 - 1.
std::optional<TokenAmount> parse_token_amount(std::string_view text);

/// Writes records with the default schema header and ISO-8601 UTC timestamps.
void write_transfers_csv(std::ostream& out, std::span<const TransferRecord> records);

std::string format_timestamp(Timestamp ts);

/// Transfer values of one UTC calendar day.
struct DailyWindow {
    Date date;
    std::vector<double> values;
};

struct TransferFilter {
    bool drop_self_transfers = false;
    /// Drops transfers from or to the zero address.
    bool drop_mint_burn = false;

    bool accepts(const TransferRecord& record) const;
};

inline constexpr std::string_view kZeroAddress = "0x0000000000000000000000000000000000000000";

/// Groups records into UTC day windows. Days without transfers produce no
/// window. When `token` is nonempty every record must carry that token
/// address (compared case-insensitively).
class DailyWindower {
public:
    explicit DailyWindower(std::string token = {}, TransferFilter filter = {});

    /// Returns false when the record was dropped by the filter.
    bool add(const TransferRecord& record);

    /// Windows sorted by date.
    std::vector<DailyWindow> finish() &&;

    std::size_t accepted() const noexcept { return accepted_; }

private:
    std::string token_;
    TransferFilter filter_;
    std::map<Date, std::vector<double>> days_;
    std::size_t accepted_ = 0;
};

std::vector<DailyWindow> window_daily(std::span<const TransferRecord> records, std::string_view token,
                                      TransferFilter filter = {});

/// Column names of the market data dictionary.
inline constexpr std::array<std::string_view, 5> kMarketColumns = {"CapMrktCurUSD", "PriceUSD", "VtyDayRet30d",
                                                                    "TxTfrValAdjUSD", "TxTfrCnt"};

/// Date-aligned optional values; nullopt marks a missing observation.
using Column = std::vector<std::optional<double>>;

/// Contiguous daily market series. Calendar gaps in the source file appear
/// as rows whose every column is missing.
struct MarketSeries {
    std::vector<Date> dates;
    std::map<std::string, Column, std::less<>> columns;
    std::vector<std::string> warnings;

    const Column* find(std::string_view name) const;
    /// Position of `date`, or nullopt when outside the series.
    std::optional<std::size_t> position(Date date) const;
};

MarketSeries parse_market(std::istream& in, const std::string& source);
MarketSeries parse_market(const std::filesystem::path& path);

}  // namespace decentral
