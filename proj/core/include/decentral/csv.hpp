#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace decentral::csv {

struct Row {
    std::size_t line = 0;  // 1-based line number of the row's first line
    std::vector<std::string> fields;
};

/// Streaming RFC 4180 reader. Quoted fields may contain commas, doubled
/// quotes and newlines. Blank lines and lines starting with '#' are skipped.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next row, or nullopt at end of input.
    std::optional<Row> next();

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Splits one physical line; no embedded newlines.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace decentral::csv
