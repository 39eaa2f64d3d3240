#include "decentral/csv.hpp"

namespace decentral::csv {

namespace {

// Appends the fields of `text` to `fields`. Returns true when a quoted field is
// still open at the end of the text.
bool parse_fields(std::string_view text, std::vector<std::string>& fields, bool in_quotes) {
    std::string current = in_quotes ? std::move(fields.back()) : std::string();
    if (in_quotes) fields.pop_back();
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return in_quotes;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::optional<Row> Reader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        strip_cr(line);
        if (line.empty() || line.front() == '#') continue;

        Row row;
        row.line = line_;
        bool open = parse_fields(line, row.fields, false);
        while (open) {
            std::string more;
            if (!std::getline(in_, more)) break;
            ++line_;
            strip_cr(more);
            row.fields.back().push_back('\n');
            open = parse_fields(more, row.fields, true);
        }
        return row;
    }
    return std::nullopt;
}

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    parse_fields(line, fields, false);
    return fields;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    return out;
}

}  // namespace decentral::csv
