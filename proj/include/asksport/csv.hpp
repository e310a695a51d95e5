#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace asksport::csv {

using Row = std::vector<std::string>;

/// Parses RFC-4180 CSV: comma separated, double-quoted fields may contain
/// commas, CRLF/LF line breaks and doubled quotes. A trailing newline does
/// not produce an empty record, and a leading UTF-8 BOM is ignored.
/// Throws InputError on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

/// Header row plus records, with lookup of columns by name.
struct Table {
    Row header;
    std::vector<Row> rows;

    /// Index of `name` in the header, or -1.
    int column(std::string_view name) const;
};

Table parse_table(std::string_view text);

std::string quote(std::string_view field);

} // namespace asksport::csv
