#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ocmeta::csv {

// Exchange dialect: comma delimiter, double-quote quoting with "" escapes,
// UTF-8, LF record separator on output (CR LF accepted on input).
struct ParseError : std::runtime_error {
    std::size_t row;
    ParseError(std::size_t row_, const std::string& what)
        : std::runtime_error(what), row(row_) {}
};

using Row = std::vector<std::string>;

std::vector<Row> parse(std::string_view bytes);

// Minimal quoting: a field is quoted only when it contains the delimiter,
// a quote, or a line break.
std::string write(const std::vector<Row>& rows);

std::string write_field(std::string_view field);

}  // namespace ocmeta::csv
