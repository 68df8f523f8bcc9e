#include "ocmeta/csv.hpp"

namespace ocmeta::csv {

std::vector<Row> parse(std::string_view bytes) {
    std::vector<Row> rows;
    Row current;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool at_field_start = true;
    std::size_t line = 1;

    auto end_field = [&] {
        current.push_back(std::move(field));
        field.clear();
        at_field_start = true;
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        rows.push_back(std::move(current));
        current.clear();
    };

    std::size_t i = 0;
    while (i < bytes.size()) {
        char c = bytes[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (at_field_start) {
                    in_quotes = true;
                    field_was_quoted = true;
                    at_field_start = false;
                } else if (field_was_quoted) {
                    throw ParseError(line, "text after closing quote");
                } else {
                    field.push_back('"');
                }
                ++i;
                break;
            case ',':
                end_field();
                ++i;
                break;
            case '\r':
                if (i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                ++i;
                break;
            default:
                if (field_was_quoted) throw ParseError(line, "text after closing quote");
                field.push_back(c);
                at_field_start = false;
                ++i;
                break;
        }
    }
    if (in_quotes) throw ParseError(line, "unterminated quoted field");
    if (!field.empty() || !current.empty() || field_was_quoted) end_record();
    return rows;
}

std::string write_field(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string write(const std::vector<Row>& rows) {
    std::string out;
    for (const Row& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += write_field(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace ocmeta::csv
