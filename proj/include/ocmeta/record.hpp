#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocmeta/identifier.hpp"

namespace ocmeta::rec {

inline constexpr std::size_t kColumnCount = 11;
inline constexpr std::array<std::string_view, kColumnCount> kColumns = {
    "id", "title", "author", "editor", "pub_date", "venue",
    "volume", "issue", "page", "type", "publisher"};

// One raw row of the exchange table; nothing normalized yet.
struct InputRecord {
    std::string id_cell;
    std::string title;
    std::string author;
    std::string editor;
    std::string pub_date;
    std::string venue;
    std::string volume;
    std::string issue;
    std::string page;
    std::string type;
    std::string publisher;
};

struct RowError : std::runtime_error {
    std::size_t row;
    std::string column;
    RowError(std::size_t row_, std::string column_, const std::string& what)
        : std::runtime_error(what), row(row_), column(std::move(column_)) {}
};

// Structured diagnostics stream: (row, column, message).
struct RowDiagnostic {
    std::size_t row = 0;
    std::string column;
    std::string message;
};
using RowDiagnostics = std::vector<RowDiagnostic>;

// Positional mapping of exactly eleven fields. Throws RowError on arity
// mismatch; row_index only labels the error.
InputRecord parse_row(const std::vector<std::string>& raw_fields, std::size_t row_index = 0);

// "Family, Given [scheme:value ...]" entries separated by semicolons; a
// name without a comma is an organization.
struct PersonSpec {
    std::string family_name;
    std::string given_name;
    std::string name;  // organization name
    bool is_organization = false;
    std::vector<id::ExternalId> ids;
};

struct VenueSpec {
    std::string name;
    std::vector<id::ExternalId> ids;
};

struct CellError : std::runtime_error {
    std::string cell;
    CellError(std::string cell_, const std::string& what)
        : std::runtime_error(what), cell(std::move(cell_)) {}
};

// Throws CellError on unbalanced brackets. Order of people is preserved.
std::vector<PersonSpec> parse_people_cell(std::string_view cell);

std::optional<VenueSpec> parse_venue_cell(std::string_view cell);

// Space-separated scheme:value tokens, schemes lowercased, duplicates
// dropped keeping the first occurrence. Tokens without a colon are skipped
// and reported.
std::vector<id::ExternalId> parse_id_cell(std::string_view cell,
                                          std::vector<std::string>* bad_tokens = nullptr);

// Serialization back to cell text.
std::string render_id_cell(const std::vector<id::ExternalId>& ids);
std::string render_person(const PersonSpec& person);
std::string render_people_cell(const std::vector<PersonSpec>& people);
std::string render_venue_cell(const VenueSpec& venue);

// Header plus one row per record, in input order.
std::string write_rows(const std::vector<InputRecord>& records);
std::vector<std::string> record_fields(const InputRecord& r);

// Parses a whole CSV file: validates the header and the arity of each row.
std::vector<InputRecord> read_table(std::string_view bytes);

}  // namespace ocmeta::rec
