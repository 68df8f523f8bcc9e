#include "ocmeta/record.hpp"

#include <algorithm>

#include "ocmeta/csv.hpp"
#include "ocmeta/normalize.hpp"
#include "ocmeta/unicode.hpp"

namespace ocmeta::rec {

InputRecord parse_row(const std::vector<std::string>& raw_fields, std::size_t row_index) {
    if (raw_fields.size() != kColumnCount) {
        throw RowError(row_index, "",
                       "expected " + std::to_string(kColumnCount) + " fields, got " +
                           std::to_string(raw_fields.size()));
    }
    InputRecord r;
    r.id_cell = raw_fields[0];
    r.title = raw_fields[1];
    r.author = raw_fields[2];
    r.editor = raw_fields[3];
    r.pub_date = raw_fields[4];
    r.venue = raw_fields[5];
    r.volume = raw_fields[6];
    r.issue = raw_fields[7];
    r.page = raw_fields[8];
    r.type = raw_fields[9];
    r.publisher = raw_fields[10];
    return r;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && s[b] == ' ') ++b;
    while (e > b && s[e - 1] == ' ') --e;
    return std::string(s.substr(b, e - b));
}

// Splits "Name [id id ...]" into the name part and the bracket content.
// Throws CellError when brackets do not pair up.
std::pair<std::string, std::string> split_bracket(std::string_view entry,
                                                  std::string_view cell) {
    auto open = entry.find('[');
    auto close = entry.rfind(']');
    if (open == std::string_view::npos && close == std::string_view::npos) {
        return {trim(entry), ""};
    }
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw CellError(std::string(cell), "unbalanced brackets in '" + std::string(entry) + "'");
    }
    std::string name = trim(entry.substr(0, open));
    std::string ids = trim(entry.substr(open + 1, close - open - 1));
    return {name, ids};
}

}  // namespace

std::vector<id::ExternalId> parse_id_cell(std::string_view cell,
                                          std::vector<std::string>* bad_tokens) {
    std::vector<id::ExternalId> out;
    std::string folded = norm::fold_spaces(cell);
    std::size_t start = 0;
    while (start < folded.size()) {
        auto space = folded.find(' ', start);
        if (space == std::string::npos) space = folded.size();
        std::string token = folded.substr(start, space - start);
        start = space + 1;
        if (token.empty()) continue;
        auto colon = token.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= token.size()) {
            if (bad_tokens) bad_tokens->push_back(token);
            continue;
        }
        id::ExternalId eid(token.substr(0, colon), token.substr(colon + 1));
        if (std::find(out.begin(), out.end(), eid) == out.end()) out.push_back(std::move(eid));
    }
    return out;
}

std::vector<PersonSpec> parse_people_cell(std::string_view cell) {
    std::vector<PersonSpec> people;
    std::string folded = norm::fold_spaces(cell);
    if (folded.empty()) return people;

    std::size_t start = 0;
    while (start <= folded.size()) {
        auto semi = folded.find(';', start);
        std::string entry = semi == std::string::npos
                                ? folded.substr(start)
                                : folded.substr(start, semi - start);
        start = semi == std::string::npos ? folded.size() + 1 : semi + 1;
        entry = trim(entry);
        if (entry.empty()) continue;

        auto [name_part, ids_part] = split_bracket(entry, cell);
        PersonSpec p;
        if (!ids_part.empty()) {
            std::vector<std::string> bad;
            p.ids = parse_id_cell(ids_part, &bad);
            if (!bad.empty()) {
                throw CellError(std::string(cell),
                                "malformed identifier token '" + bad.front() + "'");
            }
        }
        auto comma = name_part.find(',');
        if (comma == std::string::npos) {
            p.is_organization = true;
            p.name = name_part;
        } else {
            p.family_name = trim(name_part.substr(0, comma));
            p.given_name = trim(name_part.substr(comma + 1));
        }
        if (name_part.empty() && p.ids.empty()) continue;
        people.push_back(std::move(p));
    }
    return people;
}

std::optional<VenueSpec> parse_venue_cell(std::string_view cell) {
    std::string folded = norm::fold_spaces(cell);
    if (folded.empty()) return std::nullopt;
    auto [name, ids_part] = split_bracket(folded, cell);
    VenueSpec v;
    v.name = name;
    if (!ids_part.empty()) {
        std::vector<std::string> bad;
        v.ids = parse_id_cell(ids_part, &bad);
        if (!bad.empty()) {
            throw CellError(std::string(cell),
                            "malformed identifier token '" + bad.front() + "'");
        }
    }
    if (v.name.empty() && v.ids.empty()) return std::nullopt;
    return v;
}

std::string render_id_cell(const std::vector<id::ExternalId>& ids) {
    std::string out;
    for (const auto& eid : ids) {
        if (!out.empty()) out.push_back(' ');
        out += eid.token();
    }
    return out;
}

std::string render_person(const PersonSpec& person) {
    std::string out;
    if (person.is_organization) {
        out = person.name;
    } else if (person.given_name.empty()) {
        out = person.family_name + ",";
    } else {
        out = person.family_name + ", " + person.given_name;
    }
    if (!person.ids.empty()) {
        out += " [" + render_id_cell(person.ids) + "]";
    }
    return out;
}

std::string render_people_cell(const std::vector<PersonSpec>& people) {
    std::string out;
    for (const PersonSpec& p : people) {
        if (!out.empty()) out += "; ";
        out += render_person(p);
    }
    return out;
}

std::string render_venue_cell(const VenueSpec& venue) {
    std::string out = venue.name;
    if (!venue.ids.empty()) {
        if (!out.empty()) out.push_back(' ');
        out += "[" + render_id_cell(venue.ids) + "]";
    }
    return out;
}

std::vector<std::string> record_fields(const InputRecord& r) {
    return {r.id_cell, r.title,  r.author, r.editor, r.pub_date, r.venue,
            r.volume,  r.issue,  r.page,   r.type,   r.publisher};
}

std::string write_rows(const std::vector<InputRecord>& records) {
    std::vector<csv::Row> rows;
    rows.reserve(records.size() + 1);
    csv::Row header;
    for (auto c : kColumns) header.emplace_back(c);
    rows.push_back(std::move(header));
    for (const InputRecord& r : records) rows.push_back(record_fields(r));
    return csv::write(rows);
}

std::vector<InputRecord> read_table(std::string_view bytes) {
    std::vector<csv::Row> rows = csv::parse(bytes);
    if (rows.empty()) throw RowError(0, "", "missing header row");
    const csv::Row& header = rows.front();
    if (header.size() != kColumnCount) {
        throw RowError(0, "", "header must name the eleven exchange columns");
    }
    for (std::size_t i = 0; i < kColumnCount; ++i) {
        if (!uni::iequals(norm::fold_spaces(header[i]), kColumns[i])) {
            throw RowError(0, std::string(kColumns[i]),
                           "unexpected header column '" + header[i] + "'");
        }
    }
    std::vector<InputRecord> records;
    records.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        records.push_back(parse_row(rows[i], i));
    }
    return records;
}

}  // namespace ocmeta::rec
