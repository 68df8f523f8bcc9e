#include "ocmeta/provenance.hpp"

#include <charconv>
#include <cstdio>

#include "ocmeta/vocab.hpp"

namespace ocmeta::prov {

namespace v = ocmeta::vocab;
using rdf::Quad;
using rdf::QuadSet;
using rdf::Term;

namespace {

// Civil <-> epoch day conversion (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

}  // namespace

std::string render_time(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::optional<Timestamp> parse_time(std::string_view s) {
    int y, mo, d, h, mi, se;
    if (s.size() < 20) return std::nullopt;
    if (std::sscanf(std::string(s).c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi,
                    &se) != 6) {
        return std::nullopt;
    }
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

std::string snapshot_iri(const omid::Omid& entity, int number, std::string_view base) {
    return entity.iri(base) + "/prov/se/" + std::to_string(number);
}

std::string Snapshot::iri(std::string_view base) const {
    return snapshot_iri(entity, number, base);
}

std::string build_update_query(const QuadSet& deletions, const QuadSet& insertions) {
    auto section = [](std::string_view keyword, const QuadSet& quads) {
        std::string out(keyword);
        out += " DATA { ";
        std::string current_graph;
        bool graph_open = false;
        for (const Quad& q : quads) {
            if (!graph_open || q.graph != current_graph) {
                if (graph_open) out += "} ";
                out += "GRAPH " + rdf::term_to_string(Term::iri(q.graph)) + " { ";
                current_graph = q.graph;
                graph_open = true;
            }
            out += rdf::term_to_string(Term::iri(q.subject)) + " " +
                   rdf::term_to_string(Term::iri(q.predicate)) + " " +
                   rdf::term_to_string(q.object) + " . ";
        }
        if (graph_open) out += "} ";
        out += "}";
        return out;
    };
    std::string out;
    if (!deletions.empty()) out += section("DELETE", deletions);
    if (!insertions.empty()) {
        if (!out.empty()) out += "; ";
        out += section("INSERT", insertions);
    }
    return out;
}

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() &&
           (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) {
        ++pos;
    }
}

bool consume(std::string_view s, std::size_t& pos, std::string_view token) {
    skip_ws(s, pos);
    if (s.substr(pos, token.size()) != token) return false;
    pos += token.size();
    return true;
}

// Parses "DELETE DATA { GRAPH <g> { triples } ... }" starting after the
// keyword; fills the quad set.
void parse_data_block(std::string_view s, std::size_t& pos, QuadSet& out) {
    if (!consume(s, pos, "DATA")) throw DeltaError("expected DATA");
    if (!consume(s, pos, "{")) throw DeltaError("expected {");
    while (true) {
        skip_ws(s, pos);
        if (pos >= s.size()) throw DeltaError("unterminated update data block");
        if (s[pos] == '}') {
            ++pos;
            return;
        }
        if (!consume(s, pos, "GRAPH")) throw DeltaError("expected GRAPH");
        skip_ws(s, pos);
        rdf::Term g = rdf::parse_term(s, pos);
        if (!g.is_iri()) throw DeltaError("graph must be an IRI");
        if (!consume(s, pos, "{")) throw DeltaError("expected { after graph");
        while (true) {
            skip_ws(s, pos);
            if (pos >= s.size()) throw DeltaError("unterminated graph block");
            if (s[pos] == '}') {
                ++pos;
                break;
            }
            rdf::Term subj = rdf::parse_term(s, pos);
            rdf::Term pred = rdf::parse_term(s, pos);
            rdf::Term obj = rdf::parse_term(s, pos);
            if (!subj.is_iri() || !pred.is_iri()) throw DeltaError("IRI expected");
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == '.') ++pos;
            out.insert(Quad(subj.value, pred.value, obj, g.value));
        }
    }
}

}  // namespace

Delta parse_update_query(std::string_view text) {
    Delta delta;
    std::size_t pos = 0;
    while (true) {
        skip_ws(text, pos);
        if (pos >= text.size()) break;
        if (text[pos] == ';') {
            ++pos;
            continue;
        }
        if (consume(text, pos, "DELETE")) {
            parse_data_block(text, pos, delta.deletions);
        } else if (consume(text, pos, "INSERT")) {
            parse_data_block(text, pos, delta.insertions);
        } else {
            throw DeltaError("expected DELETE or INSERT");
        }
    }
    return delta;
}

void apply_update(QuadSet& state, const Delta& delta) {
    for (const Quad& q : delta.deletions) state.erase(q);
    for (const Quad& q : delta.insertions) state.insert(q);
}

QuadSet snapshot_quads(const Snapshot& s, std::string_view base) {
    QuadSet quads;
    std::string g = s.iri(base);
    const std::string& se = g;
    quads.insert(Quad(se, v::rdf_type, Term::iri(v::prov_entity), g));
    quads.insert(
        Quad(se, v::prov_specialization_of, Term::iri(s.entity.iri(base)), g));
    quads.insert(Quad(se, v::prov_was_attributed_to, Term::iri(s.attributed_to), g));
    quads.insert(Quad(se, v::prov_had_primary_source, Term::iri(s.primary_source), g));
    quads.insert(Quad(se, v::prov_generated_at_time,
                      Term::literal(render_time(s.generated_at), v::xsd_datetime), g));
    if (s.invalidated_at) {
        quads.insert(Quad(se, v::prov_invalidated_at_time,
                          Term::literal(render_time(*s.invalidated_at), v::xsd_datetime),
                          g));
    }
    for (const std::string& from : s.derived_from) {
        quads.insert(Quad(se, v::prov_was_derived_from, Term::iri(from), g));
    }
    if (!s.description.empty()) {
        quads.insert(Quad(se, v::dcterms_description, Term::literal(s.description), g));
    }
    if (!s.update_query.empty()) {
        quads.insert(Quad(se, v::oco_has_update_query, Term::literal(s.update_query), g));
    }
    return quads;
}

std::optional<Snapshot> decode_snapshot(std::string_view graph_iri, const QuadSet& quads,
                                        std::string_view base) {
    auto marker = graph_iri.find("/prov/se/");
    if (marker == std::string_view::npos) return std::nullopt;
    if (graph_iri.substr(0, base.size()) != base) return std::nullopt;
    auto entity = omid::Omid::parse(graph_iri.substr(base.size(), marker - base.size()));
    if (!entity) return std::nullopt;
    std::string_view num = graph_iri.substr(marker + 9);
    int number = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), number);
    if (ec != std::errc() || p != num.data() + num.size() || number < 1) return std::nullopt;

    Snapshot s;
    s.entity = *entity;
    s.number = number;
    for (const Quad& q : quads) {
        if (q.predicate == v::prov_was_attributed_to) s.attributed_to = q.object.value;
        else if (q.predicate == v::prov_had_primary_source) s.primary_source = q.object.value;
        else if (q.predicate == v::prov_generated_at_time) {
            if (auto t = parse_time(q.object.value)) s.generated_at = *t;
        } else if (q.predicate == v::prov_invalidated_at_time) {
            s.invalidated_at = parse_time(q.object.value);
        } else if (q.predicate == v::prov_was_derived_from) {
            s.derived_from.push_back(q.object.value);
        } else if (q.predicate == v::dcterms_description) {
            s.description = q.object.value;
        } else if (q.predicate == v::oco_has_update_query) {
            s.update_query = q.object.value;
        }
    }
    return s;
}

}  // namespace ocmeta::prov
