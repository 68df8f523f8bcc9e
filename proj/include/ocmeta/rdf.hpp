#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ocmeta::rdf {

enum class TermKind { iri, literal };

struct Term {
    TermKind kind = TermKind::iri;
    std::string value;
    std::string datatype;  // literal only; empty means plain xsd:string

    static Term iri(std::string v) { return {TermKind::iri, std::move(v), {}}; }
    static Term literal(std::string v, std::string dt = {}) {
        return {TermKind::literal, std::move(v), std::move(dt)};
    }
    bool is_iri() const { return kind == TermKind::iri; }
    auto operator<=>(const Term&) const = default;
};

// Field order gives the canonical (graph, subject, predicate, object) sort.
struct Quad {
    std::string graph;
    std::string subject;
    std::string predicate;
    Term object;

    Quad() = default;
    Quad(std::string s, std::string p, Term o, std::string g)
        : graph(std::move(g)), subject(std::move(s)), predicate(std::move(p)),
          object(std::move(o)) {}
    auto operator<=>(const Quad&) const = default;
};

using QuadSet = std::set<Quad>;

struct NQuadsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string term_to_string(const Term& t);
std::string quad_to_line(const Quad& q);  // without trailing newline

// One quad per line in canonical order; deterministic for equal sets.
std::string to_nquads(const QuadSet& quads);

QuadSet parse_nquads(std::string_view bytes);

// Parses "<iri>" or a literal with optional ^^<datatype>; advances pos past
// the term and any following spaces. Shared with the update-query parser.
Term parse_term(std::string_view line, std::size_t& pos);

}  // namespace ocmeta::rdf
