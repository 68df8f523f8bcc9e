#include "ocmeta/rdf.hpp"

#include <cstdio>

namespace ocmeta::rdf {

namespace {

void escape_into(std::string& out, std::string_view v) {
    for (unsigned char c : v) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
}

std::string unescape(std::string_view v) {
    std::string out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != '\\') {
            out.push_back(v[i]);
            continue;
        }
        if (i + 1 >= v.size()) throw NQuadsError("dangling escape");
        char c = v[++i];
        switch (c) {
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case 'u': {
                if (i + 4 >= v.size()) throw NQuadsError("bad \\u escape");
                unsigned cp = 0;
                for (int k = 1; k <= 4; ++k) {
                    char h = v[i + k];
                    cp <<= 4;
                    if (h >= '0' && h <= '9') cp |= h - '0';
                    else if (h >= 'a' && h <= 'f') cp |= h - 'a' + 10;
                    else if (h >= 'A' && h <= 'F') cp |= h - 'A' + 10;
                    else throw NQuadsError("bad \\u escape");
                }
                i += 4;
                // Our writer only escapes C0 controls this way.
                if (cp < 0x80) {
                    out.push_back(static_cast<char>(cp));
                } else if (cp < 0x800) {
                    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                } else {
                    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
                    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                }
                break;
            }
            default:
                throw NQuadsError("unknown escape");
        }
    }
    return out;
}

void skip_spaces(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

}  // namespace

std::string term_to_string(const Term& t) {
    std::string out;
    if (t.kind == TermKind::iri) {
        out.push_back('<');
        out += t.value;
        out.push_back('>');
        return out;
    }
    out.push_back('"');
    escape_into(out, t.value);
    out.push_back('"');
    if (!t.datatype.empty()) {
        out += "^^<";
        out += t.datatype;
        out.push_back('>');
    }
    return out;
}

Term parse_term(std::string_view line, std::size_t& pos) {
    skip_spaces(line, pos);
    if (pos >= line.size()) throw NQuadsError("expected term");
    if (line[pos] == '<') {
        auto end = line.find('>', pos);
        if (end == std::string_view::npos) throw NQuadsError("unterminated IRI");
        Term t = Term::iri(std::string(line.substr(pos + 1, end - pos - 1)));
        pos = end + 1;
        skip_spaces(line, pos);
        return t;
    }
    if (line[pos] == '"') {
        std::size_t i = pos + 1;
        while (i < line.size()) {
            if (line[i] == '\\') {
                i += 2;
                continue;
            }
            if (line[i] == '"') break;
            ++i;
        }
        if (i >= line.size()) throw NQuadsError("unterminated literal");
        std::string value = unescape(line.substr(pos + 1, i - pos - 1));
        pos = i + 1;
        std::string datatype;
        if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^') {
            pos += 2;
            if (pos >= line.size() || line[pos] != '<') throw NQuadsError("expected datatype IRI");
            auto end = line.find('>', pos);
            if (end == std::string_view::npos) throw NQuadsError("unterminated datatype IRI");
            datatype = std::string(line.substr(pos + 1, end - pos - 1));
            pos = end + 1;
        }
        skip_spaces(line, pos);
        return Term::literal(std::move(value), std::move(datatype));
    }
    throw NQuadsError("unsupported term");
}

std::string quad_to_line(const Quad& q) {
    std::string out;
    out += term_to_string(Term::iri(q.subject));
    out.push_back(' ');
    out += term_to_string(Term::iri(q.predicate));
    out.push_back(' ');
    out += term_to_string(q.object);
    out.push_back(' ');
    out += term_to_string(Term::iri(q.graph));
    out += " .";
    return out;
}

std::string to_nquads(const QuadSet& quads) {
    std::string out;
    for (const Quad& q : quads) {
        out += quad_to_line(q);
        out.push_back('\n');
    }
    return out;
}

QuadSet parse_nquads(std::string_view bytes) {
    QuadSet quads;
    std::size_t start = 0;
    while (start < bytes.size()) {
        auto end = bytes.find('\n', start);
        if (end == std::string_view::npos) end = bytes.size();
        std::string_view line = bytes.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t pos = 0;
        skip_spaces(line, pos);
        if (pos >= line.size() || line[pos] == '#') continue;

        Term s = parse_term(line, pos);
        Term p = parse_term(line, pos);
        Term o = parse_term(line, pos);
        Term g = parse_term(line, pos);
        if (!s.is_iri() || !p.is_iri() || !g.is_iri()) throw NQuadsError("IRI expected");
        if (pos >= line.size() || line[pos] != '.') throw NQuadsError("missing terminator");
        quads.insert(Quad(std::move(s.value), std::move(p.value), std::move(o),
                          std::move(g.value)));
    }
    return quads;
}

}  // namespace ocmeta::rdf
