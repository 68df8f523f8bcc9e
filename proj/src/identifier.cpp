#include "ocmeta/identifier.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ocmeta/unicode.hpp"

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
// Plain-HTTP client is enough for the registry endpoints we query.
#endif
#include "httplib.h"

namespace ocmeta::id {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

std::string strip_url_prefix(std::string s, std::initializer_list<std::string_view> hosts) {
    std::string low = ascii_lower(s);
    for (std::string_view prefix : {"https://", "http://"}) {
        if (low.rfind(prefix, 0) == 0) {
            s = s.substr(prefix.size());
            low = low.substr(prefix.size());
            break;
        }
    }
    if (low.rfind("www.", 0) == 0) {
        s = s.substr(4);
        low = low.substr(4);
    }
    for (std::string_view host : hosts) {
        if (low.rfind(host, 0) == 0) {
            s = s.substr(host.size());
            break;
        }
    }
    return s;
}

// Keeps digits and X/x (uppercased); drops hyphens, dots and spaces.
std::string strip_separators(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '-' || c == ' ' || c == '.') continue;
        out.push_back(c == 'x' ? 'X' : c);
    }
    return out;
}

int digit_or_x(char c) {
    if (c == 'X') return 10;
    if (c >= '0' && c <= '9') return c - '0';
    return -1;
}

bool isbn10_valid(std::string_view d) {
    int sum = 0;
    for (int i = 0; i < 10; ++i) {
        int v = digit_or_x(d[i]);
        if (v < 0 || (v == 10 && i != 9)) return false;
        sum += v * (10 - i);
    }
    return sum % 11 == 0;
}

bool isbn13_valid(std::string_view d) {
    int sum = 0;
    for (int i = 0; i < 13; ++i) {
        int v = digit_or_x(d[i]);
        if (v < 0 || v == 10) return false;
        sum += v * (i % 2 == 0 ? 1 : 3);
    }
    return sum % 10 == 0;
}

}  // namespace

Scheme scheme_from(std::string_view name) {
    std::string low = ascii_lower(name);
    if (low == "doi") return Scheme::doi;
    if (low == "pmid") return Scheme::pmid;
    if (low == "issn") return Scheme::issn;
    if (low == "isbn") return Scheme::isbn;
    if (low == "orcid") return Scheme::orcid;
    if (low == "omid") return Scheme::omid;
    return Scheme::other;
}

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::doi: return "doi";
        case Scheme::pmid: return "pmid";
        case Scheme::issn: return "issn";
        case Scheme::isbn: return "isbn";
        case Scheme::orcid: return "orcid";
        case Scheme::omid: return "omid";
        case Scheme::other: return "other";
    }
    return "other";
}

ExternalId::ExternalId(Scheme s, std::string v)
    : scheme(s), scheme_name_(scheme_name(s)), value(std::move(v)) {}

ExternalId::ExternalId(std::string scheme_text, std::string v)
    : scheme(scheme_from(scheme_text)), scheme_name_(ascii_lower(scheme_text)),
      value(std::move(v)) {}

std::string normalize_id(Scheme scheme, std::string_view raw) {
    std::string v = trim(raw);
    if (v.empty()) throw NormalizeError("empty identifier value");
    switch (scheme) {
        case Scheme::doi: {
            v = strip_url_prefix(v, {"doi.org/", "dx.doi.org/"});
            if (ascii_lower(v).rfind("doi:", 0) == 0) v = v.substr(4);
            v = ascii_lower(trim(v));
            break;
        }
        case Scheme::issn: {
            std::string s = strip_separators(v);
            if (s.size() == 8) {
                v = s.substr(0, 4) + "-" + s.substr(4);
            } else {
                v = s;
            }
            break;
        }
        case Scheme::isbn:
            v = strip_separators(v);
            break;
        case Scheme::orcid: {
            v = strip_url_prefix(v, {"orcid.org/"});
            std::string s = strip_separators(v);
            if (s.size() == 16) {
                v = s.substr(0, 4) + "-" + s.substr(4, 4) + "-" + s.substr(8, 4) + "-" +
                    s.substr(12, 4);
            } else {
                v = s;
            }
            break;
        }
        case Scheme::pmid: {
            std::string s = trim(v);
            std::size_t nz = s.find_first_not_of('0');
            if (all_digits(s) && nz != std::string::npos) s = s.substr(nz);
            v = s;
            break;
        }
        case Scheme::omid: {
            v = ascii_lower(v);
            if (v.rfind("omid:", 0) == 0) v = v.substr(5);
            break;
        }
        case Scheme::other:
            break;
    }
    if (v.empty()) throw NormalizeError("identifier value empty after normalization");
    return v;
}

bool validate_syntax(Scheme scheme, std::string_view canonical) {
    switch (scheme) {
        case Scheme::doi: {
            // "10." + at least four digits + "/" + non-empty suffix.
            if (canonical.rfind("10.", 0) != 0) return false;
            std::size_t slash = canonical.find('/');
            if (slash == std::string_view::npos || slash + 1 >= canonical.size()) return false;
            std::string_view registrant = canonical.substr(3, slash - 3);
            if (registrant.size() < 4 || !all_digits(registrant)) return false;
            return canonical.find(' ') == std::string_view::npos;
        }
        case Scheme::pmid:
            return all_digits(canonical);
        case Scheme::issn: {
            std::string d = strip_separators(canonical);
            if (d.size() != 8) return false;
            int sum = 0;
            for (int i = 0; i < 8; ++i) {
                int v = digit_or_x(d[i]);
                if (v < 0 || (v == 10 && i != 7)) return false;
                sum += v * (8 - i);
            }
            return sum % 11 == 0;
        }
        case Scheme::isbn: {
            std::string d = strip_separators(canonical);
            if (d.size() == 10) return isbn10_valid(d);
            if (d.size() == 13) return isbn13_valid(d);
            return false;
        }
        case Scheme::orcid: {
            // ISO 7064 MOD 11-2 over the 15 base digits.
            std::string d = strip_separators(canonical);
            if (d.size() != 16) return false;
            int total = 0;
            for (int i = 0; i < 15; ++i) {
                int v = digit_or_x(d[i]);
                if (v < 0 || v == 10) return false;
                total = (total + v) * 2;
            }
            int check = (12 - total % 11) % 11;
            return digit_or_x(d[15]) == check;
        }
        case Scheme::omid:
        case Scheme::other:
            return true;
    }
    return true;
}

HttpExistenceClient::HttpExistenceClient(std::string doi_template,
                                         std::string orcid_template, int timeout_seconds)
    : doi_template_(std::move(doi_template)), orcid_template_(std::move(orcid_template)),
      timeout_seconds_(timeout_seconds) {}

Existence HttpExistenceClient::lookup(Scheme scheme, const std::string& value) {
    const std::string* tmpl = nullptr;
    if (scheme == Scheme::doi) tmpl = &doi_template_;
    if (scheme == Scheme::orcid) tmpl = &orcid_template_;
    if (tmpl == nullptr || tmpl->empty()) return Existence::unknown;

    std::string url = *tmpl;
    if (auto pos = url.find("{id}"); pos != std::string::npos) {
        url.replace(pos, 4, value);
    }
    std::string rest = url;
    if (rest.rfind("http://", 0) == 0) rest = rest.substr(7);
    else if (rest.rfind("https://", 0) == 0) rest = rest.substr(8);
    auto slash = rest.find('/');
    std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : rest.substr(slash);

    for (int attempt = 0; attempt < 2; ++attempt) {
        httplib::Client client(host);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        client.set_follow_location(true);
        auto res = client.Get(path);
        if (!res) continue;
        if (res->status >= 200 && res->status < 400) return Existence::verified;
        if (res->status == 404) return Existence::not_found;
    }
    return Existence::unknown;
}

namespace {

std::string_view existence_text(Existence e) {
    switch (e) {
        case Existence::verified: return "verified";
        case Existence::not_found: return "not_found";
        case Existence::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Existence> existence_from(std::string_view t) {
    if (t == "verified") return Existence::verified;
    if (t == "not_found") return Existence::not_found;
    if (t == "unknown") return Existence::unknown;
    return std::nullopt;
}

}  // namespace

Existence ExistenceCache::get_or_fetch(Scheme scheme, const std::string& value,
                                       ExistenceClient& client) {
    std::string key = std::string(scheme_name(scheme)) + ":" + value;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
    }
    Existence e = client.lookup(scheme, value);
    std::lock_guard lock(mutex_);
    return entries_.emplace(std::move(key), e).first->second;
}

std::optional<Existence> ExistenceCache::cached(Scheme scheme, const std::string& value) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(std::string(scheme_name(scheme)) + ":" + value);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ExistenceCache::put(Scheme scheme, const std::string& value, Existence e) {
    std::lock_guard lock(mutex_);
    entries_[std::string(scheme_name(scheme)) + ":" + value] = e;
}

void ExistenceCache::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) return;
    std::lock_guard lock(mutex_);
    std::string line;
    while (std::getline(in, line)) {
        auto comma = line.rfind(',');
        if (comma == std::string::npos) continue;
        if (auto e = existence_from(std::string_view(line).substr(comma + 1))) {
            entries_[line.substr(0, comma)] = *e;
        }
    }
}

void ExistenceCache::save(const std::filesystem::path& file) const {
    std::lock_guard lock(mutex_);
    std::ostringstream out;
    for (const auto& [key, e] : entries_) {
        out << key << ',' << existence_text(e) << '\n';
    }
    std::ofstream f(file, std::ios::trunc);
    f << out.str();
}

std::size_t ExistenceCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

}  // namespace ocmeta::id
