#include "ocmeta/omid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

namespace ocmeta::omid {

namespace fs = std::filesystem;

std::string_view kind_abbrev(EntityKind k) {
    switch (k) {
        case EntityKind::br: return "br";
        case EntityKind::ra: return "ra";
        case EntityKind::ar: return "ar";
        case EntityKind::re: return "re";
        case EntityKind::id: return "id";
    }
    return "br";
}

std::optional<EntityKind> kind_from(std::string_view abbrev) {
    if (abbrev == "br") return EntityKind::br;
    if (abbrev == "ra") return EntityKind::ra;
    if (abbrev == "ar") return EntityKind::ar;
    if (abbrev == "re") return EntityKind::re;
    if (abbrev == "id") return EntityKind::id;
    return std::nullopt;
}

Omid Omid::make(EntityKind kind, std::string_view prefix, std::uint64_t sequence) {
    return Omid{kind, std::string(prefix) + std::to_string(sequence)};
}

std::string Omid::str() const {
    return std::string(kind_abbrev(kind)) + "/" + digits;
}

std::string Omid::iri(std::string_view base) const {
    return std::string(base) + str();
}

std::optional<Omid> Omid::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    auto kind = kind_from(text.substr(0, slash));
    if (!kind) return std::nullopt;
    std::string_view digits = text.substr(slash + 1);
    if (digits.size() < 4 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
        return std::nullopt;
    }
    // At least one valid (prefix, sequence) reading must exist.
    for (std::size_t plen = 3; plen + 1 <= digits.size(); ++plen) {
        std::string_view prefix = digits.substr(0, plen);
        if (!validate_prefix(prefix)) continue;
        std::string_view seq = digits.substr(plen);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(seq.data(), seq.data() + seq.size(), value);
        if (ec == std::errc() && ptr == seq.data() + seq.size() && value > 0) {
            return Omid{*kind, std::string(digits)};
        }
    }
    return std::nullopt;
}

std::optional<Omid> Omid::from_iri(std::string_view iri, std::string_view base) {
    if (iri.substr(0, base.size()) != base) return std::nullopt;
    return parse(iri.substr(base.size()));
}

bool validate_prefix(std::string_view text) {
    if (text.size() < 3) return false;
    if (text[0] != '0' || text[1] != '6' || text.back() != '0') return false;
    for (std::size_t i = 2; i + 1 < text.size(); ++i) {
        if (text[i] < '1' || text[i] > '9') return false;
    }
    return true;
}

Minter::Minter(fs::path counter_dir, std::string supplier_prefix)
    : dir_(std::move(counter_dir)), prefix_(std::move(supplier_prefix)) {
    if (!validate_prefix(prefix_)) {
        throw MintError("invalid supplier prefix: " + prefix_);
    }
    fs::create_directories(dir_);
}

fs::path Minter::counter_file(EntityKind kind) const {
    return dir_ / (std::string(kind_abbrev(kind)) + "_" + prefix_ + ".count");
}

std::uint64_t Minter::next_sequence(EntityKind kind) const {
    if (auto it = cache_.find(kind); it != cache_.end()) return it->second + 1;
    std::ifstream in(counter_file(kind));
    std::uint64_t last = 0;
    if (in) in >> last;
    cache_[kind] = last;
    return last + 1;
}

Omid Minter::mint(EntityKind kind) {
    std::uint64_t next = next_sequence(kind);
    fs::path file = counter_file(kind);
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << next << '\n';
        out.flush();
        if (!out) throw MintError("cannot persist counter " + file.string());
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
    if (ec) throw MintError("cannot persist counter " + file.string());
    cache_[kind] = next;
    return Omid::make(kind, prefix_, next);
}

namespace {

std::string binding_key(EntityKind kind, const id::ExternalId& eid) {
    return std::string(kind_abbrev(kind)) + "|" + eid.name() + ":" + eid.value;
}

}  // namespace

void ResolutionIndex::register_entity(const Omid& o) { live_entities_.insert(o.str()); }

bool ResolutionIndex::is_live(const Omid& o) const {
    return live_entities_.count(o.str()) > 0 && chain_.count(o.str()) == 0;
}

bool ResolutionIndex::knows(const Omid& o) const {
    return live_entities_.count(o.str()) > 0 || chain_.count(o.str()) > 0;
}

void ResolutionIndex::bind(EntityKind kind, const id::ExternalId& eid, const Omid& o) {
    live_bindings_[binding_key(kind, eid)] = o.str();
}

std::optional<Omid> ResolutionIndex::binding(EntityKind kind,
                                             const id::ExternalId& eid) const {
    auto it = live_bindings_.find(binding_key(kind, eid));
    if (it == live_bindings_.end()) return std::nullopt;
    return Omid::parse(it->second);
}

std::optional<Omid> ResolutionIndex::chase(const Omid& o) const {
    if (!knows(o)) return std::nullopt;
    std::string current = o.str();
    // The chain is acyclic by construction; bounded walk as a backstop.
    for (std::size_t steps = 0; steps <= chain_.size(); ++steps) {
        auto it = chain_.find(current);
        if (it == chain_.end()) {
            return Omid::parse(current);
        }
        current = it->second;
    }
    throw IndexError("merge chain cycle at " + current);
}

std::optional<Omid> ResolutionIndex::resolve(EntityKind kind,
                                             const id::ExternalId& eid) const {
    auto bound = binding(kind, eid);
    if (!bound) return std::nullopt;
    return chase(*bound);
}

void ResolutionIndex::add_merge(const Omid& absorbed, const Omid& surviving) {
    if (absorbed == surviving) throw IndexError("entity cannot merge into itself");
    std::string from = absorbed.str();
    std::string to = surviving.str();
    if (chain_.count(from)) throw IndexError(from + " already merged away");
    // Walk from the survivor: reaching `absorbed` again would close a cycle.
    std::string current = to;
    for (std::size_t steps = 0; steps <= chain_.size(); ++steps) {
        if (current == from) throw IndexError("merge would create a cycle: " + from);
        auto it = chain_.find(current);
        if (it == chain_.end()) break;
        current = it->second;
    }
    chain_[from] = to;
}

std::vector<Omid> ResolutionIndex::live_entities(EntityKind kind) const {
    std::vector<Omid> out;
    for (const std::string& s : live_entities_) {
        auto o = Omid::parse(s);
        if (o && o->kind == kind && chain_.count(s) == 0) out.push_back(*o);
    }
    return out;
}

void ResolutionIndex::save(const fs::path& ids_csv, const fs::path& chain_csv) const {
    {
        std::ofstream out(ids_csv, std::ios::trunc);
        for (const auto& [key, omid] : live_bindings_) {
            // key is "<kind>|token"; the CSV keeps the token form.
            out << key.substr(key.find('|') + 1) << ',' << omid << '\n';
        }
    }
    {
        std::ofstream out(chain_csv, std::ios::trunc);
        for (const auto& [from, to] : chain_) out << from << ',' << to << '\n';
    }
}

void ResolutionIndex::load(const fs::path& ids_csv, const fs::path& chain_csv) {
    live_bindings_.clear();
    chain_.clear();
    std::ifstream ids(ids_csv);
    std::string line;
    while (std::getline(ids, line)) {
        auto comma = line.rfind(',');
        if (comma == std::string::npos) continue;
        std::string token = line.substr(0, comma);
        std::string omid_text = line.substr(comma + 1);
        auto o = Omid::parse(omid_text);
        auto colon = token.find(':');
        if (!o || colon == std::string::npos) continue;
        id::ExternalId eid(token.substr(0, colon), token.substr(colon + 1));
        live_bindings_[binding_key(o->kind, eid)] = omid_text;
    }
    std::ifstream chain(chain_csv);
    while (std::getline(chain, line)) {
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        chain_[line.substr(0, comma)] = line.substr(comma + 1);
    }
}

std::vector<Omid> resolve_all(const ResolutionIndex& index, EntityKind kind,
                              const std::vector<id::ExternalId>& ids) {
    std::vector<Omid> out;
    for (const id::ExternalId& eid : ids) {
        auto o = index.resolve(kind, eid);
        if (o && std::find(out.begin(), out.end(), *o) == out.end()) out.push_back(*o);
    }
    return out;
}

}  // namespace ocmeta::omid
