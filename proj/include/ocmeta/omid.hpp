#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocmeta/identifier.hpp"

namespace ocmeta::omid {

enum class EntityKind { br, ra, ar, re, id };

std::string_view kind_abbrev(EntityKind k);
std::optional<EntityKind> kind_from(std::string_view abbrev);

// Identity is the concatenated digit string; the prefix/sequence split is
// only meaningful relative to a configured supplier prefix.
struct Omid {
    EntityKind kind = EntityKind::br;
    std::string digits;

    static Omid make(EntityKind kind, std::string_view prefix, std::uint64_t sequence);

    // "br/0601"
    std::string str() const;
    std::string iri(std::string_view base) const;
    static std::optional<Omid> parse(std::string_view text);
    static std::optional<Omid> from_iri(std::string_view iri, std::string_view base);

    friend bool operator==(const Omid&, const Omid&) = default;
    // Numeric order within one supplier prefix: shorter digit strings first.
    friend auto operator<=>(const Omid& a, const Omid& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.digits.size() <=> b.digits.size(); c != 0) return c;
        return a.digits <=> b.digits;
    }
};

// Supplier prefix grammar: "06", optionally digits 1-9, closing "0".
bool validate_prefix(std::string_view text);

struct MintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sequential per-(kind, prefix) counters, one file each, bumped and
// persisted (write-temp-then-rename) before the OMID is handed out.
class Minter {
  public:
    Minter(std::filesystem::path counter_dir, std::string supplier_prefix);

    Omid mint(EntityKind kind);
    std::uint64_t next_sequence(EntityKind kind) const;
    const std::string& prefix() const { return prefix_; }

  private:
    std::filesystem::path dir_;
    std::string prefix_;
    mutable std::map<EntityKind, std::uint64_t> cache_;
    std::filesystem::path counter_file(EntityKind kind) const;
};

struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// External id -> OMID bindings plus the merge chain mapping absorbed OMIDs
// to their survivors. Bindings are scoped per entity kind.
class ResolutionIndex {
  public:
    void register_entity(const Omid& omid);
    bool is_live(const Omid& omid) const;
    // Live entity, or one reachable through the merge chain.
    bool knows(const Omid& omid) const;

    void bind(EntityKind kind, const id::ExternalId& eid, const Omid& omid);
    std::optional<Omid> binding(EntityKind kind, const id::ExternalId& eid) const;
    // Binding chased through the merge chain to the surviving entity.
    std::optional<Omid> resolve(EntityKind kind, const id::ExternalId& eid) const;
    std::optional<Omid> chase(const Omid& omid) const;

    // Rejects self-merges and cycles.
    void add_merge(const Omid& absorbed, const Omid& surviving);
    const std::map<std::string, std::string>& merge_chain() const { return chain_; }

    std::vector<Omid> live_entities(EntityKind kind) const;

    void save(const std::filesystem::path& ids_csv,
              const std::filesystem::path& chain_csv) const;
    void load(const std::filesystem::path& ids_csv,
              const std::filesystem::path& chain_csv);

  private:
    // key: "<kind>|scheme:value" -> omid string
    std::map<std::string, std::string> live_bindings_;
    std::map<std::string, std::string> chain_;  // absorbed -> survivor
    std::set<std::string> live_entities_;
};

// Distinct surviving OMIDs the given ids resolve to.
std::vector<Omid> resolve_all(const ResolutionIndex& index, EntityKind kind,
                              const std::vector<id::ExternalId>& ids);

}  // namespace ocmeta::omid
