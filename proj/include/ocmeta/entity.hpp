#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocmeta/identifier.hpp"
#include "ocmeta/normalize.hpp"
#include "ocmeta/omid.hpp"

namespace ocmeta::ent {

using omid::EntityKind;
using omid::Omid;

enum class RoleKind { author, editor, publisher };

std::string_view role_name(RoleKind k);

// An external identifier together with its minted id-entity.
struct IdSlot {
    id::ExternalId eid;
    Omid omid;
};

// Responsible agent: a person (family/given) or an organization (name).
struct AgentRecord {
    Omid omid;
    std::string family_name;
    std::string given_name;
    std::string name;
    bool is_organization = false;
    std::vector<IdSlot> ids;
};

// One reified role: the ar entity tying a bibliographic resource to an
// agent; order lives in the containing list.
struct RoleSlot {
    Omid ar;
    Omid agent;
};

// Page-range manifestation (re entity).
struct Embodiment {
    Omid omid;
    std::string first_page;
    std::string last_page;
};

// A curated bibliographic resource. Venues, volumes and issues are
// bibliographic resources too; volumes/issues carry their value in `seq`
// and chain upwards through `part_of`.
struct CuratedEntity {
    Omid omid;
    std::vector<IdSlot> ids;
    std::string title;
    std::optional<norm::NormalizedDate> date;
    std::string type_tag;
    std::vector<RoleSlot> authors;
    std::vector<RoleSlot> editors;
    std::vector<RoleSlot> publishers;
    std::optional<Embodiment> pages;
    std::optional<Omid> part_of;
    std::string seq;

    const std::vector<RoleSlot>& roles(RoleKind k) const;
    std::vector<RoleSlot>& roles(RoleKind k);
};

// Reified role state as stored: the hasNext link makes the in-list order
// explicit in the graph.
struct ArState {
    Omid omid;
    RoleKind kind = RoleKind::author;
    Omid agent;
    std::optional<Omid> next;
};

// Role nodes implied by a curated entity's ordered role lists.
std::vector<ArState> derive_roles(const CuratedEntity& e);

}  // namespace ocmeta::ent
