#include "ocmeta/entity.hpp"

namespace ocmeta::ent {

std::string_view role_name(RoleKind k) {
    switch (k) {
        case RoleKind::author: return "author";
        case RoleKind::editor: return "editor";
        case RoleKind::publisher: return "publisher";
    }
    return "author";
}

const std::vector<RoleSlot>& CuratedEntity::roles(RoleKind k) const {
    switch (k) {
        case RoleKind::author: return authors;
        case RoleKind::editor: return editors;
        case RoleKind::publisher: return publishers;
    }
    return authors;
}

std::vector<RoleSlot>& CuratedEntity::roles(RoleKind k) {
    switch (k) {
        case RoleKind::author: return authors;
        case RoleKind::editor: return editors;
        case RoleKind::publisher: return publishers;
    }
    return authors;
}

std::vector<ArState> derive_roles(const CuratedEntity& e) {
    std::vector<ArState> out;
    for (RoleKind kind : {RoleKind::author, RoleKind::editor, RoleKind::publisher}) {
        const auto& list = e.roles(kind);
        for (std::size_t i = 0; i < list.size(); ++i) {
            ArState ar;
            ar.omid = list[i].ar;
            ar.kind = kind;
            ar.agent = list[i].agent;
            if (i + 1 < list.size()) ar.next = list[i + 1].ar;
            out.push_back(std::move(ar));
        }
    }
    return out;
}

}  // namespace ocmeta::ent
