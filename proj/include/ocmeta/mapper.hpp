#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ocmeta/entity.hpp"
#include "ocmeta/rdf.hpp"

namespace ocmeta::map {

using ent::AgentRecord;
using ent::ArState;
using ent::CuratedEntity;
using ent::Embodiment;
using omid::EntityKind;
using omid::Omid;

// Named data graph for an entity kind, e.g. <base>br/.
std::string kind_graph(EntityKind kind, std::string_view base);
std::string entity_iri(const Omid& omid, std::string_view base);

// Type-tag to class IRI (fabio:Expression fallback).
const std::string& map_type(std::string_view tag);

// Subject quads of each entity kind. These are the per-entity states the
// provenance layer snapshots.
rdf::QuadSet map_br(const CuratedEntity& e, std::string_view base,
                    norm::Diagnostics* diags = nullptr);
rdf::QuadSet map_re(const Embodiment& re, std::string_view base);
rdf::QuadSet map_ar(const ArState& ar, std::string_view base);
rdf::QuadSet map_ra(const AgentRecord& ra, std::string_view base);
rdf::QuadSet map_id_entity(const Omid& id_omid, const id::ExternalId& eid,
                           std::string_view base);

// The full quad cluster of one curated entity: the br itself, its roles,
// embodiment, the agents behind the roles and every id node involved.
rdf::QuadSet map_entity(const CuratedEntity& e,
                        const std::map<std::string, AgentRecord>& agents_by_omid,
                        std::string_view base, norm::Diagnostics* diags = nullptr);

// Read access the decoder needs; implemented by the quad store.
class QuadSource {
  public:
    virtual ~QuadSource() = default;
    virtual rdf::QuadSet subject_quads(const std::string& graph,
                                       const std::string& subject) const = 0;
};

std::optional<CuratedEntity> decode_br(const QuadSource& source, const Omid& omid,
                                       std::string_view base);
std::optional<AgentRecord> decode_ra(const QuadSource& source, const Omid& omid,
                                     std::string_view base);
std::optional<ArState> decode_ar(const QuadSource& source, const Omid& omid,
                                 std::string_view base);
std::optional<Embodiment> decode_re(const QuadSource& source, const Omid& omid,
                                    std::string_view base);
std::optional<id::ExternalId> decode_id_entity(const QuadSource& source, const Omid& omid,
                                               std::string_view base);

}  // namespace ocmeta::map
