#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocmeta/omid.hpp"
#include "ocmeta/rdf.hpp"

namespace ocmeta::prov {

// UTC seconds since the epoch; rendered as xsd:dateTime at second precision.
using Timestamp = std::int64_t;

std::string render_time(Timestamp t);
std::optional<Timestamp> parse_time(std::string_view text);

// One provenance state of an entity. Snapshot 1 records creation; later
// snapshots carry the update query that restores the previous state.
struct Snapshot {
    omid::Omid entity;
    int number = 1;
    std::vector<std::string> derived_from;  // snapshot IRIs
    std::string attributed_to;
    std::string primary_source;
    Timestamp generated_at = 0;
    std::optional<Timestamp> invalidated_at;
    std::string description;
    std::string update_query;

    std::string iri(std::string_view base) const;
};

std::string snapshot_iri(const omid::Omid& entity, int number, std::string_view base);

// Textual SPARQL UPDATE with DELETE DATA / INSERT DATA sections over
// GRAPH blocks; sections are omitted when empty.
std::string build_update_query(const rdf::QuadSet& deletions,
                               const rdf::QuadSet& insertions);

struct Delta {
    rdf::QuadSet deletions;
    rdf::QuadSet insertions;
};

struct DeltaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Delta parse_update_query(std::string_view text);

void apply_update(rdf::QuadSet& state, const Delta& delta);

// The snapshot's named graph content under the entity's provenance graph.
rdf::QuadSet snapshot_quads(const Snapshot& s, std::string_view base);

// Rebuilds a snapshot from its named-graph quads; the graph IRI carries the
// entity and the snapshot number.
std::optional<Snapshot> decode_snapshot(std::string_view graph_iri,
                                        const rdf::QuadSet& quads,
                                        std::string_view base);

}  // namespace ocmeta::prov
