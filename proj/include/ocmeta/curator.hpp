#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocmeta/entity.hpp"
#include "ocmeta/identifier.hpp"
#include "ocmeta/normalize.hpp"
#include "ocmeta/record.hpp"
#include "ocmeta/store.hpp"

namespace ocmeta::cur {

using ent::AgentRecord;
using ent::CuratedEntity;
using omid::EntityKind;
using omid::Omid;

// The six deduplication outcomes, numbered as enumerated by the decision
// tree: rows without an OMID take 1-3, rows carrying one take 4-6.
enum class DecisionCase {
    new_entity = 1,
    merge_single = 2,
    conflict_new = 3,
    omid_update = 4,
    omid_merge = 5,
    omid_conflict_merge = 6,
};

struct ResolutionOutcome {
    DecisionCase kase = DecisionCase::new_entity;
    std::optional<Omid> target;      // absent when a fresh OMID must be minted
    std::vector<Omid> merged_away;   // batch-local entities absorbed by case 5
};

struct DecideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resolution state the decision works against; the curator backs it with
// the store index plus the in-flight batch overlay.
class IndexView {
  public:
    virtual ~IndexView() = default;
    virtual std::optional<Omid> resolve(const id::ExternalId& eid) const = 0;
    virtual bool knows(const Omid& o) const = 0;
    virtual std::optional<Omid> chase(const Omid& o) const = 0;
    // Minted during this batch without an OMID given in the input.
    virtual bool batch_fresh(const Omid& o) const = 0;
};

// Exactly one branch fires for every input; an unknown input OMID is a hard
// error since a nonexistent entity cannot be updated.
ResolutionOutcome decide(const std::vector<id::ExternalId>& ids,
                         const std::optional<Omid>& csv_omid, const IndexView& index);

// Callbacks the entity merge needs from its surroundings.
struct MergeHooks {
    std::function<const AgentRecord*(const Omid&)> agent;
    // Reports an incoming role agent matched onto one already in the list.
    std::function<void(const Omid& incoming_agent, const Omid& kept_agent)> agent_matched;
    // Terminal venue of a container chain, for chain compatibility checks.
    std::function<std::optional<Omid>(const Omid&)> chain_terminal;
    rec::RowDiagnostics* diags = nullptr;
    std::size_t row = 0;
};

// Field-wise merge: surviving values win and gaps fill from the incoming
// entity; external ids are unioned; role order keeps the surviving list and
// appends new people at the end, matching id-less people by name.
CuratedEntity merge_entities(CuratedEntity surviving, const CuratedEntity& incoming,
                             bool surviving_is_stored, const MergeHooks& hooks);

struct CuratorConfig {
    std::string agent_iri = "https://w3id.org/oc/meta/prov/pa/1";
    std::string source_iri = "https://w3id.org/oc/meta/source/csv";
    bool offline = true;
    norm::KeywordTable keywords = norm::KeywordTable::defaults();
    std::function<prov::Timestamp()> clock;
};

struct BatchResult {
    std::vector<Omid> row_entities;  // deduplicated, first-appearance order
    rec::RowDiagnostics diagnostics;
    std::size_t quarantined = 0;
    std::size_t entities_created = 0;
    std::size_t entities_modified = 0;
};

// Runs normalization, identifier validation, deduplication and persistence
// for one batch in a single store transaction.
class Curator {
  public:
    Curator(store::QuadStore& store, id::ExistenceCache& existence_cache,
            id::ExistenceClient& existence_client, CuratorConfig config);
    ~Curator();

    BatchResult curate_batch(const std::vector<rec::InputRecord>& rows);

  private:
    struct Batch;
    class BatchIndexView;

    store::QuadStore& store_;
    id::ExistenceCache& cache_;
    id::ExistenceClient& client_;
    CuratorConfig config_;
    std::map<std::string, std::string> known_ids_;        // token -> id omid
    std::map<std::string, std::string> container_index_;  // parent|kind|value -> omid

    void build_store_indexes();

    // Batch helpers (defined in the implementation file).
    friend struct CuratorDetail;
    std::unique_ptr<Batch> batch_;
};

}  // namespace ocmeta::cur
