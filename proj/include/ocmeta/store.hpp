#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ocmeta/mapper.hpp"
#include "ocmeta/omid.hpp"
#include "ocmeta/provenance.hpp"
#include "ocmeta/rdf.hpp"

namespace ocmeta::store {

using omid::EntityKind;
using omid::Omid;
using prov::Snapshot;
using prov::Timestamp;

struct StoreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::filesystem::path dir;
    std::string base_iri = "https://w3id.org/oc/meta/";
    std::string supplier_prefix = "060";
};

// Quad store with named data graphs per entity kind and one named graph per
// provenance snapshot. Durable layout under the store directory:
//   data.nq, prov.nq    compacted base files
//   wal.log             journal of quad changes, replayed up to the last
//                       commit marker
//   ids.csv             resolution index (scheme:value,omid)
//   merge_chain.csv     absorbed omid -> surviving omid
//   counters/           one sequence file per (kind, prefix)
class QuadStore : public map::QuadSource {
  public:
    explicit QuadStore(Options options);

    const std::string& base() const { return options_.base_iri; }
    omid::Minter& minter() { return *minter_; }
    omid::ResolutionIndex& index() { return index_; }
    const omid::ResolutionIndex& index() const { return index_; }

    rdf::QuadSet subject_quads(const std::string& graph,
                               const std::string& subject) const override;
    rdf::QuadSet entity_state(const Omid& entity) const;
    bool has_entity(const Omid& entity) const;
    std::vector<Omid> entities(EntityKind kind) const;
    const rdf::QuadSet& data() const { return data_; }
    const rdf::QuadSet& prov() const { return prov_; }

    Snapshot record_creation(const Omid& entity, const rdf::QuadSet& state,
                             const std::string& agent, const std::string& source,
                             Timestamp t, const std::string& description = {});
    std::optional<Snapshot> record_modification(const Omid& entity,
                                                const rdf::QuadSet& new_state,
                                                const std::string& agent,
                                                const std::string& source, Timestamp t,
                                                const std::string& description = {});
    Snapshot record_merge(const Omid& survivor, const rdf::QuadSet& new_state,
                          const std::vector<Omid>& absorbed, const std::string& agent,
                          const std::string& source, Timestamp t,
                          const std::string& description = {});

    const std::vector<Snapshot>& snapshots(const Omid& entity) const;
    rdf::QuadSet reconstruct_at(const Omid& entity, Timestamp t) const;

    // Durably marks everything recorded so far; uncommitted journal tails
    // are dropped on reload.
    void commit();
    // Rewrites the base files and truncates the journal.
    void compact();
    void dump(const std::filesystem::path& data_nq,
              const std::filesystem::path& prov_nq) const;

    std::size_t snapshot_count() const;

  private:
    void load();
    void wal_line(char tag, const rdf::Quad& q);
    void add_data(const rdf::Quad& q);
    void remove_data(const rdf::Quad& q);
    void add_prov(const rdf::Quad& q);
    void index_subject(const rdf::Quad& q);
    void unindex_subject(const rdf::Quad& q);
    Snapshot& append_snapshot(Snapshot s);
    void invalidate_last(const Omid& entity, Timestamp t);
    void replace_entity_state(const Omid& entity, const rdf::QuadSet& old_state,
                              const rdf::QuadSet& new_state);
    void check_state_shape(const Omid& entity, const rdf::QuadSet& state) const;

    Options options_;
    rdf::QuadSet data_;
    rdf::QuadSet prov_;
    std::map<std::string, rdf::QuadSet> by_subject_;  // "graph\nsubject" key
    std::map<std::string, std::vector<Snapshot>> snapshots_;
    omid::ResolutionIndex index_;
    std::unique_ptr<omid::Minter> minter_;
    std::ofstream wal_;
};

// Exclusive store lock for writer commands; throws when already held.
class StoreLock {
  public:
    explicit StoreLock(const std::filesystem::path& store_dir);
    ~StoreLock();
    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

  private:
    std::filesystem::path file_;
};

}  // namespace ocmeta::store
