#include "ocmeta/store.hpp"

#include <algorithm>
#include <fcntl.h>
#include <sstream>
#include <unistd.h>

#include "ocmeta/vocab.hpp"

namespace ocmeta::store {

namespace fs = std::filesystem;
namespace v = ocmeta::vocab;
using rdf::Quad;
using rdf::QuadSet;

namespace {

std::string subject_key(const std::string& graph, const std::string& subject) {
    return graph + "\n" + subject;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const fs::path& p, const std::string& bytes) {
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << bytes;
        out.flush();
        if (!out) throw StoreError("cannot write " + p.string());
    }
    fs::rename(tmp, p);
}

}  // namespace

QuadStore::QuadStore(Options options) : options_(std::move(options)) {
    fs::create_directories(options_.dir);
    minter_ = std::make_unique<omid::Minter>(options_.dir / "counters",
                                             options_.supplier_prefix);
    load();
    wal_.open(options_.dir / "wal.log", std::ios::app);
    if (!wal_) throw StoreError("cannot open journal in " + options_.dir.string());
}

void QuadStore::load() {
    data_.clear();
    prov_.clear();
    by_subject_.clear();
    snapshots_.clear();

    for (const Quad& q : rdf::parse_nquads(read_file(options_.dir / "data.nq"))) {
        data_.insert(q);
    }
    for (const Quad& q : rdf::parse_nquads(read_file(options_.dir / "prov.nq"))) {
        prov_.insert(q);
    }

    // Journal replay, committed segments only. An uncommitted tail is
    // dropped from the file as well, so a later commit cannot revive it.
    std::string wal = read_file(options_.dir / "wal.log");
    struct Pending {
        char tag;
        Quad quad;
    };
    std::vector<Pending> pending;
    std::size_t start = 0;
    std::size_t committed_bytes = 0;
    while (start < wal.size()) {
        auto end = wal.find('\n', start);
        if (end == std::string::npos) break;  // incomplete tail line
        std::string_view line(wal.data() + start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        if (line[0] == 'C') {
            for (Pending& p : pending) {
                if (p.tag == '+') data_.insert(p.quad);
                else if (p.tag == '-') data_.erase(p.quad);
                else if (p.tag == 'P') prov_.insert(p.quad);
            }
            pending.clear();
            committed_bytes = start;
            continue;
        }
        if (line.size() < 3) continue;
        char tag = line[0] == 'P' ? 'P' : line[1] == '+' ? '+' : '-';
        std::string_view quad_text = line.substr(line.find(' ') + 1);
        QuadSet parsed = rdf::parse_nquads(quad_text);
        if (parsed.size() == 1) pending.push_back({tag, *parsed.begin()});
    }
    if (committed_bytes < wal.size()) {
        write_file_atomic(options_.dir / "wal.log", wal.substr(0, committed_bytes));
    }

    for (const Quad& q : data_) index_subject(q);

    // Snapshot metadata lives in the provenance graphs.
    std::map<std::string, QuadSet> by_graph;
    for (const Quad& q : prov_) by_graph[q.graph].insert(q);
    for (const auto& [graph, quads] : by_graph) {
        auto s = prov::decode_snapshot(graph, quads, options_.base_iri);
        if (s) snapshots_[s->entity.str()].push_back(*s);
    }
    for (auto& [entity, snaps] : snapshots_) {
        std::sort(snaps.begin(), snaps.end(),
                  [](const Snapshot& a, const Snapshot& b) { return a.number < b.number; });
    }

    index_.load(options_.dir / "ids.csv", options_.dir / "merge_chain.csv");
    for (const auto& [entity, snaps] : snapshots_) {
        if (auto o = Omid::parse(entity)) index_.register_entity(*o);
    }
}

void QuadStore::wal_line(char tag, const Quad& q) {
    if (tag == 'P') wal_ << "P+ ";
    else if (tag == '+') wal_ << "D+ ";
    else wal_ << "D- ";
    wal_ << rdf::quad_to_line(q) << '\n';
}

void QuadStore::index_subject(const Quad& q) {
    by_subject_[subject_key(q.graph, q.subject)].insert(q);
}

void QuadStore::unindex_subject(const Quad& q) {
    auto it = by_subject_.find(subject_key(q.graph, q.subject));
    if (it == by_subject_.end()) return;
    it->second.erase(q);
    if (it->second.empty()) by_subject_.erase(it);
}

void QuadStore::add_data(const Quad& q) {
    if (!data_.insert(q).second) return;
    index_subject(q);
    wal_line('+', q);
}

void QuadStore::remove_data(const Quad& q) {
    if (data_.erase(q) == 0) return;
    unindex_subject(q);
    wal_line('-', q);
}

void QuadStore::add_prov(const Quad& q) {
    if (!prov_.insert(q).second) return;
    wal_line('P', q);
}

QuadSet QuadStore::subject_quads(const std::string& graph,
                                 const std::string& subject) const {
    auto it = by_subject_.find(subject_key(graph, subject));
    if (it == by_subject_.end()) return {};
    return it->second;
}

QuadSet QuadStore::entity_state(const Omid& entity) const {
    return subject_quads(map::kind_graph(entity.kind, options_.base_iri),
                         entity.iri(options_.base_iri));
}

bool QuadStore::has_entity(const Omid& entity) const {
    if (!entity_state(entity).empty()) return true;
    return snapshots_.count(entity.str()) > 0;
}

std::vector<Omid> QuadStore::entities(EntityKind kind) const {
    std::vector<Omid> out;
    std::string graph = map::kind_graph(kind, options_.base_iri);
    std::string prefix = graph + "\n";
    for (auto it = by_subject_.lower_bound(prefix); it != by_subject_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        if (it->second.empty()) continue;
        std::string subject = it->first.substr(prefix.size());
        if (auto o = Omid::from_iri(subject, options_.base_iri)) out.push_back(*o);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void QuadStore::check_state_shape(const Omid& entity, const QuadSet& state) const {
    std::string iri = entity.iri(options_.base_iri);
    std::string graph = map::kind_graph(entity.kind, options_.base_iri);
    for (const Quad& q : state) {
        if (q.subject != iri || q.graph != graph) {
            throw StoreError("state quad outside entity " + entity.str() + ": " +
                             rdf::quad_to_line(q));
        }
    }
}

Snapshot& QuadStore::append_snapshot(Snapshot s) {
    for (const Quad& q : prov::snapshot_quads(s, options_.base_iri)) add_prov(q);
    auto& snaps = snapshots_[s.entity.str()];
    snaps.push_back(std::move(s));
    return snaps.back();
}

void QuadStore::invalidate_last(const Omid& entity, Timestamp t) {
    auto it = snapshots_.find(entity.str());
    if (it == snapshots_.end() || it->second.empty()) return;
    Snapshot& last = it->second.back();
    last.invalidated_at = t;
    add_prov(Quad(last.iri(options_.base_iri), v::prov_invalidated_at_time,
                  rdf::Term::literal(prov::render_time(t), v::xsd_datetime),
                  last.iri(options_.base_iri)));
}

void QuadStore::replace_entity_state(const Omid& entity, const QuadSet& old_state,
                                     const QuadSet& new_state) {
    for (const Quad& q : old_state) {
        if (!new_state.count(q)) remove_data(q);
    }
    for (const Quad& q : new_state) {
        if (!old_state.count(q)) add_data(q);
    }
    (void)entity;
}

Snapshot QuadStore::record_creation(const Omid& entity, const QuadSet& state,
                                    const std::string& agent, const std::string& source,
                                    Timestamp t, const std::string& description) {
    if (has_entity(entity)) {
        throw StoreError("entity already exists: " + entity.str());
    }
    if (state.empty()) throw StoreError("creation state must not be empty");
    check_state_shape(entity, state);
    for (const Quad& q : state) add_data(q);
    Snapshot s;
    s.entity = entity;
    s.number = 1;
    s.attributed_to = agent;
    s.primary_source = source;
    s.generated_at = t;
    s.description = description.empty() ? "entity " + entity.str() + " created"
                                        : description;
    index_.register_entity(entity);
    return append_snapshot(std::move(s));
}

std::optional<Snapshot> QuadStore::record_modification(const Omid& entity,
                                                       const QuadSet& new_state,
                                                       const std::string& agent,
                                                       const std::string& source,
                                                       Timestamp t,
                                                       const std::string& description) {
    auto it = snapshots_.find(entity.str());
    if (it == snapshots_.end() || it->second.empty()) {
        throw StoreError("cannot modify unknown entity " + entity.str());
    }
    QuadSet old_state = entity_state(entity);
    if (old_state == new_state) return std::nullopt;
    check_state_shape(entity, new_state);
    const Snapshot& prev = it->second.back();
    if (t <= prev.generated_at) {
        throw StoreError("snapshot time must increase for " + entity.str());
    }

    QuadSet deleted, inserted;
    for (const Quad& q : old_state) {
        if (!new_state.count(q)) deleted.insert(q);
    }
    for (const Quad& q : new_state) {
        if (!old_state.count(q)) inserted.insert(q);
    }
    replace_entity_state(entity, old_state, new_state);

    Snapshot s;
    s.entity = entity;
    s.number = prev.number + 1;
    s.derived_from.push_back(prev.iri(options_.base_iri));
    s.attributed_to = agent;
    s.primary_source = source;
    s.generated_at = t;
    s.description = description.empty() ? "entity " + entity.str() + " modified"
                                        : description;
    // Inverse delta: applying it to the new state restores the previous one.
    s.update_query = prov::build_update_query(inserted, deleted);
    invalidate_last(entity, t);
    return append_snapshot(std::move(s));
}

Snapshot QuadStore::record_merge(const Omid& survivor, const QuadSet& new_state,
                                 const std::vector<Omid>& absorbed,
                                 const std::string& agent, const std::string& source,
                                 Timestamp t, const std::string& description) {
    if (absorbed.empty()) throw StoreError("merge needs at least one absorbed entity");
    for (const Omid& a : absorbed) {
        if (a == survivor) throw StoreError("survivor cannot be absorbed");
    }
    auto sit = snapshots_.find(survivor.str());
    if (sit == snapshots_.end() || sit->second.empty()) {
        throw StoreError("cannot merge into unknown entity " + survivor.str());
    }
    check_state_shape(survivor, new_state);

    std::vector<std::string> absorbed_last_iris;
    for (const Omid& a : absorbed) {
        auto ait = snapshots_.find(a.str());
        if (ait == snapshots_.end() || ait->second.empty()) {
            throw StoreError("cannot merge unknown entity " + a.str());
        }
        QuadSet a_state = entity_state(a);
        if (a_state.empty()) throw StoreError("entity already deleted: " + a.str());
        absorbed_last_iris.push_back(ait->second.back().iri(options_.base_iri));
        if (t <= ait->second.back().generated_at) {
            throw StoreError("snapshot time must increase for " + a.str());
        }

        for (const Quad& q : a_state) remove_data(q);
        Snapshot del;
        del.entity = a;
        del.number = ait->second.back().number + 1;
        del.derived_from.push_back(ait->second.back().iri(options_.base_iri));
        del.attributed_to = agent;
        del.primary_source = source;
        del.generated_at = t;
        del.description =
            "entity " + a.str() + " deleted in merge into " + survivor.str();
        del.update_query = prov::build_update_query({}, a_state);
        invalidate_last(a, t);
        append_snapshot(std::move(del));
        index_.add_merge(a, survivor);
    }

    // Repoint references held by other entities from absorbed to survivor.
    std::string survivor_iri = survivor.iri(options_.base_iri);
    std::map<std::string, QuadSet> touched;  // subject key -> new state
    for (const Omid& a : absorbed) {
        std::string a_iri = a.iri(options_.base_iri);
        std::vector<Quad> refs;
        for (const Quad& q : data_) {
            if (q.object.is_iri() && q.object.value == a_iri &&
                q.subject != survivor_iri) {
                refs.push_back(q);
            }
        }
        for (const Quad& q : refs) {
            std::string key = subject_key(q.graph, q.subject);
            if (!touched.count(key)) touched[key] = subject_quads(q.graph, q.subject);
            touched[key].erase(q);
            Quad repointed = q;
            repointed.object = rdf::Term::iri(survivor_iri);
            touched[key].insert(repointed);
        }
    }
    for (const auto& [key, state] : touched) {
        std::string subject = key.substr(key.find('\n') + 1);
        auto owner = Omid::from_iri(subject, options_.base_iri);
        if (!owner) continue;
        record_modification(*owner, state, agent, source, t,
                            "references repointed after merge into " + survivor.str());
    }

    const Snapshot& prev = sit->second.back();
    if (t <= prev.generated_at) {
        throw StoreError("snapshot time must increase for " + survivor.str());
    }
    QuadSet old_state = entity_state(survivor);
    QuadSet deleted, inserted;
    for (const Quad& q : old_state) {
        if (!new_state.count(q)) deleted.insert(q);
    }
    for (const Quad& q : new_state) {
        if (!old_state.count(q)) inserted.insert(q);
    }
    replace_entity_state(survivor, old_state, new_state);

    Snapshot s;
    s.entity = survivor;
    s.number = prev.number + 1;
    s.derived_from.push_back(prev.iri(options_.base_iri));
    for (const std::string& iri : absorbed_last_iris) s.derived_from.push_back(iri);
    s.attributed_to = agent;
    s.primary_source = source;
    s.generated_at = t;
    if (!description.empty()) {
        s.description = description;
    } else {
        s.description = "entity " + survivor.str() + " merged with";
        for (const Omid& a : absorbed) s.description += " " + a.str();
    }
    s.update_query = prov::build_update_query(inserted, deleted);
    invalidate_last(survivor, t);
    return append_snapshot(std::move(s));
}

const std::vector<Snapshot>& QuadStore::snapshots(const Omid& entity) const {
    static const std::vector<Snapshot> empty;
    auto it = snapshots_.find(entity.str());
    return it == snapshots_.end() ? empty : it->second;
}

QuadSet QuadStore::reconstruct_at(const Omid& entity, Timestamp t) const {
    QuadSet state = entity_state(entity);
    const auto& snaps = snapshots(entity);
    for (auto it = snaps.rbegin(); it != snaps.rend(); ++it) {
        if (it->generated_at <= t) break;
        if (it->number == 1) {
            state.clear();
            break;
        }
        if (!it->update_query.empty()) {
            prov::apply_update(state, prov::parse_update_query(it->update_query));
        }
    }
    return state;
}

void QuadStore::commit() {
    wal_ << "C " << '\n';
    wal_.flush();
    index_.save(options_.dir / "ids.csv", options_.dir / "merge_chain.csv");
}

void QuadStore::compact() {
    commit();
    write_file_atomic(options_.dir / "data.nq", rdf::to_nquads(data_));
    write_file_atomic(options_.dir / "prov.nq", rdf::to_nquads(prov_));
    wal_.close();
    std::ofstream truncate(options_.dir / "wal.log", std::ios::trunc);
    truncate.close();
    wal_.open(options_.dir / "wal.log", std::ios::app);
}

void QuadStore::dump(const fs::path& data_nq, const fs::path& prov_nq) const {
    write_file_atomic(data_nq, rdf::to_nquads(data_));
    write_file_atomic(prov_nq, rdf::to_nquads(prov_));
}

std::size_t QuadStore::snapshot_count() const {
    std::size_t n = 0;
    for (const auto& [entity, snaps] : snapshots_) n += snaps.size();
    return n;
}

StoreLock::StoreLock(const fs::path& store_dir) : file_(store_dir / ".lock") {
    fs::create_directories(store_dir);
    int fd = ::open(file_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        throw StoreError("store is locked by another writer: " + file_.string());
    }
    ::close(fd);
}

StoreLock::~StoreLock() {
    std::error_code ec;
    fs::remove(file_, ec);
}

}  // namespace ocmeta::store
