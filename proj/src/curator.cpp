#include "ocmeta/curator.hpp"

#include <algorithm>
#include <cassert>
#include <ctime>

#include "ocmeta/mapper.hpp"
#include "ocmeta/unicode.hpp"
#include "ocmeta/vocab.hpp"

namespace ocmeta::cur {

using id::ExternalId;
using id::Scheme;
using rec::RowDiagnostics;

// ---------------------------------------------------------------------------
// Decision tree

ResolutionOutcome decide(const std::vector<ExternalId>& ids,
                         const std::optional<Omid>& csv_omid, const IndexView& index) {
    std::vector<Omid> hits;
    for (const ExternalId& eid : ids) {
        auto o = index.resolve(eid);
        if (o && std::find(hits.begin(), hits.end(), *o) == hits.end()) {
            hits.push_back(*o);
        }
    }

    if (csv_omid) {
        auto target = index.chase(*csv_omid);
        if (!target) {
            throw DecideError("cannot update nonexistent entity " + csv_omid->str());
        }
        if (ids.empty()) {
            return {DecisionCase::omid_update, *target, {}};
        }
        std::vector<Omid> foreign;
        for (const Omid& o : hits) {
            if (!(o == *target)) foreign.push_back(o);
        }
        bool all_fresh = std::all_of(foreign.begin(), foreign.end(),
                                     [&](const Omid& o) { return index.batch_fresh(o); });
        if (all_fresh) {
            return {DecisionCase::omid_merge, *target, std::move(foreign)};
        }
        return {DecisionCase::omid_conflict_merge, *target, {}};
    }

    if (hits.empty()) return {DecisionCase::new_entity, std::nullopt, {}};
    if (hits.size() == 1) return {DecisionCase::merge_single, hits.front(), {}};
    return {DecisionCase::conflict_new, std::nullopt, {}};
}

// ---------------------------------------------------------------------------
// Entity merge

namespace {

void merge_note(const MergeHooks& hooks, const std::string& column,
                const std::string& message) {
    if (hooks.diags) hooks.diags->push_back({hooks.row, column, message});
}

bool ids_intersect(const AgentRecord& a, const AgentRecord& b) {
    for (const ent::IdSlot& x : a.ids) {
        for (const ent::IdSlot& y : b.ids) {
            if (x.eid == y.eid) return true;
        }
    }
    return false;
}

bool same_person_name(const AgentRecord& a, const AgentRecord& b) {
    if (a.is_organization != b.is_organization) return false;
    if (a.is_organization) return !a.name.empty() && a.name == b.name;
    if (a.family_name.empty() && a.given_name.empty()) return false;
    return a.family_name == b.family_name && a.given_name == b.given_name;
}

bool agents_match(const AgentRecord& incoming, const AgentRecord& kept) {
    if (ids_intersect(incoming, kept)) return true;
    if (!incoming.ids.empty() && !kept.ids.empty()) return false;
    return same_person_name(incoming, kept);
}

void merge_roles(CuratedEntity& surviving, const CuratedEntity& incoming,
                 ent::RoleKind kind, const MergeHooks& hooks) {
    auto& kept = surviving.roles(kind);
    const auto& added = incoming.roles(kind);
    for (const ent::RoleSlot& slot : added) {
        bool matched = false;
        for (const ent::RoleSlot& existing : kept) {
            if (existing.agent == slot.agent) {
                matched = true;
                break;
            }
        }
        if (!matched) {
            const AgentRecord* in_agent = hooks.agent(slot.agent);
            if (in_agent) {
                for (const ent::RoleSlot& existing : kept) {
                    const AgentRecord* kept_agent = hooks.agent(existing.agent);
                    if (kept_agent && agents_match(*in_agent, *kept_agent)) {
                        matched = true;
                        if (hooks.agent_matched) {
                            hooks.agent_matched(slot.agent, existing.agent);
                        }
                        break;
                    }
                }
            }
        }
        if (!matched) kept.push_back(slot);
    }
}

}  // namespace

CuratedEntity merge_entities(CuratedEntity surviving, const CuratedEntity& incoming,
                             bool surviving_is_stored, const MergeHooks& hooks) {
    const char* precedence = surviving_is_stored ? "stored" : "first-occurrence";

    if (surviving.title.empty()) {
        surviving.title = incoming.title;
    } else if (!incoming.title.empty() && incoming.title != surviving.title) {
        merge_note(hooks, "title",
                   std::string("title differs; ") + precedence + " value kept");
    }

    if (!surviving.date && incoming.date) {
        surviving.date = incoming.date;
    } else if (surviving.date && incoming.date && !(*surviving.date == *incoming.date)) {
        merge_note(hooks, "pub_date",
                   std::string("date differs; ") + precedence + " value kept");
    }

    if (surviving.type_tag.empty()) {
        surviving.type_tag = incoming.type_tag;
    } else if (!incoming.type_tag.empty() && incoming.type_tag != surviving.type_tag) {
        merge_note(hooks, "type", "type tags contradict ('" + surviving.type_tag +
                                      "' vs '" + incoming.type_tag + "'); " + precedence +
                                      " value kept");
    }

    if (surviving.seq.empty()) surviving.seq = incoming.seq;

    if (!surviving.pages && incoming.pages) {
        surviving.pages = incoming.pages;
    } else if (surviving.pages && incoming.pages &&
               (surviving.pages->first_page != incoming.pages->first_page ||
                surviving.pages->last_page != incoming.pages->last_page)) {
        merge_note(hooks, "page",
                   std::string("page range differs; ") + precedence + " value kept");
    }

    if (!surviving.part_of && incoming.part_of) {
        surviving.part_of = incoming.part_of;
    } else if (surviving.part_of && incoming.part_of &&
               !(*surviving.part_of == *incoming.part_of)) {
        std::optional<Omid> kept_terminal, new_terminal;
        if (hooks.chain_terminal) {
            kept_terminal = hooks.chain_terminal(*surviving.part_of);
            new_terminal = hooks.chain_terminal(*incoming.part_of);
        }
        if (kept_terminal && new_terminal && *kept_terminal == *new_terminal &&
            *surviving.part_of == *kept_terminal) {
            // Same venue, deeper chain: the incoming side adds volume/issue
            // levels the surviving entity lacked.
            surviving.part_of = incoming.part_of;
        } else {
            merge_note(hooks, "venue",
                       std::string("container differs; ") + precedence + " chain kept");
        }
    }

    for (const ent::IdSlot& slot : incoming.ids) {
        bool present = std::any_of(
            surviving.ids.begin(), surviving.ids.end(),
            [&](const ent::IdSlot& s) { return s.eid == slot.eid; });
        if (!present) surviving.ids.push_back(slot);
    }

    for (ent::RoleKind kind :
         {ent::RoleKind::author, ent::RoleKind::editor, ent::RoleKind::publisher}) {
        merge_roles(surviving, incoming, kind, hooks);
    }
    return surviving;
}

// ---------------------------------------------------------------------------
// Batch state

struct Curator::Batch {
    std::map<std::string, CuratedEntity> brs;
    std::map<std::string, AgentRecord> agents;
    std::map<std::string, std::pair<ExternalId, Omid>> new_id_entities;
    std::vector<std::string> mint_order;  // br/ra entities in creation order
    std::set<std::string> fresh;          // every omid minted this batch
    std::set<std::string> evaporated;
    std::map<std::string, std::string> local_chain;
    std::map<std::string, std::string> bindings;    // "kind|token" -> omid
    std::map<std::string, std::string> containers;  // "parent|tag|value" -> omid
    std::map<std::string, std::string> ids_overlay;
    RowDiagnostics diags;
    std::vector<Omid> row_targets;
    std::size_t current_row = 0;
};

class Curator::BatchIndexView final : public IndexView {
  public:
    BatchIndexView(const Curator& curator, EntityKind kind)
        : curator_(curator), kind_(kind) {}

    std::optional<Omid> resolve(const ExternalId& eid) const override {
        const Batch& b = *curator_.batch_;
        auto it = b.bindings.find(binding_key(eid));
        if (it != b.bindings.end()) {
            auto o = Omid::parse(it->second);
            return o ? chase(*o) : std::nullopt;
        }
        auto stored = curator_.store_.index().resolve(kind_, eid);
        if (!stored) return std::nullopt;
        return chase(*stored);
    }

    bool knows(const Omid& o) const override {
        const Batch& b = *curator_.batch_;
        return curator_.store_.index().knows(o) || b.fresh.count(o.str()) > 0;
    }

    std::optional<Omid> chase(const Omid& o) const override {
        if (!knows(o)) return std::nullopt;
        const Batch& b = *curator_.batch_;
        std::string current = o.str();
        for (std::size_t guard = 0; guard < 1000; ++guard) {
            auto local = b.local_chain.find(current);
            if (local != b.local_chain.end()) {
                current = local->second;
                continue;
            }
            auto parsed = Omid::parse(current);
            if (parsed && curator_.store_.index().knows(*parsed)) {
                return curator_.store_.index().chase(*parsed);
            }
            return parsed;
        }
        throw DecideError("merge chain too deep at " + current);
    }

    bool batch_fresh(const Omid& o) const override {
        return curator_.batch_->fresh.count(o.str()) > 0;
    }

  private:
    std::string binding_key(const ExternalId& eid) const {
        return std::string(omid::kind_abbrev(kind_)) + "|" + eid.token();
    }

    const Curator& curator_;
    EntityKind kind_;
};

// ---------------------------------------------------------------------------
// Curator

Curator::Curator(store::QuadStore& store, id::ExistenceCache& existence_cache,
                 id::ExistenceClient& existence_client, CuratorConfig config)
    : store_(store), cache_(existence_cache), client_(existence_client),
      config_(std::move(config)) {
    if (!config_.clock) {
        config_.clock = [] { return static_cast<prov::Timestamp>(std::time(nullptr)); };
    }
    build_store_indexes();
}

Curator::~Curator() = default;

void Curator::build_store_indexes() {
    known_ids_.clear();
    container_index_.clear();
    const std::string& base = store_.base();
    std::string id_graph = map::kind_graph(EntityKind::id, base);
    std::string br_graph = map::kind_graph(EntityKind::br, base);

    // token -> id entity, and container shape (type/seq/parent) per br.
    struct BrShape {
        bool volume = false;
        bool issue = false;
        std::string seq;
        std::string parent;
    };
    std::map<std::string, std::pair<std::string, std::string>> id_parts;
    std::map<std::string, BrShape> shapes;
    for (const rdf::Quad& q : store_.data()) {
        if (q.graph == id_graph) {
            auto& parts = id_parts[q.subject];
            if (q.predicate == vocab::datacite_uses_identifier_scheme &&
                q.object.is_iri()) {
                if (auto s = vocab::scheme_from_iri(q.object.value)) parts.first = *s;
            } else if (q.predicate == vocab::literal_has_literal_value) {
                parts.second = q.object.value;
            }
        } else if (q.graph == br_graph) {
            auto& shape = shapes[q.subject];
            if (q.predicate == vocab::rdf_type && q.object.is_iri()) {
                if (q.object.value == vocab::type_class("journal volume")) shape.volume = true;
                if (q.object.value == vocab::type_class("journal issue")) shape.issue = true;
            } else if (q.predicate == vocab::fabio_has_sequence_identifier) {
                shape.seq = q.object.value;
            } else if (q.predicate == vocab::frbr_part_of && q.object.is_iri()) {
                shape.parent = q.object.value;
            }
        }
    }
    for (const auto& [subject, parts] : id_parts) {
        if (parts.first.empty() || parts.second.empty()) continue;
        auto o = Omid::from_iri(subject, base);
        if (o) known_ids_[parts.first + ":" + parts.second] = o->str();
    }
    for (const auto& [subject, shape] : shapes) {
        if (!(shape.volume || shape.issue) || shape.seq.empty() || shape.parent.empty()) {
            continue;
        }
        auto self = Omid::from_iri(subject, base);
        auto parent = Omid::from_iri(shape.parent, base);
        if (!self || !parent) continue;
        std::string tag = shape.volume ? "journal volume" : "journal issue";
        container_index_[parent->str() + "|" + tag + "|" + shape.seq] = self->str();
    }
}

// ---------------------------------------------------------------------------
// Row processing helpers

namespace CuratorDetailNs {}  // placeholder to keep symbol layout stable

struct CuratorDetail {
    Curator& c;
    Curator::Batch& b;

    void note(const std::string& column, const std::string& message) {
        b.diags.push_back({b.current_row, column, message});
    }

    Omid mint(EntityKind kind) {
        Omid o = c.store_.minter().mint(kind);
        b.fresh.insert(o.str());
        if (kind == EntityKind::br || kind == EntityKind::ra) {
            b.mint_order.push_back(o.str());
        }
        return o;
    }

    // -- staged entity access ------------------------------------------------

    CuratedEntity& stage_br(const Omid& o) {
        auto it = b.brs.find(o.str());
        if (it != b.brs.end()) return it->second;
        auto decoded = map::decode_br(c.store_, o, c.store_.base());
        if (!decoded) throw DecideError("entity has no stored state: " + o.str());
        return b.brs.emplace(o.str(), std::move(*decoded)).first->second;
    }

    const CuratedEntity* peek_br(const Omid& o) {
        auto it = b.brs.find(o.str());
        if (it != b.brs.end()) return &it->second;
        static thread_local std::map<std::string, CuratedEntity> cache;
        auto hit = cache.find(o.str());
        if (hit != cache.end()) return &hit->second;
        auto decoded = map::decode_br(c.store_, o, c.store_.base());
        if (!decoded) return nullptr;
        return &cache.emplace(o.str(), std::move(*decoded)).first->second;
    }

    AgentRecord& stage_agent(const Omid& o) {
        auto it = b.agents.find(o.str());
        if (it != b.agents.end()) return it->second;
        auto decoded = map::decode_ra(c.store_, o, c.store_.base());
        if (!decoded) throw DecideError("agent has no stored state: " + o.str());
        return b.agents.emplace(o.str(), std::move(*decoded)).first->second;
    }

    const AgentRecord* peek_agent(const Omid& o) {
        auto it = b.agents.find(o.str());
        if (it != b.agents.end()) return &it->second;
        auto decoded = map::decode_ra(c.store_, o, c.store_.base());
        if (!decoded) return nullptr;
        return &b.agents.emplace(o.str(), std::move(*decoded)).first->second;
    }

    // -- identifier pipeline ---------------------------------------------------

    struct PreparedIds {
        std::optional<Omid> csv_omid;
        std::vector<ExternalId> ids;
    };

    PreparedIds prepare_ids(const std::vector<ExternalId>& raw, const std::string& column) {
        PreparedIds out;
        for (const ExternalId& raw_eid : raw) {
            if (raw_eid.scheme == Scheme::omid) {
                auto o = Omid::parse(id::normalize_id(Scheme::omid, raw_eid.value));
                if (!o) {
                    note(column, "malformed OMID token '" + raw_eid.token() + "'; skipped");
                } else if (out.csv_omid) {
                    note(column, "multiple OMID tokens; keeping " + out.csv_omid->str());
                } else {
                    out.csv_omid = *o;
                }
                continue;
            }
            ExternalId eid = raw_eid;
            try {
                eid.value = id::normalize_id(eid.scheme, eid.value);
            } catch (const id::NormalizeError&) {
                note(column, "identifier '" + raw_eid.token() + "' empty after "
                             "normalization; dropped");
                continue;
            }
            eid.syntax_valid = id::validate_syntax(eid.scheme, eid.value);
            if (!eid.syntax_valid) {
                note(column, "identifier '" + eid.token() + "' fails syntax check; dropped");
                continue;
            }
            if (eid.scheme == Scheme::doi || eid.scheme == Scheme::orcid) {
                eid.existence = c.cache_.get_or_fetch(eid.scheme, eid.value, c.client_);
                if (eid.existence == id::Existence::not_found) {
                    note(column,
                         "identifier '" + eid.token() + "' not registered; dropped");
                    continue;
                }
            }
            if (std::find(out.ids.begin(), out.ids.end(), eid) == out.ids.end()) {
                out.ids.push_back(std::move(eid));
            }
        }
        return out;
    }

    ent::IdSlot intern_id(const ExternalId& eid) {
        std::string token = eid.token();
        auto overlay = b.ids_overlay.find(token);
        if (overlay != b.ids_overlay.end()) {
            return {eid, *Omid::parse(overlay->second)};
        }
        auto known = c.known_ids_.find(token);
        if (known != c.known_ids_.end()) {
            return {eid, *Omid::parse(known->second)};
        }
        Omid o = mint(EntityKind::id);
        b.ids_overlay[token] = o.str();
        b.new_id_entities[token] = {eid, o};
        return {eid, o};
    }

    void bind(EntityKind kind, const ExternalId& eid, const Omid& target) {
        b.bindings[std::string(omid::kind_abbrev(kind)) + "|" + eid.token()] =
            target.str();
    }

    bool is_bound(EntityKind kind, const ExternalId& eid) {
        BatchIndexView view(c, kind);
        return view.resolve(eid).has_value();
    }

    // -- evaporation ----------------------------------------------------------

    void rewrite_map_values(std::map<std::string, std::string>& m, const std::string& from,
                            const std::string& to) {
        for (auto& [key, value] : m) {
            if (value == from) value = to;
        }
    }

    void evaporate_br(const Omid& from, const Omid& to) {
        b.evaporated.insert(from.str());
        b.local_chain[from.str()] = to.str();
        rewrite_map_values(b.bindings, from.str(), to.str());
        // Containers keyed under the evaporated parent move to the survivor.
        std::map<std::string, std::string> rekeyed;
        for (auto it = b.containers.begin(); it != b.containers.end();) {
            if (it->first.rfind(from.str() + "|", 0) == 0) {
                rekeyed[to.str() + it->first.substr(from.str().size())] = it->second;
                it = b.containers.erase(it);
            } else {
                if (it->second == from.str()) it->second = to.str();
                ++it;
            }
        }
        b.containers.insert(rekeyed.begin(), rekeyed.end());
        for (auto& [key, entity] : b.brs) {
            if (entity.part_of && entity.part_of->str() == from.str()) {
                entity.part_of = to;
            }
        }
    }

    void evaporate_agent(const Omid& from, const Omid& to) {
        b.evaporated.insert(from.str());
        b.local_chain[from.str()] = to.str();
        rewrite_map_values(b.bindings, from.str(), to.str());
        for (auto& [key, entity] : b.brs) {
            for (ent::RoleKind kind : {ent::RoleKind::author, ent::RoleKind::editor,
                                       ent::RoleKind::publisher}) {
                for (ent::RoleSlot& slot : entity.roles(kind)) {
                    if (slot.agent.str() == from.str()) slot.agent = to;
                }
            }
        }
    }

    // -- container chains ------------------------------------------------------

    std::optional<Omid> chain_terminal(const Omid& start) {
        Omid current = start;
        for (int guard = 0; guard < 64; ++guard) {
            BatchIndexView view(c, EntityKind::br);
            if (auto chased = view.chase(current)) current = *chased;
            const CuratedEntity* e = peek_br(current);
            if (!e || !e->part_of) return current;
            current = *e->part_of;
        }
        return std::nullopt;
    }

    MergeHooks hooks() {
        MergeHooks h;
        h.agent = [this](const Omid& o) { return peek_agent(o); };
        h.agent_matched = [this](const Omid& incoming, const Omid& kept) {
            on_agent_matched(incoming, kept);
        };
        h.chain_terminal = [this](const Omid& o) { return chain_terminal(o); };
        h.diags = &b.diags;
        h.row = b.current_row;
        return h;
    }

    void on_agent_matched(const Omid& incoming, const Omid& kept) {
        if (incoming == kept) return;
        const AgentRecord* in = peek_agent(incoming);
        if (!in) return;
        bool incoming_fresh = b.fresh.count(incoming.str()) > 0;
        AgentRecord copy = *in;
        AgentRecord& target = stage_agent(kept);
        if (target.given_name.empty()) target.given_name = copy.given_name;
        if (target.family_name.empty()) target.family_name = copy.family_name;
        if (target.name.empty()) target.name = copy.name;
        for (const ent::IdSlot& slot : copy.ids) {
            bool present = std::any_of(target.ids.begin(), target.ids.end(),
                                       [&](const ent::IdSlot& s) { return s.eid == slot.eid; });
            if (!present) {
                target.ids.push_back(slot);
                bind(EntityKind::ra, slot.eid, kept);
            }
        }
        if (incoming_fresh) {
            evaporate_agent(incoming, kept);
        } else {
            note("author", "role of " + incoming.str() + " matched person " + kept.str() +
                               " by name; entities left distinct");
        }
    }

    // -- generic resolve-or-create for br-kind entities -------------------------

    // Runs the decision tree for a freshly materialized entity and applies
    // the branch: binds ids, merges into the target or keeps the fresh one.
    Omid resolve_entity(CuratedEntity fresh_entity, const PreparedIds& prepared,
                        const std::string& column) {
        BatchIndexView view(c, EntityKind::br);
        ResolutionOutcome outcome = decide(prepared.ids, prepared.csv_omid, view);
        const Omid self = fresh_entity.omid;

        auto bind_unbound = [&](const Omid& target) {
            for (const ExternalId& eid : prepared.ids) {
                if (!view.resolve(eid)) bind(EntityKind::br, eid, target);
            }
        };

        switch (outcome.kase) {
            case DecisionCase::new_entity: {
                bind_unbound(self);
                b.brs.emplace(self.str(), std::move(fresh_entity));
                return self;
            }
            case DecisionCase::conflict_new: {
                std::string hit_list;
                std::vector<ent::IdSlot> kept_slots;
                for (const ent::IdSlot& slot : fresh_entity.ids) {
                    if (auto hit = view.resolve(slot.eid)) {
                        hit_list += " " + slot.eid.token() + "->" + hit->str();
                    } else {
                        kept_slots.push_back(slot);
                    }
                }
                fresh_entity.ids = std::move(kept_slots);
                note(column, "identifiers connect distinct entities (" + hit_list +
                                 " ); conflictual entity " + self.str() +
                                 " minted for manual review");
                bind_unbound(self);
                b.brs.emplace(self.str(), std::move(fresh_entity));
                return self;
            }
            case DecisionCase::merge_single:
            case DecisionCase::omid_update:
            case DecisionCase::omid_merge:
            case DecisionCase::omid_conflict_merge: {
                Omid target = *outcome.target;
                bool target_stored = !view.batch_fresh(target);
                if (outcome.kase == DecisionCase::omid_conflict_merge) {
                    // Contested ids stay with the entities they already
                    // identify; only the designated entity is updated.
                    std::vector<ent::IdSlot> kept_slots;
                    std::string contested;
                    for (const ent::IdSlot& slot : fresh_entity.ids) {
                        auto hit = view.resolve(slot.eid);
                        if (hit && !(*hit == target)) {
                            contested += " " + slot.eid.token() + "->" + hit->str();
                        } else {
                            kept_slots.push_back(slot);
                        }
                    }
                    if (!contested.empty()) {
                        note(column, "identifiers conflict across stored entities (" +
                                         contested + " ); input OMID " + target.str() +
                                         " takes precedence");
                    }
                    fresh_entity.ids = std::move(kept_slots);
                }
                CuratedEntity& staged = stage_br(target);
                // Batch-local entities hit by the ids fold into the target
                // first: earlier occurrences outrank the current row.
                for (const Omid& away : outcome.merged_away) {
                    auto it = b.brs.find(away.str());
                    if (it == b.brs.end()) continue;
                    CuratedEntity absorbed = it->second;
                    CuratedEntity merged =
                        merge_entities(staged, absorbed, target_stored, hooks());
                    b.brs[target.str()] = std::move(merged);
                    evaporate_br(away, target);
                    b.brs.erase(away.str());
                }
                CuratedEntity merged = merge_entities(b.brs.at(target.str()), fresh_entity,
                                                      target_stored, hooks());
                b.brs[target.str()] = std::move(merged);
                bind_unbound(target);
                evaporate_br(self, target);
                return target;
            }
        }
        throw DecideError("unreachable decision branch");
    }

    // -- sub-entity curation -----------------------------------------------------

    Omid curate_agent(const rec::PersonSpec& person, const std::string& column) {
        PreparedIds prepared = prepare_ids(person.ids, column);
        if (prepared.csv_omid && prepared.csv_omid->kind != EntityKind::ra) {
            throw DecideError("OMID " + prepared.csv_omid->str() +
                              " does not identify a responsible agent");
        }
        BatchIndexView view(c, EntityKind::ra);
        ResolutionOutcome outcome = decide(prepared.ids, prepared.csv_omid, view);

        auto fill_agent = [&](AgentRecord& a) {
            if (person.is_organization) {
                a.is_organization = true;
                if (a.name.empty()) a.name = norm::title_case(person.name);
            } else {
                if (a.family_name.empty()) a.family_name = norm::title_case(person.family_name);
                if (a.given_name.empty()) a.given_name = norm::title_case(person.given_name);
            }
        };

        auto attach_ids = [&](AgentRecord& a, const Omid& target, bool skip_contested) {
            for (const ExternalId& eid : prepared.ids) {
                auto hit = view.resolve(eid);
                if (hit && !(*hit == target)) {
                    if (skip_contested) {
                        note(column, "identifier '" + eid.token() +
                                         "' already names agent " + hit->str() +
                                         "; left untouched");
                        continue;
                    }
                }
                ent::IdSlot slot = intern_id(eid);
                bool present = std::any_of(a.ids.begin(), a.ids.end(),
                                           [&](const ent::IdSlot& s) { return s.eid == slot.eid; });
                if (!present) a.ids.push_back(slot);
                if (!hit) bind(EntityKind::ra, eid, target);
            }
        };

        switch (outcome.kase) {
            case DecisionCase::new_entity:
            case DecisionCase::conflict_new: {
                Omid o = mint(EntityKind::ra);
                AgentRecord a;
                a.omid = o;
                fill_agent(a);
                attach_ids(a, o, outcome.kase == DecisionCase::conflict_new);
                if (outcome.kase == DecisionCase::conflict_new) {
                    note(column, "agent identifiers conflict; new agent " + o.str() +
                                     " minted for manual review");
                }
                b.agents.emplace(o.str(), std::move(a));
                return o;
            }
            default: {
                Omid target = *outcome.target;
                for (const Omid& away : outcome.merged_away) {
                    auto it = b.agents.find(away.str());
                    if (it == b.agents.end()) continue;
                    AgentRecord absorbed = it->second;
                    AgentRecord& staged = stage_agent(target);
                    if (staged.family_name.empty()) staged.family_name = absorbed.family_name;
                    if (staged.given_name.empty()) staged.given_name = absorbed.given_name;
                    if (staged.name.empty()) staged.name = absorbed.name;
                    for (const ent::IdSlot& slot : absorbed.ids) {
                        bool present = std::any_of(
                            staged.ids.begin(), staged.ids.end(),
                            [&](const ent::IdSlot& s) { return s.eid == slot.eid; });
                        if (!present) staged.ids.push_back(slot);
                    }
                    evaporate_agent(away, target);
                    b.agents.erase(away.str());
                }
                AgentRecord& staged = stage_agent(target);
                fill_agent(staged);
                attach_ids(staged, target,
                           outcome.kase == DecisionCase::omid_conflict_merge);
                return target;
            }
        }
    }

    std::optional<Omid> curate_venue(const std::optional<rec::VenueSpec>& venue,
                                     const std::string& row_type) {
        if (!venue) return std::nullopt;
        PreparedIds prepared = prepare_ids(venue->ids, "venue");
        if (prepared.csv_omid && prepared.csv_omid->kind != EntityKind::br) {
            throw DecideError("OMID " + prepared.csv_omid->str() +
                              " does not identify a bibliographic resource");
        }
        CuratedEntity v;
        v.omid = mint(EntityKind::br);
        v.title = norm::title_case(venue->name);
        v.type_tag = vocab::venue_tag_for(row_type);
        for (const ExternalId& eid : prepared.ids) v.ids.push_back(intern_id(eid));
        return resolve_entity(std::move(v), prepared, "venue");
    }

    Omid curate_container(const Omid& parent, const std::string& tag,
                          const std::string& value) {
        std::string key = parent.str() + "|" + tag + "|" + value;
        auto overlay = b.containers.find(key);
        BatchIndexView view(c, EntityKind::br);
        if (overlay != b.containers.end()) {
            if (auto o = Omid::parse(overlay->second)) {
                if (auto live = view.chase(*o)) return *live;
            }
        }
        auto stored = c.container_index_.find(key);
        if (stored != c.container_index_.end()) {
            if (auto o = Omid::parse(stored->second)) {
                if (auto live = view.chase(*o)) return *live;
            }
        }
        CuratedEntity e;
        e.omid = mint(EntityKind::br);
        e.type_tag = tag;
        e.seq = value;
        e.part_of = parent;
        b.containers[key] = e.omid.str();
        Omid o = e.omid;
        b.brs.emplace(o.str(), std::move(e));
        return o;
    }
};

// ---------------------------------------------------------------------------
// Batch driver

namespace {

ent::Embodiment parse_pages(const std::string& cell, const Omid& re_omid) {
    ent::Embodiment re;
    re.omid = re_omid;
    auto dash = cell.find('-');
    if (dash != std::string::npos && cell.find('-', dash + 1) == std::string::npos &&
        dash > 0 && dash + 1 < cell.size()) {
        re.first_page = cell.substr(0, dash);
        re.last_page = cell.substr(dash + 1);
    } else {
        re.first_page = cell;
        re.last_page = cell;
    }
    return re;
}

}  // namespace

BatchResult Curator::curate_batch(const std::vector<rec::InputRecord>& rows) {
    batch_ = std::make_unique<Batch>();
    Batch& b = *batch_;
    CuratorDetail d{*this, b};
    BatchResult result;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        b.current_row = i + 1;
        const rec::InputRecord& row = rows[i];
        try {
            // Cell normalization.
            std::string id_cell =
                norm::fold_spaces(norm::fold_hyphens(row.id_cell, norm::FieldKind::id));
            std::string title = norm::title_case(norm::fold_spaces(row.title));
            std::string author =
                norm::fold_spaces(norm::fold_hyphens(row.author, norm::FieldKind::author));
            std::string editor =
                norm::fold_spaces(norm::fold_hyphens(row.editor, norm::FieldKind::editor));
            std::string page =
                norm::fold_spaces(norm::fold_hyphens(row.page, norm::FieldKind::page));
            std::string type_tag = uni::lower(norm::fold_spaces(row.type));

            norm::Diagnostics ndiags;
            auto date = norm::parse_date(row.pub_date, &ndiags);
            if (norm::fold_spaces(row.pub_date).empty()) date = std::nullopt;
            norm::VolumeIssue vi =
                norm::repair_volume_issue(row.volume, row.issue, config_.keywords, &ndiags);
            for (const norm::Diagnostic& nd : ndiags) {
                b.diags.push_back({b.current_row, nd.field, nd.message});
            }

            // Cell micro-syntax.
            std::vector<std::string> bad_tokens;
            std::vector<ExternalId> raw_ids = rec::parse_id_cell(id_cell, &bad_tokens);
            for (const std::string& t : bad_tokens) {
                b.diags.push_back({b.current_row, "id",
                                   "token '" + t + "' lacks a scheme separator; skipped"});
            }
            std::vector<rec::PersonSpec> authors = rec::parse_people_cell(author);
            std::vector<rec::PersonSpec> editors = rec::parse_people_cell(editor);
            std::vector<rec::PersonSpec> publishers = rec::parse_people_cell(
                norm::fold_spaces(row.publisher));
            auto venue = rec::parse_venue_cell(norm::fold_spaces(row.venue));

            CuratorDetail::PreparedIds prepared = d.prepare_ids(raw_ids, "id");
            if (prepared.csv_omid && prepared.csv_omid->kind != EntityKind::br) {
                throw DecideError("OMID " + prepared.csv_omid->str() +
                                  " does not identify a bibliographic resource");
            }
            {
                // Unknown input OMIDs are hard errors; check them up front so
                // the row quarantines before anything is staged.
                BatchIndexView view(*this, EntityKind::br);
                if (prepared.csv_omid && !view.knows(*prepared.csv_omid)) {
                    throw DecideError("cannot update nonexistent entity " +
                                      prepared.csv_omid->str());
                }
            }

            // Materialize the row as a fresh entity.
            CuratedEntity e;
            e.omid = d.mint(EntityKind::br);
            e.title = title;
            e.date = date;
            e.type_tag = type_tag;
            for (const ExternalId& eid : prepared.ids) e.ids.push_back(d.intern_id(eid));

            std::optional<Omid> venue_omid = d.curate_venue(venue, type_tag);
            if (type_tag == "journal volume") {
                e.seq = vi.volume;
                e.part_of = venue_omid;
                if (!vi.issue.empty()) {
                    d.note("issue", "issue value ignored on a journal volume row");
                }
            } else if (type_tag == "journal issue") {
                e.seq = vi.issue;
                std::optional<Omid> parent = venue_omid;
                if (venue_omid && !vi.volume.empty()) {
                    parent = d.curate_container(*venue_omid, "journal volume", vi.volume);
                }
                e.part_of = parent;
            } else {
                std::optional<Omid> parent = venue_omid;
                if (parent && !vi.volume.empty()) {
                    parent = d.curate_container(*parent, "journal volume", vi.volume);
                }
                if (parent && !vi.issue.empty()) {
                    parent = d.curate_container(*parent, "journal issue", vi.issue);
                }
                e.part_of = parent;
            }

            if (!page.empty()) {
                e.pages = parse_pages(page, d.mint(EntityKind::re));
            }

            struct RoleCell {
                const std::vector<rec::PersonSpec>* people;
                ent::RoleKind kind;
                const char* column;
            };
            for (const RoleCell& cell :
                 {RoleCell{&authors, ent::RoleKind::author, "author"},
                  RoleCell{&editors, ent::RoleKind::editor, "editor"},
                  RoleCell{&publishers, ent::RoleKind::publisher, "publisher"}}) {
                for (const rec::PersonSpec& person : *cell.people) {
                    Omid agent = d.curate_agent(person, cell.column);
                    e.roles(cell.kind).push_back({d.mint(EntityKind::ar), agent});
                }
            }

            Omid target = d.resolve_entity(std::move(e), prepared, "id");
            b.row_targets.push_back(target);
        } catch (const rec::CellError& err) {
            result.quarantined++;
            b.diags.push_back({b.current_row, "", std::string("row quarantined: ") +
                                                      err.what()});
        } catch (const DecideError& err) {
            result.quarantined++;
            b.diags.push_back({b.current_row, "", std::string("row quarantined: ") +
                                                      err.what()});
        }
    }

    commit(result);
    result.diagnostics = std::move(b.diags);
    batch_.reset();
    return result;
}

}  // namespace ocmeta::cur
