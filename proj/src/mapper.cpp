#include "ocmeta/mapper.hpp"

#include <algorithm>

#include "ocmeta/vocab.hpp"

namespace ocmeta::map {

namespace v = ocmeta::vocab;
using rdf::Quad;
using rdf::QuadSet;
using rdf::Term;

std::string kind_graph(EntityKind kind, std::string_view base) {
    return std::string(base) + std::string(omid::kind_abbrev(kind)) + "/";
}

std::string entity_iri(const Omid& o, std::string_view base) { return o.iri(base); }

const std::string& map_type(std::string_view tag) { return v::type_class(tag); }

namespace {

Term date_literal(const norm::NormalizedDate& d) {
    if (d.day) return Term::literal(d.render(), v::xsd_date);
    if (d.month) return Term::literal(d.render(), v::xsd_gyearmonth);
    return Term::literal(d.render(), v::xsd_gyear);
}

std::optional<norm::NormalizedDate> date_from_literal(const Term& t) {
    return norm::parse_date(t.value);
}

const std::string& role_iri(ent::RoleKind k) {
    switch (k) {
        case ent::RoleKind::author: return v::pro_author;
        case ent::RoleKind::editor: return v::pro_editor;
        case ent::RoleKind::publisher: return v::pro_publisher;
    }
    return v::pro_author;
}

std::optional<ent::RoleKind> role_from_iri(std::string_view iri) {
    if (iri == v::pro_author) return ent::RoleKind::author;
    if (iri == v::pro_editor) return ent::RoleKind::editor;
    if (iri == v::pro_publisher) return ent::RoleKind::publisher;
    return std::nullopt;
}

}  // namespace

QuadSet map_br(const CuratedEntity& e, std::string_view base, norm::Diagnostics* diags) {
    QuadSet quads;
    std::string g = kind_graph(EntityKind::br, base);
    std::string s = e.omid.iri(base);

    quads.insert(Quad(s, v::rdf_type, Term::iri(v::fabio_expression), g));
    if (!e.type_tag.empty()) {
        const std::string& cls = v::type_class(e.type_tag);
        if (cls != v::fabio_expression) {
            quads.insert(Quad(s, v::rdf_type, Term::iri(cls), g));
        } else if (diags) {
            diags->push_back({"type", "unknown type tag '" + e.type_tag + "'"});
        }
    }
    if (!e.title.empty()) {
        quads.insert(Quad(s, v::dcterms_title, Term::literal(e.title), g));
    }
    if (e.date) {
        quads.insert(Quad(s, v::prism_publication_date, date_literal(*e.date), g));
    }
    if (!e.seq.empty()) {
        quads.insert(Quad(s, v::fabio_has_sequence_identifier, Term::literal(e.seq), g));
    }
    if (e.part_of) {
        quads.insert(Quad(s, v::frbr_part_of, Term::iri(e.part_of->iri(base)), g));
    }
    if (e.pages) {
        quads.insert(Quad(s, v::frbr_embodiment, Term::iri(e.pages->omid.iri(base)), g));
    }
    for (const ent::IdSlot& slot : e.ids) {
        quads.insert(Quad(s, v::datacite_has_identifier, Term::iri(slot.omid.iri(base)), g));
    }
    for (const ent::ArState& ar : ent::derive_roles(e)) {
        quads.insert(
            Quad(s, v::pro_is_document_context_for, Term::iri(ar.omid.iri(base)), g));
    }
    return quads;
}

QuadSet map_re(const Embodiment& re, std::string_view base) {
    QuadSet quads;
    std::string g = kind_graph(EntityKind::re, base);
    std::string s = re.omid.iri(base);
    quads.insert(Quad(s, v::rdf_type, Term::iri(v::fabio_manifestation), g));
    if (!re.first_page.empty()) {
        quads.insert(Quad(s, v::prism_starting_page, Term::literal(re.first_page), g));
    }
    if (!re.last_page.empty()) {
        quads.insert(Quad(s, v::prism_ending_page, Term::literal(re.last_page), g));
    }
    return quads;
}

QuadSet map_ar(const ArState& ar, std::string_view base) {
    QuadSet quads;
    std::string g = kind_graph(EntityKind::ar, base);
    std::string s = ar.omid.iri(base);
    quads.insert(Quad(s, v::rdf_type, Term::iri(v::pro_role_in_time), g));
    quads.insert(Quad(s, v::pro_with_role, Term::iri(role_iri(ar.kind)), g));
    quads.insert(Quad(s, v::pro_is_held_by, Term::iri(ar.agent.iri(base)), g));
    if (ar.next) {
        quads.insert(Quad(s, v::pro_has_next, Term::iri(ar.next->iri(base)), g));
    }
    return quads;
}

QuadSet map_ra(const AgentRecord& ra, std::string_view base) {
    QuadSet quads;
    std::string g = kind_graph(EntityKind::ra, base);
    std::string s = ra.omid.iri(base);
    quads.insert(Quad(s, v::rdf_type, Term::iri(v::foaf_agent), g));
    if (ra.is_organization) {
        if (!ra.name.empty()) {
            quads.insert(Quad(s, v::foaf_name, Term::literal(ra.name), g));
        }
    } else {
        if (!ra.given_name.empty()) {
            quads.insert(Quad(s, v::foaf_given_name, Term::literal(ra.given_name), g));
        }
        if (!ra.family_name.empty()) {
            quads.insert(Quad(s, v::foaf_family_name, Term::literal(ra.family_name), g));
        }
    }
    for (const ent::IdSlot& slot : ra.ids) {
        quads.insert(Quad(s, v::datacite_has_identifier, Term::iri(slot.omid.iri(base)), g));
    }
    return quads;
}

QuadSet map_id_entity(const Omid& id_omid, const id::ExternalId& eid,
                      std::string_view base) {
    QuadSet quads;
    std::string g = kind_graph(EntityKind::id, base);
    std::string s = id_omid.iri(base);
    quads.insert(Quad(s, v::rdf_type, Term::iri(v::datacite_identifier), g));
    quads.insert(Quad(s, v::datacite_uses_identifier_scheme,
                      Term::iri(v::scheme_iri(eid.name())), g));
    quads.insert(Quad(s, v::literal_has_literal_value, Term::literal(eid.value), g));
    return quads;
}

QuadSet map_entity(const CuratedEntity& e,
                   const std::map<std::string, AgentRecord>& agents_by_omid,
                   std::string_view base, norm::Diagnostics* diags) {
    QuadSet quads = map_br(e, base, diags);
    if (e.pages) quads.merge(map_re(*e.pages, base));
    for (const ent::IdSlot& slot : e.ids) {
        quads.merge(map_id_entity(slot.omid, slot.eid, base));
    }
    for (const ent::ArState& ar : ent::derive_roles(e)) {
        quads.merge(map_ar(ar, base));
        auto it = agents_by_omid.find(ar.agent.str());
        if (it != agents_by_omid.end()) {
            quads.merge(map_ra(it->second, base));
            for (const ent::IdSlot& slot : it->second.ids) {
                quads.merge(map_id_entity(slot.omid, slot.eid, base));
            }
        }
    }
    return quads;
}

// ---------------------------------------------------------------------------
// Decoding

namespace {

std::optional<Omid> iri_omid(const Term& t, std::string_view base) {
    if (!t.is_iri()) return std::nullopt;
    return Omid::from_iri(t.value, base);
}

}  // namespace

std::optional<id::ExternalId> decode_id_entity(const QuadSource& source, const Omid& o,
                                               std::string_view base) {
    QuadSet quads = source.subject_quads(kind_graph(EntityKind::id, base), o.iri(base));
    if (quads.empty()) return std::nullopt;
    std::string scheme, value;
    for (const Quad& q : quads) {
        if (q.predicate == v::datacite_uses_identifier_scheme && q.object.is_iri()) {
            if (auto s = v::scheme_from_iri(q.object.value)) scheme = *s;
        } else if (q.predicate == v::literal_has_literal_value) {
            value = q.object.value;
        }
    }
    if (scheme.empty() || value.empty()) return std::nullopt;
    return id::ExternalId(scheme, value);
}

std::optional<Embodiment> decode_re(const QuadSource& source, const Omid& o,
                                    std::string_view base) {
    QuadSet quads = source.subject_quads(kind_graph(EntityKind::re, base), o.iri(base));
    if (quads.empty()) return std::nullopt;
    Embodiment re;
    re.omid = o;
    for (const Quad& q : quads) {
        if (q.predicate == v::prism_starting_page) re.first_page = q.object.value;
        if (q.predicate == v::prism_ending_page) re.last_page = q.object.value;
    }
    return re;
}

std::optional<ArState> decode_ar(const QuadSource& source, const Omid& o,
                                 std::string_view base) {
    QuadSet quads = source.subject_quads(kind_graph(EntityKind::ar, base), o.iri(base));
    if (quads.empty()) return std::nullopt;
    ArState ar;
    ar.omid = o;
    bool have_agent = false;
    for (const Quad& q : quads) {
        if (q.predicate == v::pro_with_role && q.object.is_iri()) {
            if (auto k = role_from_iri(q.object.value)) ar.kind = *k;
        } else if (q.predicate == v::pro_is_held_by) {
            if (auto a = iri_omid(q.object, base)) {
                ar.agent = *a;
                have_agent = true;
            }
        } else if (q.predicate == v::pro_has_next) {
            ar.next = iri_omid(q.object, base);
        }
    }
    if (!have_agent) return std::nullopt;
    return ar;
}

std::optional<AgentRecord> decode_ra(const QuadSource& source, const Omid& o,
                                     std::string_view base) {
    QuadSet quads = source.subject_quads(kind_graph(EntityKind::ra, base), o.iri(base));
    if (quads.empty()) return std::nullopt;
    AgentRecord ra;
    ra.omid = o;
    for (const Quad& q : quads) {
        if (q.predicate == v::foaf_given_name) ra.given_name = q.object.value;
        else if (q.predicate == v::foaf_family_name) ra.family_name = q.object.value;
        else if (q.predicate == v::foaf_name) {
            ra.name = q.object.value;
            ra.is_organization = true;
        } else if (q.predicate == v::datacite_has_identifier) {
            if (auto id_omid = iri_omid(q.object, base)) {
                if (auto eid = decode_id_entity(source, *id_omid, base)) {
                    ra.ids.push_back({*eid, *id_omid});
                }
            }
        }
    }
    std::sort(ra.ids.begin(), ra.ids.end(),
              [](const ent::IdSlot& a, const ent::IdSlot& b) { return a.omid < b.omid; });
    return ra;
}

std::optional<CuratedEntity> decode_br(const QuadSource& source, const Omid& o,
                                       std::string_view base) {
    QuadSet quads = source.subject_quads(kind_graph(EntityKind::br, base), o.iri(base));
    if (quads.empty()) return std::nullopt;
    CuratedEntity e;
    e.omid = o;
    std::vector<Omid> ar_refs;
    for (const Quad& q : quads) {
        if (q.predicate == v::rdf_type && q.object.is_iri()) {
            if (q.object.value != v::fabio_expression) {
                if (auto tag = v::tag_for_class(q.object.value)) e.type_tag = *tag;
            }
        } else if (q.predicate == v::dcterms_title) {
            e.title = q.object.value;
        } else if (q.predicate == v::prism_publication_date) {
            e.date = date_from_literal(q.object);
        } else if (q.predicate == v::fabio_has_sequence_identifier) {
            e.seq = q.object.value;
        } else if (q.predicate == v::frbr_part_of) {
            e.part_of = iri_omid(q.object, base);
        } else if (q.predicate == v::frbr_embodiment) {
            if (auto re_omid = iri_omid(q.object, base)) {
                e.pages = decode_re(source, *re_omid, base);
            }
        } else if (q.predicate == v::datacite_has_identifier) {
            if (auto id_omid = iri_omid(q.object, base)) {
                if (auto eid = decode_id_entity(source, *id_omid, base)) {
                    e.ids.push_back({*eid, *id_omid});
                }
            }
        } else if (q.predicate == v::pro_is_document_context_for) {
            if (auto ar = iri_omid(q.object, base)) ar_refs.push_back(*ar);
        }
    }
    std::sort(e.ids.begin(), e.ids.end(),
              [](const ent::IdSlot& a, const ent::IdSlot& b) { return a.omid < b.omid; });

    // Rebuild ordered role lists from the hasNext chains, one per role kind.
    std::vector<ArState> ars;
    for (const Omid& ar_omid : ar_refs) {
        if (auto ar = decode_ar(source, ar_omid, base)) ars.push_back(*ar);
    }
    for (ent::RoleKind kind :
         {ent::RoleKind::author, ent::RoleKind::editor, ent::RoleKind::publisher}) {
        std::vector<const ArState*> of_kind;
        for (const ArState& ar : ars) {
            if (ar.kind == kind) of_kind.push_back(&ar);
        }
        if (of_kind.empty()) continue;
        std::sort(of_kind.begin(), of_kind.end(),
                  [](const ArState* a, const ArState* b) { return a->omid < b->omid; });
        // Heads are role nodes nothing else points to.
        std::set<std::string> targets;
        for (const ArState* ar : of_kind) {
            if (ar->next) targets.insert(ar->next->str());
        }
        auto& list = e.roles(kind);
        std::set<std::string> visited;
        for (const ArState* head : of_kind) {
            if (targets.count(head->omid.str())) continue;
            const ArState* cur = head;
            while (cur && visited.insert(cur->omid.str()).second) {
                list.push_back({cur->omid, cur->agent});
                const ArState* next = nullptr;
                if (cur->next) {
                    for (const ArState* cand : of_kind) {
                        if (cand->omid == *cur->next) {
                            next = cand;
                            break;
                        }
                    }
                }
                cur = next;
            }
        }
        // Chain corruption fallback: keep any unvisited nodes, in omid order.
        for (const ArState* ar : of_kind) {
            if (!visited.count(ar->omid.str())) list.push_back({ar->omid, ar->agent});
        }
    }
    return e;
}

}  // namespace ocmeta::map
