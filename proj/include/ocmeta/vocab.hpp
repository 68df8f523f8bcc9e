#pragma once

#include <optional>
#include <string>
#include <string_view>

// IRIs of the SPAR-based data model fragment the mapper emits, plus the
// bibliographic type-tag tables.
namespace ocmeta::vocab {

inline constexpr std::string_view kFabio = "http://purl.org/spar/fabio/";
inline constexpr std::string_view kDoco = "http://purl.org/spar/doco/";
inline constexpr std::string_view kFr = "http://purl.org/spar/fr/";
inline constexpr std::string_view kPro = "http://purl.org/spar/pro/";
inline constexpr std::string_view kDatacite = "http://purl.org/spar/datacite/";
inline constexpr std::string_view kLiteral =
    "http://www.essepuntato.it/2010/06/literalreification/";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kPrism = "http://prismstandard.org/namespaces/basic/2.0/";
inline constexpr std::string_view kFrbr = "http://purl.org/vocab/frbr/core#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kOco = "https://w3id.org/oc/ontology/";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

// Classes
inline const std::string rdf_type = std::string(kRdf) + "type";
inline const std::string fabio_expression = std::string(kFabio) + "Expression";
inline const std::string fabio_manifestation = std::string(kFabio) + "Manifestation";
inline const std::string datacite_identifier = std::string(kDatacite) + "Identifier";
inline const std::string pro_role_in_time = std::string(kPro) + "RoleInTime";
inline const std::string foaf_agent = std::string(kFoaf) + "Agent";

// Properties
inline const std::string dcterms_title = std::string(kDcterms) + "title";
inline const std::string dcterms_description = std::string(kDcterms) + "description";
inline const std::string prism_publication_date = std::string(kPrism) + "publicationDate";
inline const std::string prism_starting_page = std::string(kPrism) + "startingPage";
inline const std::string prism_ending_page = std::string(kPrism) + "endingPage";
inline const std::string frbr_embodiment = std::string(kFrbr) + "embodiment";
inline const std::string frbr_part_of = std::string(kFrbr) + "partOf";
inline const std::string fabio_has_sequence_identifier =
    std::string(kFabio) + "hasSequenceIdentifier";
inline const std::string pro_is_document_context_for =
    std::string(kPro) + "isDocumentContextFor";
inline const std::string pro_has_next = std::string(kPro) + "hasNext";
inline const std::string pro_with_role = std::string(kPro) + "withRole";
inline const std::string pro_is_held_by = std::string(kPro) + "isHeldBy";
inline const std::string pro_author = std::string(kPro) + "author";
inline const std::string pro_editor = std::string(kPro) + "editor";
inline const std::string pro_publisher = std::string(kPro) + "publisher";
inline const std::string foaf_given_name = std::string(kFoaf) + "givenName";
inline const std::string foaf_family_name = std::string(kFoaf) + "familyName";
inline const std::string foaf_name = std::string(kFoaf) + "name";
inline const std::string datacite_has_identifier = std::string(kDatacite) + "hasIdentifier";
inline const std::string datacite_uses_identifier_scheme =
    std::string(kDatacite) + "usesIdentifierScheme";
inline const std::string literal_has_literal_value =
    std::string(kLiteral) + "hasLiteralValue";

// PROV-O / OCO provenance terms
inline const std::string prov_entity = std::string(kProv) + "Entity";
inline const std::string prov_specialization_of = std::string(kProv) + "specializationOf";
inline const std::string prov_was_derived_from = std::string(kProv) + "wasDerivedFrom";
inline const std::string prov_was_attributed_to = std::string(kProv) + "wasAttributedTo";
inline const std::string prov_had_primary_source = std::string(kProv) + "hadPrimarySource";
inline const std::string prov_generated_at_time = std::string(kProv) + "generatedAtTime";
inline const std::string prov_invalidated_at_time =
    std::string(kProv) + "invalidatedAtTime";
inline const std::string oco_has_update_query = std::string(kOco) + "hasUpdateQuery";

// Datatypes
inline const std::string xsd_date = std::string(kXsd) + "date";
inline const std::string xsd_gyear = std::string(kXsd) + "gYear";
inline const std::string xsd_gyearmonth = std::string(kXsd) + "gYearMonth";
inline const std::string xsd_datetime = std::string(kXsd) + "dateTime";
inline const std::string xsd_string = std::string(kXsd) + "string";

// Bibliographic type tag ("journal article") to class IRI. Unknown tags fall
// back to plain fabio:Expression.
const std::string& type_class(std::string_view tag);

// Reverse lookup used when decoding stored entities.
std::optional<std::string> tag_for_class(std::string_view iri);

// Venue class implied by the publication type of the things it contains,
// e.g. articles sit in journals. Empty when unknown.
std::string venue_tag_for(std::string_view publication_tag);

// Identifier scheme individuals live in the datacite namespace.
std::string scheme_iri(std::string_view scheme_name);
std::optional<std::string> scheme_from_iri(std::string_view iri);

}  // namespace ocmeta::vocab
