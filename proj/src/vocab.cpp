#include "ocmeta/vocab.hpp"

#include <map>

namespace ocmeta::vocab {

namespace {

const std::map<std::string, std::string, std::less<>>& type_table() {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"journal article", std::string(kFabio) + "JournalArticle"},
        {"book chapter", std::string(kFabio) + "BookChapter"},
        {"proceedings article", std::string(kFabio) + "ProceedingsPaper"},
        {"journal issue", std::string(kFabio) + "JournalIssue"},
        {"book", std::string(kFabio) + "Book"},
        {"journal volume", std::string(kFabio) + "JournalVolume"},
        {"dataset", std::string(kFabio) + "DataFile"},
        {"web content", std::string(kFabio) + "WebContent"},
        {"report", std::string(kFabio) + "ReportDocument"},
        {"reference book", std::string(kFabio) + "ReferenceBook"},
        {"reference entry", std::string(kFabio) + "ReferenceEntry"},
        {"journal", std::string(kFabio) + "Journal"},
        {"proceedings", std::string(kFabio) + "AcademicProceedings"},
        {"book series", std::string(kFabio) + "BookSeries"},
        {"dissertation", std::string(kFabio) + "Thesis"},
        {"standard", std::string(kFabio) + "SpecificationDocument"},
        {"book section", std::string(kFabio) + "ExpressionCollection"},
        {"series", std::string(kFabio) + "Series"},
        {"peer review", std::string(kFr) + "ReviewVersion"},
        {"book part", std::string(kDoco) + "Part"},
        {"book set", std::string(kFabio) + "BookSet"},
    };
    return table;
}

}  // namespace

const std::string& type_class(std::string_view tag) {
    const auto& table = type_table();
    auto it = table.find(tag);
    if (it != table.end()) return it->second;
    return fabio_expression;
}

std::optional<std::string> tag_for_class(std::string_view iri) {
    for (const auto& [tag, cls] : type_table()) {
        if (cls == iri) return tag;
    }
    return std::nullopt;
}

std::string venue_tag_for(std::string_view publication_tag) {
    if (publication_tag == "journal article" || publication_tag == "journal issue" ||
        publication_tag == "journal volume") {
        return "journal";
    }
    if (publication_tag == "book chapter" || publication_tag == "book part" ||
        publication_tag == "book section" || publication_tag == "reference entry") {
        return "book";
    }
    if (publication_tag == "proceedings article") return "proceedings";
    return {};
}

std::string scheme_iri(std::string_view scheme_name) {
    return std::string(kDatacite) + std::string(scheme_name);
}

std::optional<std::string> scheme_from_iri(std::string_view iri) {
    if (iri.substr(0, kDatacite.size()) != kDatacite) return std::nullopt;
    auto rest = iri.substr(kDatacite.size());
    if (rest.empty() || rest == "Identifier" || rest.find('/') != std::string_view::npos) {
        return std::nullopt;
    }
    return std::string(rest);
}

}  // namespace ocmeta::vocab
