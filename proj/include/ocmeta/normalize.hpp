#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocmeta::norm {

struct Diagnostic {
    std::string field;
    std::string message;
};
using Diagnostics = std::vector<Diagnostic>;

// ISO-8601 date kept at the precision the input justifies.
struct NormalizedDate {
    int year = 0;
    std::optional<int> month;
    std::optional<int> day;

    // YYYY, YYYY-MM or YYYY-MM-DD.
    std::string render() const;
    friend bool operator==(const NormalizedDate&, const NormalizedDate&) = default;
};

// Replaces alternative space characters with U+0020, collapses runs and
// trims the ends. Idempotent.
std::string fold_spaces(std::string_view text);

enum class FieldKind { id, page, volume, issue, author, editor, title, venue, other };

// Dash-like characters become hyphen-minus in the fields the rule covers
// (ids, pages, volumes, issues, authors, editors); other fields pass through.
std::string fold_hyphens(std::string_view text, FieldKind kind);

// Capitalizes each word except those with capitals after the first cased
// letter (likely acronyms); an entirely capitalised text is recased wholesale.
std::string title_case(std::string_view text);

// Truncates from the first invalid component; a bad year discards the value.
std::optional<NormalizedDate> parse_date(std::string_view text, Diagnostics* diags = nullptr);

enum class ContainerKind { volume, issue, neither };

struct ContainerValue {
    ContainerKind kind = ContainerKind::neither;
    std::string value;
};

// Per-language keyword lists driving volume/issue classification. Config
// file format: one "volume <keyword>" or "issue <keyword>" per line.
class KeywordTable {
  public:
    static KeywordTable defaults();
    static KeywordTable load(const std::filesystem::path& file);

    void add_volume(std::string_view keyword);
    void add_issue(std::string_view keyword);

    bool has_volume_keyword(std::string_view text) const;
    bool has_issue_keyword(std::string_view text) const;

    // Byte range of the first match, with the trailing number (if directly
    // following) included; npos start when absent.
    struct Match {
        std::size_t begin = std::string::npos;
        std::size_t end = 0;
        std::string number;  // digits following the keyword, possibly empty
    };
    Match find_volume(std::string_view text) const;
    Match find_issue(std::string_view text) const;

  private:
    struct Keyword {
        std::vector<std::string> words;  // lowercased tokens
    };
    static Match find(const std::vector<Keyword>& keys, std::string_view text);
    std::vector<Keyword> volume_;
    std::vector<Keyword> issue_;
};

ContainerKind classify_container(std::string_view text, const KeywordTable& table);
ContainerKind classify_container(std::string_view text);

struct VolumeIssue {
    std::string volume;
    std::string issue;
};

// Applies the container-field repairs in order: split of combined values,
// prefix/suffix deletion, encoding repair, and cross-field moves/swaps.
// Never fails; unusable values are dropped with a diagnostic.
VolumeIssue repair_volume_issue(std::string_view volume_cell, std::string_view issue_cell,
                                const KeywordTable& table, Diagnostics* diags = nullptr);
VolumeIssue repair_volume_issue(std::string_view volume_cell, std::string_view issue_cell,
                                Diagnostics* diags = nullptr);

}  // namespace ocmeta::norm
