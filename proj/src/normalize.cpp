#include "ocmeta/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "ocmeta/unicode.hpp"

namespace ocmeta::norm {

namespace uni = ocmeta::uni;

std::string fold_spaces(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = uni::decode(text, i);
        if (uni::is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        uni::append_utf8(out, cp);
    }
    return out;
}

std::string fold_hyphens(std::string_view text, FieldKind kind) {
    switch (kind) {
        case FieldKind::id:
        case FieldKind::page:
        case FieldKind::volume:
        case FieldKind::issue:
        case FieldKind::author:
        case FieldKind::editor:
            break;
        default:
            return std::string(text);
    }
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = uni::decode(text, i);
        uni::append_utf8(out, uni::is_dash(cp) ? U'-' : cp);
    }
    return out;
}

namespace {

struct WordCase {
    bool has_cased = false;
    bool has_lower = false;
    bool internal_upper = false;
};

WordCase analyze_word(std::string_view word) {
    WordCase wc;
    std::size_t i = 0;
    while (i < word.size()) {
        char32_t cp = uni::decode(word, i);
        if (uni::is_lower(cp)) {
            wc.has_cased = true;
            wc.has_lower = true;
        } else if (uni::is_upper(cp)) {
            if (wc.has_cased) wc.internal_upper = true;
            wc.has_cased = true;
        }
    }
    return wc;
}

std::string recase_word(std::string_view word, bool force) {
    WordCase wc = analyze_word(word);
    if (!wc.has_cased) return std::string(word);
    if (!force && wc.internal_upper) return std::string(word);
    std::string out;
    out.reserve(word.size());
    bool first = true;
    std::size_t i = 0;
    while (i < word.size()) {
        char32_t cp = uni::decode(word, i);
        if (uni::is_letter(cp)) {
            if (first) {
                uni::append_utf8(out, uni::to_upper(cp));
                first = false;
            } else {
                uni::append_utf8(out, force ? uni::to_lower(cp) : cp);
            }
        } else {
            uni::append_utf8(out, cp);
        }
    }
    return out;
}

}  // namespace

std::string title_case(std::string_view text) {
    bool any_upper = false;
    bool any_lower = false;
    {
        std::size_t i = 0;
        while (i < text.size()) {
            char32_t cp = uni::decode(text, i);
            if (uni::is_lower(cp)) any_lower = true;
            if (uni::is_upper(cp)) any_upper = true;
        }
    }
    const bool all_caps = any_upper && !any_lower;

    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    std::size_t word_start = 0;
    bool in_word = false;
    auto flush = [&](std::size_t end) {
        if (!in_word) return;
        out += recase_word(text.substr(word_start, end - word_start), all_caps);
        in_word = false;
    };
    while (i < text.size()) {
        std::size_t at = i;
        char32_t cp = uni::decode(text, i);
        if (uni::is_space(cp)) {
            flush(at);
            uni::append_utf8(out, cp);
        } else if (!in_word) {
            in_word = true;
            word_start = at;
        }
    }
    flush(text.size());
    return out;
}

std::string NormalizedDate::render() const {
    char buf[16];
    if (day) {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, *month, *day);
    } else if (month) {
        std::snprintf(buf, sizeof buf, "%04d-%02d", year, *month);
    } else {
        std::snprintf(buf, sizeof buf, "%04d", year);
    }
    return buf;
}

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty() || s.size() > 9) return false;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

int days_in_month(int year, int month) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
        return leap ? 29 : 28;
    }
    return days[month - 1];
}

void note(Diagnostics* diags, std::string field, std::string message) {
    if (diags) diags->push_back({std::move(field), std::move(message)});
}

}  // namespace

std::optional<NormalizedDate> parse_date(std::string_view text, Diagnostics* diags) {
    std::string folded = fold_spaces(text);
    {
        std::string dashed;
        std::size_t i = 0;
        while (i < folded.size()) {
            char32_t cp = uni::decode(folded, i);
            uni::append_utf8(dashed, uni::is_dash(cp) ? U'-' : cp);
        }
        folded = std::move(dashed);
    }
    if (folded.empty()) return std::nullopt;

    std::vector<std::string_view> parts;
    std::string_view sv = folded;
    std::size_t start = 0;
    while (start <= sv.size()) {
        auto dash = sv.find('-', start);
        if (dash == std::string_view::npos) {
            parts.push_back(sv.substr(start));
            break;
        }
        parts.push_back(sv.substr(start, dash - start));
        start = dash + 1;
    }

    int year = 0;
    if (!parse_int(parts[0], year) || parts[0].size() > 4 || year > 9999) {
        note(diags, "pub_date", "invalid year in '" + folded + "', date discarded");
        return std::nullopt;
    }
    NormalizedDate date{year, std::nullopt, std::nullopt};
    if (parts.size() < 2) return date;

    int month = 0;
    if (!parse_int(parts[1], month) || month < 1 || month > 12) {
        note(diags, "pub_date", "invalid month in '" + folded + "', truncated to year");
        return date;
    }
    date.month = month;
    if (parts.size() < 3) return date;

    int day = 0;
    if (!parse_int(parts[2], day) || day < 1 || day > days_in_month(year, month) ||
        parts.size() > 3) {
        note(diags, "pub_date", "invalid day in '" + folded + "', truncated to month");
        return date;
    }
    date.day = day;
    return date;
}

// ---------------------------------------------------------------------------
// Keyword table

namespace {

struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string_view text;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    std::size_t word_start = 0;
    bool in_word = false;
    while (i < text.size()) {
        std::size_t at = i;
        char32_t cp = uni::decode(text, i);
        if (uni::is_space(cp)) {
            if (in_word) {
                tokens.push_back({word_start, at, text.substr(word_start, at - word_start)});
                in_word = false;
            }
        } else if (!in_word) {
            in_word = true;
            word_start = at;
        }
    }
    if (in_word) tokens.push_back({word_start, text.size(), text.substr(word_start)});
    return tokens;
}

bool is_edge_punct(char c) {
    switch (c) {
        case '.': case ',': case ':': case ';': case '(': case ')': case '[':
        case ']': case '\'': case '"': case '!': case '?': case '/': case '\\':
            return true;
        default:
            return false;
    }
}

std::string_view strip_edges(std::string_view t) {
    while (!t.empty() && is_edge_punct(t.front())) t.remove_prefix(1);
    while (!t.empty() && is_edge_punct(t.back())) t.remove_suffix(1);
    return t;
}

bool all_ascii_digits(std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

// Matches one keyword word against one token; is_last allows a directly
// attached number ("vol.35").
bool word_matches(std::string_view token, std::string_view keyword, bool is_last,
                  std::string* number) {
    std::string_view t = strip_edges(token);
    std::string folded = uni::lower(t);
    if (folded == keyword) return true;
    if (!is_last) return false;
    if (folded.size() <= keyword.size() || folded.rfind(keyword, 0) != 0) return false;
    std::string_view rest = std::string_view(folded).substr(keyword.size());
    if (!rest.empty() && (rest.front() == '.' || rest.front() == ':')) rest.remove_prefix(1);
    if (!all_ascii_digits(rest)) return false;
    if (number) *number = std::string(rest);
    return true;
}

}  // namespace

void KeywordTable::add_volume(std::string_view keyword) {
    Keyword k;
    for (const Token& t : tokenize(keyword)) k.words.push_back(uni::lower(t.text));
    if (!k.words.empty()) volume_.push_back(std::move(k));
}

void KeywordTable::add_issue(std::string_view keyword) {
    Keyword k;
    for (const Token& t : tokenize(keyword)) k.words.push_back(uni::lower(t.text));
    if (!k.words.empty()) issue_.push_back(std::move(k));
}

KeywordTable KeywordTable::defaults() {
    KeywordTable t;
    for (std::string_view k :
         {"original series", "volume", "volumes", "vol", "vols", "tome", "tomo", "cilt",
          "band", "jahrgang"}) {
        t.add_volume(k);
    }
    for (std::string_view k :
         {"special issue", "hors-série", "hors série", "hors-serie", "özel sayı",
          "numéro spécial", "n° spécial", "issue", "issues", "sayı", "n°", "nº"}) {
        t.add_issue(k);
    }
    return t;
}

KeywordTable KeywordTable::load(const std::filesystem::path& file) {
    KeywordTable t;
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read keyword table: " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = fold_spaces(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        auto space = trimmed.find(' ');
        if (space == std::string::npos) continue;
        std::string kind = trimmed.substr(0, space);
        std::string keyword = trimmed.substr(space + 1);
        if (kind == "volume") t.add_volume(keyword);
        else if (kind == "issue") t.add_issue(keyword);
        else throw std::runtime_error("keyword class must be 'volume' or 'issue': " + line);
    }
    return t;
}

KeywordTable::Match KeywordTable::find(const std::vector<Keyword>& keys,
                                       std::string_view text) {
    std::vector<Token> tokens = tokenize(text);
    // Longer keywords first so "special issue" beats "issue" at a position.
    std::vector<const Keyword*> order;
    order.reserve(keys.size());
    for (const Keyword& k : keys) order.push_back(&k);
    std::stable_sort(order.begin(), order.end(), [](const Keyword* a, const Keyword* b) {
        return a->words.size() > b->words.size();
    });

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (const Keyword* k : order) {
            if (i + k->words.size() > tokens.size()) continue;
            std::string embedded;
            bool ok = true;
            for (std::size_t j = 0; j < k->words.size(); ++j) {
                bool last = j + 1 == k->words.size();
                if (!word_matches(tokens[i + j].text, k->words[j], last,
                                  last ? &embedded : nullptr)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            Match m;
            m.begin = tokens[i].begin;
            std::size_t j = i + k->words.size() - 1;
            m.end = tokens[j].end;
            if (!embedded.empty()) {
                m.number = embedded;
            } else if (j + 1 < tokens.size()) {
                std::string_view next = strip_edges(tokens[j + 1].text);
                if (all_ascii_digits(next)) {
                    m.number = std::string(next);
                    m.end = tokens[j + 1].end;
                }
            }
            return m;
        }
    }
    return {};
}

KeywordTable::Match KeywordTable::find_volume(std::string_view text) const {
    return find(volume_, text);
}

KeywordTable::Match KeywordTable::find_issue(std::string_view text) const {
    return find(issue_, text);
}

bool KeywordTable::has_volume_keyword(std::string_view text) const {
    return find_volume(text).begin != std::string::npos;
}

bool KeywordTable::has_issue_keyword(std::string_view text) const {
    return find_issue(text).begin != std::string::npos;
}

ContainerKind classify_container(std::string_view text, const KeywordTable& table) {
    if (text.empty()) return ContainerKind::neither;
    bool vol = table.has_volume_keyword(text);
    bool iss = table.has_issue_keyword(text);
    if (vol && !iss) return ContainerKind::volume;
    if (iss && !vol) return ContainerKind::issue;
    return ContainerKind::neither;
}

ContainerKind classify_container(std::string_view text) {
    static const KeywordTable table = KeywordTable::defaults();
    return classify_container(text, table);
}

// ---------------------------------------------------------------------------
// Volume/issue repair

namespace {

std::string trim_ascii(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && s[b] == ' ') ++b;
    while (e > b && s[e - 1] == ' ') --e;
    return std::string(s.substr(b, e - b));
}

struct SplitParts {
    std::string volume;
    std::string issue;
};

// Class 1: a cell holding both a volume and an issue designation.
std::optional<SplitParts> split_combined(std::string_view cell, const KeywordTable& table) {
    auto vm = table.find_volume(cell);
    auto im = table.find_issue(cell);
    if (vm.begin == std::string::npos || im.begin == std::string::npos) return std::nullopt;
    if (vm.begin == im.begin) return std::nullopt;

    SplitParts parts;
    if (vm.begin < im.begin) {
        parts.volume = !vm.number.empty() ? vm.number
                                          : trim_ascii(cell.substr(0, im.begin));
        parts.issue = !im.number.empty() ? im.number : trim_ascii(cell.substr(im.begin));
    } else {
        parts.issue = !im.number.empty() ? im.number
                                         : trim_ascii(cell.substr(0, vm.begin));
        parts.volume = !vm.number.empty() ? vm.number : trim_ascii(cell.substr(vm.begin));
    }
    return parts;
}

bool is_ascii_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Classes 2 and 3: leading/trailing punctuation runs are deleted.
std::string strip_affixes(std::string_view cell) {
    std::size_t b = 0, e = cell.size();
    auto junk = [](char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return u < 0x80 && !is_ascii_alnum(c);
    };
    while (b < e && junk(cell[b])) ++b;
    while (e > b && junk(cell[e - 1])) --e;
    return std::string(cell.substr(b, e - b));
}

// Class 4: digit groups glued by mis-encoded separators; only the extreme
// numbers are retained, joined by a single hyphen. ASCII letters mark real
// content and block the repair; high code points between digit groups are
// taken for mojibake ("38â39").
std::string repair_encoding(const std::string& cell) {
    std::vector<std::string> groups;
    std::string current;
    bool garbage_only = true;
    std::size_t i = 0;
    while (i < cell.size()) {
        char32_t cp = uni::decode(cell, i);
        if (cp >= '0' && cp <= '9') {
            current.push_back(static_cast<char>(cp));
            continue;
        }
        if (!current.empty()) {
            groups.push_back(std::move(current));
            current.clear();
        }
        if (cp < 0x80 && is_ascii_alnum(static_cast<char>(cp))) {
            garbage_only = false;
        }
    }
    if (!current.empty()) groups.push_back(std::move(current));
    if (groups.size() < 2 || !garbage_only) return cell;
    return groups.front() + "-" + groups.back();
}

std::string format_repair(std::string_view cell) {
    std::string c = strip_affixes(cell);
    return repair_encoding(c);
}

}  // namespace

VolumeIssue repair_volume_issue(std::string_view volume_cell, std::string_view issue_cell,
                                const KeywordTable& table, Diagnostics* diags) {
    std::string vol = fold_spaces(fold_hyphens(volume_cell, FieldKind::volume));
    std::string iss = fold_spaces(fold_hyphens(issue_cell, FieldKind::issue));

    if (auto parts = split_combined(vol, table)) {
        vol = parts->volume;
        if (iss.empty()) {
            iss = parts->issue;
        } else if (iss != parts->issue) {
            note(diags, "volume",
                 "combined cell carried issue value '" + parts->issue +
                     "' but issue field is occupied; value dropped");
        }
    } else if (auto p = split_combined(iss, table)) {
        iss = p->issue;
        if (vol.empty()) {
            vol = p->volume;
        } else if (vol != p->volume) {
            note(diags, "issue",
                 "combined cell carried volume value '" + p->volume +
                     "' but volume field is occupied; value dropped");
        }
    }

    if (!vol.empty()) vol = format_repair(vol);
    if (!iss.empty()) iss = format_repair(iss);

    ContainerKind vk = classify_container(vol, table);
    ContainerKind ik = classify_container(iss, table);
    if (vk == ContainerKind::issue && ik == ContainerKind::volume) {
        std::swap(vol, iss);
    } else if (vk == ContainerKind::issue) {
        if (iss.empty()) {
            iss = std::move(vol);
            vol.clear();
        } else if (ik == ContainerKind::neither) {
            std::swap(vol, iss);
        } else {
            note(diags, "volume", "issue-like value '" + vol +
                                      "' dropped; issue field already holds one");
            vol.clear();
        }
    } else if (ik == ContainerKind::volume) {
        if (vol.empty()) {
            vol = std::move(iss);
            iss.clear();
        } else if (vk == ContainerKind::neither) {
            std::swap(vol, iss);
        } else {
            note(diags, "issue", "volume-like value '" + iss +
                                     "' dropped; volume field already holds one");
            iss.clear();
        }
    }
    return {std::move(vol), std::move(iss)};
}

VolumeIssue repair_volume_issue(std::string_view volume_cell, std::string_view issue_cell,
                                Diagnostics* diags) {
    static const KeywordTable table = KeywordTable::defaults();
    return repair_volume_issue(volume_cell, issue_cell, table, diags);
}

}  // namespace ocmeta::norm
