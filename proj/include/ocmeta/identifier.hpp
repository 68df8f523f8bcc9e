#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ocmeta::id {

enum class Scheme { doi, pmid, issn, isbn, orcid, omid, other };

enum class Existence { verified, not_found, unknown };

Scheme scheme_from(std::string_view name);
std::string_view scheme_name(Scheme s);

// A normalized (scheme, value) pair. scheme_name_ carries the lowercase
// scheme text so arbitrary schemes survive round trips.
struct ExternalId {
    Scheme scheme = Scheme::other;
    std::string scheme_name_;
    std::string value;
    bool syntax_valid = true;
    Existence existence = Existence::unknown;

    ExternalId() = default;
    ExternalId(Scheme s, std::string v);
    ExternalId(std::string scheme_text, std::string v);

    const std::string& name() const { return scheme_name_; }
    // "scheme:value" token form.
    std::string token() const { return scheme_name_ + ":" + value; }

    friend bool operator==(const ExternalId& a, const ExternalId& b) {
        return a.scheme_name_ == b.scheme_name_ && a.value == b.value;
    }
    friend auto operator<=>(const ExternalId& a, const ExternalId& b) {
        if (auto c = a.scheme_name_ <=> b.scheme_name_; c != 0) return c;
        return a.value <=> b.value;
    }
};

struct NormalizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical forms: DOI lowercased with resolver URL stripped, ISSN grouped
// 4-4 uppercase, ISBN without separators, ORCID grouped 4x4, PMID without
// leading zeros. Idempotent. Throws NormalizeError when nothing is left.
std::string normalize_id(Scheme scheme, std::string_view raw);

// Check-digit / pattern validation on canonical values. Never throws;
// schemes without a formula pass.
bool validate_syntax(Scheme scheme, std::string_view canonical);

class ExistenceClient {
  public:
    virtual ~ExistenceClient() = default;
    virtual Existence lookup(Scheme scheme, const std::string& value) = 0;
};

class OfflineExistenceClient final : public ExistenceClient {
  public:
    Existence lookup(Scheme, const std::string&) override { return Existence::unknown; }
};

// Resolves against registry endpoints given as URL templates with an {id}
// placeholder. 2xx/3xx counts as registered, 404 as unassigned; anything
// else (including timeouts, after one retry) stays unknown.
class HttpExistenceClient final : public ExistenceClient {
  public:
    HttpExistenceClient(std::string doi_template, std::string orcid_template,
                        int timeout_seconds = 10);
    Existence lookup(Scheme scheme, const std::string& value) override;

  private:
    std::string doi_template_;
    std::string orcid_template_;
    int timeout_seconds_;
};

// Thread-safe per-(scheme,value) result cache, persisted as two-column CSV
// (token, status).
class ExistenceCache {
  public:
    Existence get_or_fetch(Scheme scheme, const std::string& value, ExistenceClient& client);
    std::optional<Existence> cached(Scheme scheme, const std::string& value) const;
    void put(Scheme scheme, const std::string& value, Existence e);

    void load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;
    std::size_t size() const;

  private:
    mutable std::mutex mutex_;
    std::map<std::string, Existence> entries_;
};

}  // namespace ocmeta::id
