#pragma once
// Pluggable claim-extraction and entailment-checking backends.
//
// SENTENCE and LEXICAL are fully deterministic local backends for offline
// runs and golden tests; FIXTURE replays judgments recorded per query_id;
// the remote judge lives in judge_client.hpp. Backends must be callable
// from multiple threads concurrently, so implementations here are
// read-only after construction.

#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "claimeval/core.hpp"
#include "claimeval/text.hpp"

namespace claimeval {

// Raised when a backend cannot produce a usable answer for a request and no
// retry can help (missing fixture entry, bad fixture data, count mismatch).
class BackendError : public Error {
  public:
    using Error::Error;
};

enum class ExtractorKind { kFixture, kSentence, kRemoteJudge };
enum class CheckerKind { kFixture, kLexical, kRemoteJudge };

constexpr std::string_view extractor_kind_name(ExtractorKind k) {
    switch (k) {
        case ExtractorKind::kFixture: return "FIXTURE";
        case ExtractorKind::kSentence: return "SENTENCE";
        case ExtractorKind::kRemoteJudge: return "REMOTE_JUDGE";
    }
    return "";
}

constexpr std::string_view checker_kind_name(CheckerKind k) {
    switch (k) {
        case CheckerKind::kFixture: return "FIXTURE";
        case CheckerKind::kLexical: return "LEXICAL";
        case CheckerKind::kRemoteJudge: return "REMOTE_JUDGE";
    }
    return "";
}

inline std::optional<ExtractorKind> extractor_kind_from_name(std::string_view name) {
    if (name == "FIXTURE") return ExtractorKind::kFixture;
    if (name == "SENTENCE") return ExtractorKind::kSentence;
    if (name == "REMOTE_JUDGE") return ExtractorKind::kRemoteJudge;
    return std::nullopt;
}

inline std::optional<CheckerKind> checker_kind_from_name(std::string_view name) {
    if (name == "FIXTURE") return CheckerKind::kFixture;
    if (name == "LEXICAL") return CheckerKind::kLexical;
    if (name == "REMOTE_JUDGE") return CheckerKind::kRemoteJudge;
    return std::nullopt;
}

// What a claim list is being checked against; lets replay backends route a
// request to the right stored matrix.
enum class ReferenceKind { kGtAnswer, kResponse, kChunk };

struct ExtractionRequest {
    std::string query_id;
    std::string text;
    ClaimSource source = ClaimSource::kResponse;
};

struct CheckRequest {
    std::string query_id;
    ClaimSource claim_source = ClaimSource::kResponse;
    std::vector<std::string> claims;  // normalized claim texts, order preserved
    ReferenceKind reference_kind = ReferenceKind::kGtAnswer;
    size_t chunk_index = 0;  // meaningful only when reference_kind == kChunk
    std::string reference;
};

class Extractor {
  public:
    virtual ~Extractor() = default;
    virtual std::vector<Claim> extract(const ExtractionRequest& request) const = 0;
    virtual std::string_view kind_name() const = 0;
};

class Checker {
  public:
    // Returns one label per claim, order-aligned; empty input yields an
    // empty result without touching any backend.
    virtual std::vector<EntailmentLabel> check(const CheckRequest& request) const = 0;
    virtual std::string_view kind_name() const = 0;
    virtual ~Checker() = default;
};

// ---------------------------------------------------------------------------
// SENTENCE: every sentence of the input is one claim.
// ---------------------------------------------------------------------------

class SentenceExtractor final : public Extractor {
  public:
    std::vector<Claim> extract(const ExtractionRequest& request) const override {
        return make_claims(split_sentences(request.text), request.source);
    }
    std::string_view kind_name() const override { return "SENTENCE"; }
};

// ---------------------------------------------------------------------------
// LEXICAL: a claim is entailed iff its normalized text is a contiguous
// substring of the normalized reference; everything else is NEUTRAL.
// ---------------------------------------------------------------------------

class LexicalChecker final : public Checker {
  public:
    std::vector<EntailmentLabel> check(const CheckRequest& request) const override {
        std::vector<EntailmentLabel> labels;
        labels.reserve(request.claims.size());
        const std::string reference = normalize_text(request.reference);
        for (const std::string& claim : request.claims) {
            const std::string needle = normalize_text(claim);
            const bool hit = !needle.empty() && reference.find(needle) != std::string::npos;
            labels.push_back(hit ? EntailmentLabel::kEntailment : EntailmentLabel::kNeutral);
        }
        return labels;
    }
    std::string_view kind_name() const override { return "LEXICAL"; }
};

// ---------------------------------------------------------------------------
// FIXTURE: replay from files keyed by query_id.
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json parse_fixture_line(const std::string& line, const std::string& path,
                                         size_t line_no) {
    nlohmann::json row = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (row.is_discarded() || !row.is_object()) {
        throw BackendError(path + ":" + std::to_string(line_no) + ": not a JSON object");
    }
    if (!row.contains("query_id") || !row["query_id"].is_string()) {
        throw BackendError(path + ":" + std::to_string(line_no) + ": missing string query_id");
    }
    return row;
}

inline std::vector<std::string> string_list(const nlohmann::json& value, const std::string& where) {
    if (!value.is_array()) throw BackendError(where + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_string()) throw BackendError(where + ": expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::vector<std::vector<std::string>> string_matrix(const nlohmann::json& value,
                                                           const std::string& where) {
    if (!value.is_array()) throw BackendError(where + ": expected an array of arrays");
    std::vector<std::vector<std::string>> out;
    out.reserve(value.size());
    for (const auto& row : value) {
        out.push_back(string_list(row, where));
    }
    return out;
}

}  // namespace detail

// Claim lists recorded per query: one JSON object per line with fields
// query_id, response_claims, gt_claims. Stored lists must already be in
// canonical form (normalized, unique) and are returned verbatim.
class FixtureExtractor final : public Extractor {
  public:
    explicit FixtureExtractor(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) throw BackendError("cannot open extractor fixture: " + path);
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json row = detail::parse_fixture_line(line, path, line_no);
            const std::string where = path + ":" + std::to_string(line_no);
            Entry entry;
            entry.response_claims = detail::string_list(row.value("response_claims", nlohmann::json::array()), where + " response_claims");
            entry.gt_claims = detail::string_list(row.value("gt_claims", nlohmann::json::array()), where + " gt_claims");
            entries_[row["query_id"].get<std::string>()] = std::move(entry);
        }
    }

    std::vector<Claim> extract(const ExtractionRequest& request) const override {
        const auto it = entries_.find(request.query_id);
        if (it == entries_.end()) {
            throw BackendError("no extractor fixture entry for query_id '" + request.query_id +
                               "' in " + path_);
        }
        const std::vector<std::string>& stored =
            request.source == ClaimSource::kResponse ? it->second.response_claims
                                                     : it->second.gt_claims;
        std::vector<Claim> claims = make_claims(stored, request.source);
        if (claims.size() != stored.size()) {
            throw BackendError("extractor fixture for query_id '" + request.query_id +
                               "' is not in canonical form (blank or duplicate claims)");
        }
        for (size_t i = 0; i < claims.size(); ++i) {
            if (claims[i].text != stored[i]) {
                throw BackendError("extractor fixture for query_id '" + request.query_id +
                                   "' is not normalized: claim " + std::to_string(i));
            }
        }
        return claims;
    }

    std::string_view kind_name() const override { return "FIXTURE"; }

  private:
    struct Entry {
        std::vector<std::string> response_claims;
        std::vector<std::string> gt_claims;
    };
    std::string path_;
    std::map<std::string, Entry> entries_;
};

// Label matrices recorded per query: one JSON object per line with fields
// query_id, response_vs_gt, gt_vs_response (label lists) and
// response_vs_chunks, gt_vs_chunks (label matrices, row = claim,
// column = chunk). Labels are stored as strings and parsed lazily so one
// bad entry poisons only its own query.
class FixtureChecker final : public Checker {
  public:
    explicit FixtureChecker(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) throw BackendError("cannot open checker fixture: " + path);
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json row = detail::parse_fixture_line(line, path, line_no);
            const std::string where = path + ":" + std::to_string(line_no);
            Entry entry;
            entry.response_vs_gt = detail::string_list(row.value("response_vs_gt", nlohmann::json::array()), where + " response_vs_gt");
            entry.gt_vs_response = detail::string_list(row.value("gt_vs_response", nlohmann::json::array()), where + " gt_vs_response");
            entry.response_vs_chunks = detail::string_matrix(row.value("response_vs_chunks", nlohmann::json::array()), where + " response_vs_chunks");
            entry.gt_vs_chunks = detail::string_matrix(row.value("gt_vs_chunks", nlohmann::json::array()), where + " gt_vs_chunks");
            entries_[row["query_id"].get<std::string>()] = std::move(entry);
        }
    }

    std::vector<EntailmentLabel> check(const CheckRequest& request) const override {
        if (request.claims.empty()) return {};
        const auto it = entries_.find(request.query_id);
        if (it == entries_.end()) {
            throw BackendError("no checker fixture entry for query_id '" + request.query_id +
                               "' in " + path_);
        }
        const Entry& entry = it->second;
        std::vector<std::string> raw;
        if (request.reference_kind == ReferenceKind::kChunk) {
            const auto& matrix = request.claim_source == ClaimSource::kResponse
                                     ? entry.response_vs_chunks
                                     : entry.gt_vs_chunks;
            raw.reserve(matrix.size());
            for (size_t i = 0; i < matrix.size(); ++i) {
                if (request.chunk_index >= matrix[i].size()) {
                    throw BackendError("checker fixture for query_id '" + request.query_id +
                                       "' has no chunk column " +
                                       std::to_string(request.chunk_index));
                }
                raw.push_back(matrix[i][request.chunk_index]);
            }
        } else {
            raw = request.reference_kind == ReferenceKind::kGtAnswer ? entry.response_vs_gt
                                                                     : entry.gt_vs_response;
        }
        if (raw.size() != request.claims.size()) {
            throw BackendError("checker fixture for query_id '" + request.query_id + "' has " +
                               std::to_string(raw.size()) + " labels for " +
                               std::to_string(request.claims.size()) + " claims");
        }
        std::vector<EntailmentLabel> labels;
        labels.reserve(raw.size());
        for (const std::string& text : raw) {
            const auto label = parse_label(text);
            if (!label) {
                throw BackendError("checker fixture for query_id '" + request.query_id +
                                   "' has unknown label '" + text + "'");
            }
            labels.push_back(*label);
        }
        return labels;
    }

    std::string_view kind_name() const override { return "FIXTURE"; }

  private:
    struct Entry {
        std::vector<std::string> response_vs_gt;
        std::vector<std::string> gt_vs_response;
        std::vector<std::vector<std::string>> response_vs_chunks;
        std::vector<std::vector<std::string>> gt_vs_chunks;
    };
    std::string path_;
    std::map<std::string, Entry> entries_;
};

}  // namespace claimeval
