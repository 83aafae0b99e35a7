#pragma once
// Core evaluation data model: instances, claims, entailment judgments, and
// the relevant/irrelevant chunk classification every metric builds on.
//
// All types are immutable value objects once constructed; the operations
// here are pure functions and safe to call from any thread.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "claimeval/text.hpp"

namespace claimeval {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural inconsistency in a judgment set (matrix/vector shape).
struct DimensionError : Error {
    using Error::Error;
};

// Semantic rejection, e.g. a ground-truth answer with zero claims.
struct ValidationError : Error {
    using Error::Error;
};

enum class ClaimSource { kResponse, kGroundTruth };

inline std::string_view claim_source_name(ClaimSource s) {
    return s == ClaimSource::kResponse ? "response" : "ground_truth";
}

// An atomic factual statement. `text` is stored normalized (see
// normalize_text); claim_id is the position within its claim list.
struct Claim {
    int claim_id = 0;
    std::string text;
    ClaimSource source = ClaimSource::kResponse;

    friend bool operator==(const Claim&, const Claim&) = default;
};

enum class EntailmentLabel { kEntailment, kNeutral, kContradiction };

// Three-way labels are kept in storage but collapse to a two-way
// membership for metrics: only Entailment counts as "in".
constexpr bool entails(EntailmentLabel label) {
    return label == EntailmentLabel::kEntailment;
}

inline std::string_view label_name(EntailmentLabel label) {
    switch (label) {
        case EntailmentLabel::kEntailment: return "entailment";
        case EntailmentLabel::kNeutral: return "neutral";
        case EntailmentLabel::kContradiction: return "contradiction";
    }
    return "neutral";
}

inline std::optional<EntailmentLabel> parse_label(std::string_view raw) {
    std::string s = normalize_text(raw);
    if (s == "entailment") return EntailmentLabel::kEntailment;
    if (s == "neutral") return EntailmentLabel::kNeutral;
    if (s == "contradiction") return EntailmentLabel::kContradiction;
    return std::nullopt;
}

struct RetrievedChunk {
    std::string doc_id;
    int chunk_index = 0;
    std::string text;

    friend bool operator==(const RetrievedChunk&, const RetrievedChunk&) = default;
};

// One evaluation tuple. `retrieved` keeps the retriever's rank order and
// is never re-sorted.
struct RagInstance {
    std::string query_id;
    std::string query;
    std::string gt_answer;
    std::string response;
    std::vector<RetrievedChunk> retrieved;

    friend bool operator==(const RagInstance&, const RagInstance&) = default;
};

// Dense boolean matrix; avoids vector<vector<bool>> and keeps the column
// count even when there are zero rows.
class BoolMatrix {
public:
    BoolMatrix() = default;
    BoolMatrix(size_t rows, size_t cols, bool fill = false)
        : rows_(rows), cols_(cols), cells_(rows * cols, fill ? 1 : 0) {}

    static BoolMatrix from_rows(const std::vector<std::vector<bool>>& rows, size_t cols_if_empty = 0) {
        BoolMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) {
                throw DimensionError("ragged boolean matrix rows");
            }
            for (size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    bool at(size_t r, size_t c) const { return cells_[r * cols_ + c] != 0; }
    void set(size_t r, size_t c, bool v) { cells_[r * cols_ + c] = v ? 1 : 0; }

    // True iff any cell in row r is set.
    bool row_any(size_t r) const {
        for (size_t c = 0; c < cols_; ++c) {
            if (at(r, c)) return true;
        }
        return false;
    }

    // True iff any cell in row r is set at a column where mask[c] == wanted.
    bool row_any_masked(size_t r, const std::vector<bool>& mask, bool wanted) const {
        for (size_t c = 0; c < cols_; ++c) {
            if (mask[c] == wanted && at(r, c)) return true;
        }
        return false;
    }

    std::vector<std::vector<bool>> to_rows() const {
        std::vector<std::vector<bool>> out(rows_, std::vector<bool>(cols_));
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) out[r][c] = at(r, c);
        return out;
    }

    friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<uint8_t> cells_;
};

// The four entailment structures all metrics are computed from.
//
//   response_vs_gt[i]        response claim i entailed by the gt answer
//   gt_vs_response[i]        gt claim i entailed by the response
//   response_vs_chunks[i][j] response claim i entailed by chunk j
//   gt_vs_chunks[i][j]       gt claim i entailed by chunk j
//
// Membership in "the retrieved context" is always derived as an OR over
// the corresponding matrix row, never stored.
struct JudgmentSet {
    std::vector<Claim> response_claims;
    std::vector<Claim> gt_claims;
    std::vector<bool> response_vs_gt;
    std::vector<bool> gt_vs_response;
    BoolMatrix response_vs_chunks;
    BoolMatrix gt_vs_chunks;

    size_t claim_count() const { return response_claims.size(); }
    size_t gt_claim_count() const { return gt_claims.size(); }
    size_t chunk_count() const { return gt_vs_chunks.cols(); }

    void validate() const {
        if (response_vs_gt.size() != response_claims.size()) {
            throw DimensionError("response_vs_gt length does not match response claim count");
        }
        if (gt_vs_response.size() != gt_claims.size()) {
            throw DimensionError("gt_vs_response length does not match ground-truth claim count");
        }
        if (response_vs_chunks.rows() != response_claims.size()) {
            throw DimensionError("response_vs_chunks row count does not match response claim count");
        }
        if (gt_vs_chunks.rows() != gt_claims.size()) {
            throw DimensionError("gt_vs_chunks row count does not match ground-truth claim count");
        }
        if (response_vs_chunks.cols() != gt_vs_chunks.cols()) {
            throw DimensionError("response_vs_chunks and gt_vs_chunks disagree on chunk count");
        }
        for (const auto& c : response_claims) {
            if (c.source != ClaimSource::kResponse) {
                throw DimensionError("response_claims contains a non-response claim");
            }
        }
        for (const auto& c : gt_claims) {
            if (c.source != ClaimSource::kGroundTruth) {
                throw DimensionError("gt_claims contains a non-ground-truth claim");
            }
        }
    }

    friend bool operator==(const JudgmentSet&, const JudgmentSet&) = default;
};

// relevant[j] is true iff chunk j entails at least one ground-truth claim.
struct ChunkClassification {
    std::vector<bool> relevant;

    size_t relevant_count() const {
        size_t n = 0;
        for (bool r : relevant) n += r ? 1 : 0;
        return n;
    }

    friend bool operator==(const ChunkClassification&, const ChunkClassification&) = default;
};

inline ChunkClassification classify_chunks(const JudgmentSet& judgments) {
    judgments.validate();
    const auto& m = judgments.gt_vs_chunks;
    ChunkClassification out;
    out.relevant.assign(m.cols(), false);
    for (size_t j = 0; j < m.cols(); ++j) {
        for (size_t i = 0; i < m.rows(); ++i) {
            if (m.at(i, j)) {
                out.relevant[j] = true;
                break;
            }
        }
    }
    return out;
}

enum class ClaimSide { kResponse, kGt };
enum class ChunkScope { kAllChunks, kRelevantChunks, kIrrelevantChunks };

// Element i is true iff claim i is entailed by at least one chunk within
// the scope. Irrelevant scope here is plain membership, without the
// precedence rule the noise-sensitivity metrics apply on top.
inline std::vector<bool> claim_membership(const JudgmentSet& judgments,
                                          const ChunkClassification& classification,
                                          ClaimSide side, ChunkScope scope) {
    judgments.validate();
    const BoolMatrix& m =
        side == ClaimSide::kResponse ? judgments.response_vs_chunks : judgments.gt_vs_chunks;
    if (classification.relevant.size() != m.cols()) {
        throw DimensionError("chunk classification length does not match chunk count");
    }
    std::vector<bool> out(m.rows(), false);
    for (size_t i = 0; i < m.rows(); ++i) {
        switch (scope) {
            case ChunkScope::kAllChunks:
                out[i] = m.row_any(i);
                break;
            case ChunkScope::kRelevantChunks:
                out[i] = m.row_any_masked(i, classification.relevant, true);
                break;
            case ChunkScope::kIrrelevantChunks:
                out[i] = m.row_any_masked(i, classification.relevant, false);
                break;
        }
    }
    return out;
}

inline std::vector<bool> claim_membership(const JudgmentSet& judgments, ClaimSide side,
                                          ChunkScope scope) {
    return claim_membership(judgments, classify_chunks(judgments), side, scope);
}

// Normalizes, drops claims that normalize to empty, and deduplicates
// (first occurrence wins). claim_ids are assigned by final position.
inline std::vector<Claim> make_claims(const std::vector<std::string>& texts, ClaimSource source) {
    std::vector<Claim> claims;
    claims.reserve(texts.size());
    std::set<std::string> seen;
    for (const auto& raw : texts) {
        std::string norm = normalize_text(raw);
        if (norm.empty()) continue;
        if (!seen.insert(norm).second) continue;
        claims.push_back(Claim{static_cast<int>(claims.size()), std::move(norm), source});
    }
    return claims;
}

struct Violation {
    std::string field;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

// Reports problems, never mutates. Duplicate query_id detection happens at
// dataset level, not here.
inline std::vector<Violation> validate_instance(const RagInstance& instance) {
    std::vector<Violation> out;
    if (is_blank(instance.query_id)) {
        out.push_back({"query_id", "query_id empty"});
    }
    if (is_blank(instance.query)) {
        out.push_back({"query", "query empty"});
    }
    if (is_blank(instance.gt_answer)) {
        out.push_back({"gt_answer", "gt_answer empty"});
    }
    std::set<std::pair<std::string, int>> keys;
    for (size_t j = 0; j < instance.retrieved.size(); ++j) {
        const auto& chunk = instance.retrieved[j];
        const std::string where = "retrieved[" + std::to_string(j) + "]";
        if (chunk.doc_id.empty()) {
            out.push_back({where, "doc_id empty"});
        }
        if (chunk.chunk_index < 0) {
            out.push_back({where, "chunk_index negative"});
        }
        if (is_blank(chunk.text)) {
            out.push_back({where, "chunk text empty"});
        }
        if (!keys.insert({chunk.doc_id, chunk.chunk_index}).second) {
            out.push_back({where, "duplicate chunk key (" + chunk.doc_id + ", " +
                                      std::to_string(chunk.chunk_index) + ")"});
        }
    }
    return out;
}

}  // namespace claimeval
