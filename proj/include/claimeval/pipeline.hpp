#pragma once
// Orchestration: turn instances into judgment sets.
//
// judge_instance composes one extraction per text (response, gt answer)
// with one list-batched check per reference (gt answer, response, each
// chunk), so a remote checker sees at most 2 + 2k requests per instance
// and none for empty claim lists. run_batch fans instances out over a
// worker pool; a failed instance is reported by query_id and never takes
// the batch down, and results keep input order regardless of parallelism.

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "claimeval/backends.hpp"
#include "claimeval/core.hpp"

namespace claimeval {

// A per-instance failure: the pipeline error message with the offending
// query_id attached.
class InstanceError : public Error {
  public:
    InstanceError(std::string query_id, const std::string& message)
        : Error("query '" + query_id + "': " + message), query_id_(std::move(query_id)) {}

    const std::string& query_id() const { return query_id_; }

  private:
    std::string query_id_;
};

namespace detail {

inline std::vector<std::string> claim_texts(const std::vector<Claim>& claims) {
    std::vector<std::string> texts;
    texts.reserve(claims.size());
    for (const Claim& claim : claims) texts.push_back(claim.text);
    return texts;
}

inline std::vector<bool> to_bools(const std::vector<EntailmentLabel>& labels) {
    std::vector<bool> out(labels.size(), false);
    for (size_t i = 0; i < labels.size(); ++i) out[i] = entails(labels[i]);
    return out;
}

}  // namespace detail

inline JudgmentSet judge_instance(const RagInstance& instance, const Extractor& extractor,
                                  const Checker& checker) {
    try {
        const std::vector<Violation> violations = validate_instance(instance);
        if (!violations.empty()) {
            throw ValidationError("invalid instance: " + violations.front().field + ": " +
                                  violations.front().message);
        }

        JudgmentSet js;
        js.response_claims =
            extractor.extract({instance.query_id, instance.response, ClaimSource::kResponse});
        js.gt_claims =
            extractor.extract({instance.query_id, instance.gt_answer, ClaimSource::kGroundTruth});
        if (js.gt_claims.empty()) {
            throw BackendError("extractor produced no ground-truth claims");
        }

        const std::vector<std::string> response_texts = detail::claim_texts(js.response_claims);
        const std::vector<std::string> gt_texts = detail::claim_texts(js.gt_claims);
        const size_t m = response_texts.size();
        const size_t g = gt_texts.size();
        const size_t k = instance.retrieved.size();

        js.response_vs_gt = detail::to_bools(
            checker.check({instance.query_id, ClaimSource::kResponse, response_texts,
                           ReferenceKind::kGtAnswer, 0, instance.gt_answer}));
        js.gt_vs_response = detail::to_bools(
            checker.check({instance.query_id, ClaimSource::kGroundTruth, gt_texts,
                           ReferenceKind::kResponse, 0, instance.response}));

        js.response_vs_chunks = BoolMatrix(m, k);
        js.gt_vs_chunks = BoolMatrix(g, k);
        for (size_t j = 0; j < k; ++j) {
            const std::vector<EntailmentLabel> resp_labels =
                checker.check({instance.query_id, ClaimSource::kResponse, response_texts,
                               ReferenceKind::kChunk, j, instance.retrieved[j].text});
            for (size_t i = 0; i < m; ++i) {
                js.response_vs_chunks.set(i, j, entails(resp_labels[i]));
            }
            const std::vector<EntailmentLabel> gt_labels =
                checker.check({instance.query_id, ClaimSource::kGroundTruth, gt_texts,
                               ReferenceKind::kChunk, j, instance.retrieved[j].text});
            for (size_t i = 0; i < g; ++i) {
                js.gt_vs_chunks.set(i, j, entails(gt_labels[i]));
            }
        }

        js.validate();
        return js;
    } catch (const InstanceError&) {
        throw;
    } catch (const std::exception& e) {
        throw InstanceError(instance.query_id, e.what());
    }
}

struct InstanceFailure {
    std::string query_id;
    std::string message;

    friend bool operator==(const InstanceFailure&, const InstanceFailure&) = default;
};

struct BatchResult {
    // One slot per input instance, in input order; empty = failed.
    std::vector<std::optional<JudgmentSet>> judgments;
    // Failures in input order.
    std::vector<InstanceFailure> errors;

    size_t success_count() const {
        size_t n = 0;
        for (const auto& j : judgments) n += j.has_value() ? 1 : 0;
        return n;
    }
};

inline BatchResult run_batch(const std::vector<RagInstance>& instances,
                             const Extractor& extractor, const Checker& checker,
                             size_t parallelism) {
    if (parallelism < 1) {
        throw ValidationError("parallelism must be at least 1");
    }
    BatchResult result;
    result.judgments.resize(instances.size());
    std::vector<std::optional<InstanceFailure>> failures(instances.size());

    std::atomic<size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= instances.size()) return;
            try {
                result.judgments[i] = judge_instance(instances[i], extractor, checker);
            } catch (const std::exception& e) {
                failures[i] = InstanceFailure{instances[i].query_id, e.what()};
            }
        }
    };

    const size_t n_workers = std::min(parallelism, std::max<size_t>(instances.size(), 1));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (size_t t = 0; t < n_workers; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    for (auto& failure : failures) {
        if (failure) result.errors.push_back(std::move(*failure));
    }
    return result;
}

}  // namespace claimeval
