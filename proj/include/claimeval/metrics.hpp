#pragma once
// The eleven per-query metrics and their dataset aggregation.
//
// A metric whose denominator is zero is undefined and carried as an empty
// optional; aggregation excludes such instances from both numerator and
// denominator of that metric's mean. Incorrect response claims entailed by
// both a relevant and an irrelevant chunk count toward relevant noise
// sensitivity only, so the four response-claim buckets (correct, relevant
// noise, irrelevant-only noise, hallucination) partition the claim list.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "claimeval/core.hpp"

namespace claimeval {

enum class Metric {
    kPrecision,
    kRecall,
    kF1,
    kClaimRecall,
    kContextPrecision,
    kContextUtilization,
    kNsRelevant,
    kNsIrrelevant,
    kHallucination,
    kSelfKnowledge,
    kFaithfulness,
};

inline constexpr size_t kMetricCount = 11;

inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::kPrecision,          Metric::kRecall,       Metric::kF1,
    Metric::kClaimRecall,        Metric::kContextPrecision,
    Metric::kContextUtilization, Metric::kNsRelevant,   Metric::kNsIrrelevant,
    Metric::kHallucination,      Metric::kSelfKnowledge, Metric::kFaithfulness,
};

constexpr std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::kPrecision: return "precision";
        case Metric::kRecall: return "recall";
        case Metric::kF1: return "f1";
        case Metric::kClaimRecall: return "claim_recall";
        case Metric::kContextPrecision: return "context_precision";
        case Metric::kContextUtilization: return "context_utilization";
        case Metric::kNsRelevant: return "ns_relevant";
        case Metric::kNsIrrelevant: return "ns_irrelevant";
        case Metric::kHallucination: return "hallucination";
        case Metric::kSelfKnowledge: return "self_knowledge";
        case Metric::kFaithfulness: return "faithfulness";
    }
    return "";
}

// Report table headers, in the same column order as metric_name.
constexpr std::string_view metric_header(Metric m) {
    switch (m) {
        case Metric::kPrecision: return "Prec.";
        case Metric::kRecall: return "Rec.";
        case Metric::kF1: return "F1";
        case Metric::kClaimRecall: return "CR";
        case Metric::kContextPrecision: return "CP";
        case Metric::kContextUtilization: return "CU";
        case Metric::kNsRelevant: return "NS(I)";
        case Metric::kNsIrrelevant: return "NS(II)";
        case Metric::kHallucination: return "Hallu.";
        case Metric::kSelfKnowledge: return "SK";
        case Metric::kFaithfulness: return "Faith.";
    }
    return "";
}

inline std::optional<Metric> metric_from_name(std::string_view name) {
    for (Metric m : kAllMetrics) {
        if (metric_name(m) == name) return m;
    }
    return std::nullopt;
}

struct MetricsRecord {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> claim_recall;
    std::optional<double> context_precision;
    std::optional<double> context_utilization;
    std::optional<double> ns_relevant;
    std::optional<double> ns_irrelevant;
    std::optional<double> hallucination;
    std::optional<double> self_knowledge;
    std::optional<double> faithfulness;
    size_t n_response_claims = 0;
    size_t n_gt_claims = 0;
    size_t k = 0;

    std::optional<double> get(Metric m) const {
        switch (m) {
            case Metric::kPrecision: return precision;
            case Metric::kRecall: return recall;
            case Metric::kF1: return f1;
            case Metric::kClaimRecall: return claim_recall;
            case Metric::kContextPrecision: return context_precision;
            case Metric::kContextUtilization: return context_utilization;
            case Metric::kNsRelevant: return ns_relevant;
            case Metric::kNsIrrelevant: return ns_irrelevant;
            case Metric::kHallucination: return hallucination;
            case Metric::kSelfKnowledge: return self_knowledge;
            case Metric::kFaithfulness: return faithfulness;
        }
        return std::nullopt;
    }

    void set(Metric m, std::optional<double> v) {
        switch (m) {
            case Metric::kPrecision: precision = v; return;
            case Metric::kRecall: recall = v; return;
            case Metric::kF1: f1 = v; return;
            case Metric::kClaimRecall: claim_recall = v; return;
            case Metric::kContextPrecision: context_precision = v; return;
            case Metric::kContextUtilization: context_utilization = v; return;
            case Metric::kNsRelevant: ns_relevant = v; return;
            case Metric::kNsIrrelevant: ns_irrelevant = v; return;
            case Metric::kHallucination: hallucination = v; return;
            case Metric::kSelfKnowledge: self_knowledge = v; return;
            case Metric::kFaithfulness: faithfulness = v; return;
        }
    }

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

struct OverallMetrics {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

struct RetrieverMetrics {
    std::optional<double> claim_recall;
    std::optional<double> context_precision;
};

struct GeneratorMetrics {
    std::optional<double> context_utilization;
    std::optional<double> ns_relevant;
    std::optional<double> ns_irrelevant;
    std::optional<double> hallucination;
    std::optional<double> self_knowledge;
    std::optional<double> faithfulness;
};

namespace detail {

inline void require_gt_claims(const JudgmentSet& judgments) {
    if (judgments.gt_claim_count() == 0) {
        throw ValidationError("judgment set has no ground-truth claims; recall is undefined");
    }
}

inline size_t count_true(const std::vector<bool>& v) {
    size_t n = 0;
    for (bool b : v) n += b ? 1 : 0;
    return n;
}

}  // namespace detail

inline OverallMetrics overall_metrics(const JudgmentSet& judgments) {
    judgments.validate();
    detail::require_gt_claims(judgments);
    const size_t m = judgments.claim_count();
    const size_t g = judgments.gt_claim_count();
    OverallMetrics out;
    out.recall = static_cast<double>(detail::count_true(judgments.gt_vs_response)) /
                 static_cast<double>(g);
    if (m > 0) {
        out.precision = static_cast<double>(detail::count_true(judgments.response_vs_gt)) /
                        static_cast<double>(m);
        const double p = *out.precision;
        const double r = *out.recall;
        out.f1 = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    }
    return out;
}

inline RetrieverMetrics retriever_metrics(const JudgmentSet& judgments,
                                          const ChunkClassification& classification) {
    judgments.validate();
    detail::require_gt_claims(judgments);
    const size_t g = judgments.gt_claim_count();
    const size_t k = judgments.chunk_count();
    RetrieverMetrics out;
    size_t covered = 0;
    for (size_t i = 0; i < g; ++i) {
        covered += judgments.gt_vs_chunks.row_any(i) ? 1 : 0;
    }
    out.claim_recall = static_cast<double>(covered) / static_cast<double>(g);
    if (k > 0) {
        out.context_precision =
            static_cast<double>(classification.relevant_count()) / static_cast<double>(k);
    }
    return out;
}

inline GeneratorMetrics generator_metrics(const JudgmentSet& judgments,
                                          const ChunkClassification& classification) {
    judgments.validate();
    detail::require_gt_claims(judgments);
    const size_t m = judgments.claim_count();
    GeneratorMetrics out;

    if (m > 0) {
        size_t in_any = 0, halluc = 0, self_know = 0, ns_rel = 0, ns_irr = 0;
        for (size_t i = 0; i < m; ++i) {
            const bool correct = judgments.response_vs_gt[i];
            const bool any = judgments.response_vs_chunks.row_any(i);
            const bool rel =
                judgments.response_vs_chunks.row_any_masked(i, classification.relevant, true);
            const bool irr =
                judgments.response_vs_chunks.row_any_masked(i, classification.relevant, false);
            in_any += any ? 1 : 0;
            if (!correct && !any) halluc++;
            if (correct && !any) self_know++;
            if (!correct && rel) ns_rel++;
            if (!correct && irr && !rel) ns_irr++;
        }
        const auto md = static_cast<double>(m);
        out.faithfulness = static_cast<double>(in_any) / md;
        out.hallucination = static_cast<double>(halluc) / md;
        out.self_knowledge = static_cast<double>(self_know) / md;
        out.ns_relevant = static_cast<double>(ns_rel) / md;
        out.ns_irrelevant = static_cast<double>(ns_irr) / md;
    }

    size_t retrieved_gt = 0, used_gt = 0;
    for (size_t i = 0; i < judgments.gt_claim_count(); ++i) {
        if (judgments.gt_vs_chunks.row_any(i)) {
            retrieved_gt++;
            if (judgments.gt_vs_response[i]) used_gt++;
        }
    }
    if (retrieved_gt > 0) {
        out.context_utilization =
            static_cast<double>(used_gt) / static_cast<double>(retrieved_gt);
    }
    return out;
}

inline MetricsRecord compute_all(const JudgmentSet& judgments) {
    judgments.validate();
    detail::require_gt_claims(judgments);
    const ChunkClassification classification = classify_chunks(judgments);
    const OverallMetrics overall = overall_metrics(judgments);
    const RetrieverMetrics retriever = retriever_metrics(judgments, classification);
    const GeneratorMetrics generator = generator_metrics(judgments, classification);

    MetricsRecord rec;
    rec.precision = overall.precision;
    rec.recall = overall.recall;
    rec.f1 = overall.f1;
    rec.claim_recall = retriever.claim_recall;
    rec.context_precision = retriever.context_precision;
    rec.context_utilization = generator.context_utilization;
    rec.ns_relevant = generator.ns_relevant;
    rec.ns_irrelevant = generator.ns_irrelevant;
    rec.hallucination = generator.hallucination;
    rec.self_knowledge = generator.self_knowledge;
    rec.faithfulness = generator.faithfulness;
    rec.n_response_claims = judgments.claim_count();
    rec.n_gt_claims = judgments.gt_claim_count();
    rec.k = judgments.chunk_count();
    return rec;
}

// Per-query macro-average. Instances where a metric is undefined count
// toward neither the numerator nor the denominator of that metric's mean.
struct AggregateReport {
    std::array<std::optional<double>, kMetricCount> means;
    std::array<size_t, kMetricCount> defined_counts{};
    size_t instance_count = 0;
    double mean_response_claims = 0.0;
    double mean_gt_claims = 0.0;
    double mean_k = 0.0;

    std::optional<double> mean(Metric m) const { return means[static_cast<size_t>(m)]; }
    size_t defined_count(Metric m) const { return defined_counts[static_cast<size_t>(m)]; }

    // The "#Claim" display value.
    long long rounded_mean_response_claims() const {
        return static_cast<long long>(mean_response_claims + 0.5);
    }
};

inline AggregateReport aggregate(std::span<const MetricsRecord> records) {
    if (records.empty()) {
        throw ValidationError("cannot aggregate an empty record list");
    }
    AggregateReport report;
    report.instance_count = records.size();
    std::array<double, kMetricCount> sums{};
    double sum_m = 0, sum_g = 0, sum_k = 0;
    for (const auto& rec : records) {
        for (size_t mi = 0; mi < kMetricCount; ++mi) {
            if (auto v = rec.get(kAllMetrics[mi])) {
                sums[mi] += *v;
                report.defined_counts[mi]++;
            }
        }
        sum_m += static_cast<double>(rec.n_response_claims);
        sum_g += static_cast<double>(rec.n_gt_claims);
        sum_k += static_cast<double>(rec.k);
    }
    for (size_t mi = 0; mi < kMetricCount; ++mi) {
        if (report.defined_counts[mi] > 0) {
            report.means[mi] = sums[mi] / static_cast<double>(report.defined_counts[mi]);
        }
    }
    const auto n = static_cast<double>(records.size());
    report.mean_response_claims = sum_m / n;
    report.mean_gt_claims = sum_g / n;
    report.mean_k = sum_k / n;
    return report;
}

}  // namespace claimeval
