#pragma once
// Meta-evaluation: correlating per-metric score differences between two
// responses with pairwise human preference labels.
//
// Human labels live in {-2..2} (-2 = A significantly better, +2 = B
// significantly better). Score differences d_i = score_b - score_a are
// rescaled onto the same range by the *global* maximum |d_j| so magnitude
// information survives; a zero-variance side makes the correlation absent
// rather than zero.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimeval/core.hpp"
#include "claimeval/metrics.hpp"

namespace claimeval {

enum class Aspect { kCorrectness, kCompleteness, kOverall };

inline constexpr std::array<Aspect, 3> kAllAspects = {
    Aspect::kCorrectness, Aspect::kCompleteness, Aspect::kOverall};

constexpr std::string_view aspect_name(Aspect a) {
    switch (a) {
        case Aspect::kCorrectness: return "correctness";
        case Aspect::kCompleteness: return "completeness";
        case Aspect::kOverall: return "overall";
    }
    return "";
}

inline std::optional<Aspect> aspect_from_name(std::string_view name) {
    for (Aspect a : kAllAspects) {
        if (aspect_name(a) == name) return a;
    }
    return std::nullopt;
}

// Which metric plays the role of "same metric as human" for each aspect.
constexpr Metric default_metric_for_aspect(Aspect a) {
    switch (a) {
        case Aspect::kCorrectness: return Metric::kPrecision;
        case Aspect::kCompleteness: return Metric::kRecall;
        case Aspect::kOverall: return Metric::kF1;
    }
    return Metric::kF1;
}

// Two system responses to one query, with per-annotator preference labels
// keyed by aspect name and per-metric scores keyed by metric name.
struct PreferencePair {
    std::string pair_id;
    std::string query_id;
    std::string response_a;
    std::string response_b;
    std::map<std::string, double> scores_a;
    std::map<std::string, double> scores_b;
    std::map<std::string, std::vector<int>> labels;

    friend bool operator==(const PreferencePair&, const PreferencePair&) = default;
};

struct CorrelationResult {
    std::optional<double> pearson;
    std::optional<double> spearman;
    size_t n = 0;
    std::vector<std::string> excluded_pairs;  // pair_ids dropped for missing data
};

// e_i = 2*d_i / max_j |d_j|; an all-zero input stays all zero.
inline std::vector<double> normalize_diffs(std::span<const double> raw_diffs) {
    if (raw_diffs.empty()) {
        throw ValidationError("normalize_diffs requires a non-empty list");
    }
    double max_abs = 0.0;
    for (double d : raw_diffs) max_abs = std::max(max_abs, std::abs(d));
    std::vector<double> out(raw_diffs.begin(), raw_diffs.end());
    if (max_abs == 0.0) return out;
    for (double& d : out) d = 2.0 * d / max_abs;
    return out;
}

// 1-based ranks; tied values receive the mean of their rank positions.
inline std::vector<double> average_ranks(std::span<const double> xs) {
    const size_t n = xs.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

// Sample product-moment correlation; absent when either side has zero
// variance (checked exactly: all values equal) or fewer than two samples.
inline std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw DimensionError("pearson: length mismatch (" + std::to_string(xs.size()) +
                             " vs " + std::to_string(ys.size()) + ")");
    }
    const size_t n = xs.size();
    if (n < 2) return std::nullopt;
    const auto constant = [](std::span<const double> v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *lo == *hi;
    };
    if (constant(xs) || constant(ys)) return std::nullopt;

    const double nd = static_cast<double>(n);
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / nd;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / nd;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

// Pearson correlation of average ranks.
inline std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw DimensionError("spearman: length mismatch (" + std::to_string(xs.size()) +
                             " vs " + std::to_string(ys.size()) + ")");
    }
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    return pearson(rx, ry);
}

// Fraction of instances where two annotators differ by at most one step.
inline double agreement_rate(std::span<const int> h, std::span<const int> h_prime) {
    if (h.size() != h_prime.size()) {
        throw DimensionError("agreement_rate: length mismatch (" + std::to_string(h.size()) +
                             " vs " + std::to_string(h_prime.size()) + ")");
    }
    if (h.empty()) {
        throw ValidationError("agreement_rate requires at least one label pair");
    }
    size_t agree = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        if (std::abs(h[i] - h_prime[i]) <= 1) ++agree;
    }
    return static_cast<double>(agree) / static_cast<double>(h.size());
}

// Correlates one metric's score differences with one aspect's mean human
// label across the pair set. Pairs missing the metric on either side or
// lacking any label for the aspect are excluded and reported by id.
inline CorrelationResult correlate_metric(std::span<const PreferencePair> pairs,
                                          std::string_view metric,
                                          std::string_view aspect) {
    CorrelationResult result;
    std::vector<double> diffs;
    std::vector<double> human;
    const std::string metric_key(metric);
    const std::string aspect_key(aspect);
    for (const PreferencePair& pair : pairs) {
        const auto sa = pair.scores_a.find(metric_key);
        const auto sb = pair.scores_b.find(metric_key);
        const auto lab = pair.labels.find(aspect_key);
        if (sa == pair.scores_a.end() || sb == pair.scores_b.end() ||
            lab == pair.labels.end() || lab->second.empty()) {
            result.excluded_pairs.push_back(pair.pair_id);
            continue;
        }
        diffs.push_back(sb->second - sa->second);
        double sum = 0.0;
        for (int label : lab->second) sum += static_cast<double>(label);
        human.push_back(sum / static_cast<double>(lab->second.size()));
    }
    result.n = diffs.size();
    if (diffs.empty()) return result;
    const std::vector<double> e = normalize_diffs(diffs);
    result.pearson = pearson(human, e);
    result.spearman = spearman(human, e);
    return result;
}

inline CorrelationResult correlate_metric(std::span<const PreferencePair> pairs,
                                          Metric metric, Aspect aspect) {
    return correlate_metric(pairs, metric_name(metric), aspect_name(aspect));
}

}  // namespace claimeval
