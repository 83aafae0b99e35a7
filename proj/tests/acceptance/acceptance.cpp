// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
//
// Each criterion is self-contained and reports the first few concrete
// problems it finds, so a regression is diagnosable from the output alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "claimeval/claimeval.hpp"
#include "support/generators.hpp"
#include "support/mock_judge.hpp"
#include "support/oracle.hpp"
#include "support/tempdir.hpp"

using namespace claimeval;

namespace {

const std::string kDataDir = CLAIMEVAL_TEST_DATA_DIR;

struct Problems {
    std::vector<std::string> items;
    size_t total = 0;

    void add(const std::string& message) {
        ++total;
        if (items.size() < 5) items.push_back(message);
    }
    void expect(bool ok, const std::string& message) {
        if (!ok) add(message);
    }
    bool ok() const { return total == 0; }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "absent"; }

std::optional<double> oracle_value(const oracle::Output& out, Metric metric) {
    switch (metric) {
        case Metric::kPrecision: return out.precision;
        case Metric::kRecall: return out.recall;
        case Metric::kF1: return out.f1;
        case Metric::kClaimRecall: return out.claim_recall;
        case Metric::kContextPrecision: return out.context_precision;
        case Metric::kContextUtilization: return out.context_utilization;
        case Metric::kNsRelevant: return out.ns_relevant;
        case Metric::kNsIrrelevant: return out.ns_irrelevant;
        case Metric::kHallucination: return out.hallucination;
        case Metric::kSelfKnowledge: return out.self_knowledge;
        case Metric::kFaithfulness: return out.faithfulness;
    }
    return std::nullopt;
}

bool matches_oracle(const JudgmentSet& js, std::string& first_mismatch) {
    const MetricsRecord record = compute_all(js);
    const oracle::Output expected = oracle::compute(testsupport::to_oracle_input(js));
    for (Metric metric : kAllMetrics) {
        const auto got = record.get(metric);
        const auto want = oracle_value(expected, metric);
        const bool same = got.has_value() == want.has_value() &&
                          (!got || std::abs(*got - *want) <= 1e-12);
        if (!same) {
            first_mismatch = std::string(metric_name(metric)) + ": suite=" + fmt(got) +
                             " reference=" + fmt(want) + " (M=" + std::to_string(js.claim_count()) +
                             " G=" + std::to_string(js.gt_claim_count()) +
                             " k=" + std::to_string(js.chunk_count()) + ")";
            return false;
        }
    }
    return true;
}

RagInstance make_instance(const std::string& id, const std::string& gt,
                          const std::string& response,
                          const std::vector<std::string>& chunks) {
    RagInstance inst;
    inst.query_id = id;
    inst.query = "Question for " + id + "?";
    inst.gt_answer = gt;
    inst.response = response;
    for (size_t j = 0; j < chunks.size(); ++j) {
        inst.retrieved.push_back({"doc-" + id, static_cast<int>(j), chunks[j]});
    }
    return inst;
}

std::string dataset_of(const std::vector<RagInstance>& instances) {
    std::string body;
    for (const RagInstance& inst : instances) body += serialize_instance(inst) + "\n";
    return body;
}

struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CommandResult judge_file(const std::string& dataset, const RunConfig& config,
                         const std::string& output) {
    std::ostringstream out;
    std::ostringstream err;
    CommandResult result;
    result.exit_code = cmd_judge(dataset, config, output, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

// ---------------------------------------------------------------------------
// 1. exhaustive agreement with the independent reference implementation
// ---------------------------------------------------------------------------

void criterion_exhaustive(Problems& problems, std::string& detail) {
    size_t cases = 0;
    for (size_t m = 0; m <= 3; ++m) {
        for (size_t g = 1; g <= 3; ++g) {
            for (size_t k = 0; k <= 2; ++k) {
                const size_t bits = m + g + (m + g) * k;
                for (uint64_t word = 0; word < (uint64_t{1} << bits); ++word) {
                    size_t pos = 0;
                    const auto bit = [&]() { return ((word >> pos++) & 1) != 0; };

                    JudgmentSet js;
                    js.response_claims =
                        testsupport::numbered_claims(m, ClaimSource::kResponse);
                    js.gt_claims = testsupport::numbered_claims(g, ClaimSource::kGroundTruth);
                    js.response_vs_gt.resize(m);
                    for (size_t i = 0; i < m; ++i) js.response_vs_gt[i] = bit();
                    js.gt_vs_response.resize(g);
                    for (size_t i = 0; i < g; ++i) js.gt_vs_response[i] = bit();
                    js.response_vs_chunks = BoolMatrix(m, k);
                    for (size_t i = 0; i < m; ++i) {
                        for (size_t j = 0; j < k; ++j) js.response_vs_chunks.set(i, j, bit());
                    }
                    js.gt_vs_chunks = BoolMatrix(g, k);
                    for (size_t i = 0; i < g; ++i) {
                        for (size_t j = 0; j < k; ++j) js.gt_vs_chunks.set(i, j, bit());
                    }

                    ++cases;
                    std::string mismatch;
                    if (!matches_oracle(js, mismatch)) problems.add(mismatch);
                }
            }
        }
    }
    problems.expect(cases == 348990,
                    "expected 348990 enumerated configurations, got " + std::to_string(cases));
    detail = std::to_string(cases) + " configurations, M<=3, G<=3, k<=2";
}

// ---------------------------------------------------------------------------
// 2. randomized range / partition / permutation invariants
// ---------------------------------------------------------------------------

void criterion_random_invariants(Problems& problems, std::string& detail) {
    std::mt19937_64 rng(8675309);
    const size_t trials = 10000;
    for (size_t t = 0; t < trials; ++t) {
        const JudgmentSet js = testsupport::random_judgments(rng, 20, 20, 20);
        std::string mismatch;
        if (!matches_oracle(js, mismatch)) {
            problems.add("trial " + std::to_string(t) + ": " + mismatch);
            continue;
        }
        const MetricsRecord record = compute_all(js);
        for (Metric metric : kAllMetrics) {
            const auto v = record.get(metric);
            if (v && (*v < 0.0 || *v > 1.0 + 1e-12)) {
                problems.add("trial " + std::to_string(t) + ": " +
                             std::string(metric_name(metric)) + "=" + fmt(*v) +
                             " outside [0, 1]");
            }
        }
        if (js.claim_count() > 0) {
            const double gen_sum =
                *record.faithfulness + *record.hallucination + *record.self_knowledge;
            problems.expect(std::abs(gen_sum - 1.0) <= 1e-12,
                            "trial " + std::to_string(t) +
                                ": faithfulness+hallucination+self_knowledge=" + fmt(gen_sum));
            const double part_sum = *record.precision + *record.ns_relevant +
                                    *record.ns_irrelevant + *record.hallucination;
            problems.expect(std::abs(part_sum - 1.0) <= 1e-12,
                            "trial " + std::to_string(t) +
                                ": precision+noise+hallucination=" + fmt(part_sum));
        }
        const MetricsRecord shuffled = compute_all(testsupport::permuted(js, rng));
        for (Metric metric : kAllMetrics) {
            if (record.get(metric) != shuffled.get(metric)) {
                problems.add("trial " + std::to_string(t) + ": " +
                             std::string(metric_name(metric)) +
                             " changed under permutation: " + fmt(record.get(metric)) + " vs " +
                             fmt(shuffled.get(metric)));
            }
        }
        if (problems.total > 20) break;
    }
    detail = std::to_string(trials) + " random judgment sets, M/G/k up to 20";
}

// ---------------------------------------------------------------------------
// 3. aggregation semantics
// ---------------------------------------------------------------------------

void criterion_aggregation(Problems& problems, std::string& detail) {
    MetricsRecord a;
    a.precision = 237.0 / 250.0;
    a.recall = 0.5;
    a.f1 = 2.0 * *a.precision * *a.recall / (*a.precision + *a.recall);
    a.context_precision = 0.5;
    a.n_response_claims = 2;
    MetricsRecord b;
    b.precision = 68.0 / 250.0;
    b.recall = 247.0 / 500.0;
    b.f1 = 2.0 * *b.precision * *b.recall / (*b.precision + *b.recall);
    b.n_response_claims = 3;
    MetricsRecord c = b;
    c.n_response_claims = 3;

    const AggregateReport agg = aggregate(std::vector<MetricsRecord>{a, b, c});

    // Means are taken per query, never by pooling claim counts.
    const double mean_f1 = (*a.f1 + *b.f1 + *c.f1) / 3.0;
    problems.expect(std::abs(*agg.mean(Metric::kF1) - mean_f1) <= 1e-15,
                    "mean f1 " + fmt(agg.mean(Metric::kF1)) + " != " + fmt(mean_f1));
    const double harmonic = 2.0 * *agg.mean(Metric::kPrecision) * *agg.mean(Metric::kRecall) /
                            (*agg.mean(Metric::kPrecision) + *agg.mean(Metric::kRecall));
    problems.expect(std::abs(*agg.mean(Metric::kF1) - harmonic) > 1e-3,
                    "mean f1 indistinguishable from harmonic of mean precision/recall");

    // Undefined values are excluded from numerator and denominator alike.
    problems.expect(agg.defined_count(Metric::kContextPrecision) == 1,
                    "context_precision defined_count != 1");
    problems.expect(agg.mean(Metric::kContextPrecision) &&
                        std::abs(*agg.mean(Metric::kContextPrecision) - 0.5) <= 1e-15,
                    "context_precision mean over defined records != 0.5");
    problems.expect(agg.defined_count(Metric::kF1) == 3, "f1 defined_count != 3");

    // Claim counts: mean 8/3 displays as 3.
    problems.expect(std::abs(agg.mean_response_claims - 8.0 / 3.0) <= 1e-15,
                    "mean response claims != 8/3");
    problems.expect(agg.rounded_mean_response_claims() == 3,
                    "rounded mean response claims != 3");
    detail = "per-query macro means, undefined exclusion, display rounding";
}

// ---------------------------------------------------------------------------
// 4. golden end-to-end determinism
// ---------------------------------------------------------------------------

void criterion_golden(Problems& problems, std::string& detail) {
    const std::string dataset = kDataDir + "/golden_dataset.jsonl";
    const std::string golden_judgments = read_file(kDataDir + "/golden_judgments.jsonl");

    testsupport::TempDir dir("accept-golden");
    for (int parallelism : {1, 4, 16}) {
        RunConfig config;
        config.parallelism = parallelism;
        const std::string output = dir.file("judgments-" + std::to_string(parallelism));
        const CommandResult result = judge_file(dataset, config, output);
        problems.expect(result.exit_code == 0, "judge exit code " +
                                                   std::to_string(result.exit_code) +
                                                   " at parallelism " +
                                                   std::to_string(parallelism));
        problems.expect(read_file(output) == golden_judgments,
                        "judgments at parallelism " + std::to_string(parallelism) +
                            " differ from the checked-in golden file");
    }

    const std::string report_path = dir.file("report.jsonl");
    std::ostringstream out, err;
    problems.expect(cmd_eval(kDataDir + "/golden_judgments.jsonl", report_path, "jsonl", out,
                             err) == 0,
                    "eval (jsonl) failed: " + err.str());
    problems.expect(read_file(report_path) == read_file(kDataDir + "/golden_report.jsonl"),
                    "jsonl report differs from the checked-in golden file");

    const std::string table_path = dir.file("report.txt");
    problems.expect(cmd_eval(kDataDir + "/golden_judgments.jsonl", table_path, "table", out,
                             err) == 0,
                    "eval (table) failed: " + err.str());
    problems.expect(read_file(table_path) == read_file(kDataDir + "/golden_report_table.txt"),
                    "table report differs from the checked-in golden file");
    detail = "10-query dataset, parallelism 1/4/16, jsonl and table reports";
}

// ---------------------------------------------------------------------------
// 5. boundary semantics
// ---------------------------------------------------------------------------

void criterion_boundaries(Problems& problems, std::string& detail) {
    SentenceExtractor extractor;
    LexicalChecker checker;

    const auto exact = [&](const MetricsRecord& record, Metric metric, double want,
                           const std::string& where) {
        const auto v = record.get(metric);
        problems.expect(v.has_value() && *v == want,
                        where + ": " + std::string(metric_name(metric)) + "=" + fmt(v) +
                            ", expected exactly " + fmt(want));
    };

    const RagInstance identity = make_instance(
        "identity", "Paris is the capital of France. The Seine flows through Paris.",
        "Paris is the capital of France. The Seine flows through Paris.",
        {"Paris is the capital of France. The Seine flows through Paris. Extra padding."});
    const MetricsRecord perfect = compute_all(judge_instance(identity, extractor, checker));
    for (Metric metric : {Metric::kPrecision, Metric::kRecall, Metric::kF1,
                          Metric::kClaimRecall, Metric::kContextPrecision,
                          Metric::kContextUtilization, Metric::kFaithfulness}) {
        exact(perfect, metric, 1.0, "identity");
    }
    for (Metric metric : {Metric::kNsRelevant, Metric::kNsIrrelevant, Metric::kHallucination,
                          Metric::kSelfKnowledge}) {
        exact(perfect, metric, 0.0, "identity");
    }

    const RagInstance empty_retrieval =
        make_instance("empty", "Iron is a metal. Iron rusts.", "Iron is a metal. Iron rusts.", {});
    const MetricsRecord starved = compute_all(judge_instance(empty_retrieval, extractor, checker));
    exact(starved, Metric::kPrecision, 1.0, "empty-retrieval");
    exact(starved, Metric::kClaimRecall, 0.0, "empty-retrieval");
    exact(starved, Metric::kSelfKnowledge, 1.0, "empty-retrieval");
    exact(starved, Metric::kFaithfulness, 0.0, "empty-retrieval");
    problems.expect(!starved.context_precision.has_value(),
                    "empty-retrieval: context_precision should be undefined");
    problems.expect(!starved.context_utilization.has_value(),
                    "empty-retrieval: context_utilization should be undefined");

    JudgmentSet no_gt;
    no_gt.response_claims = testsupport::numbered_claims(1, ClaimSource::kResponse);
    no_gt.response_vs_gt = {false};
    no_gt.response_vs_chunks = BoolMatrix(1, 1);
    no_gt.gt_vs_chunks = BoolMatrix(0, 1);
    const ChunkClassification classification = classify_chunks(no_gt);
    size_t rejections = 0;
    try {
        (void)compute_all(no_gt);
    } catch (const ValidationError&) {
        ++rejections;
    }
    try {
        (void)retriever_metrics(no_gt, classification);
    } catch (const ValidationError&) {
        ++rejections;
    }
    try {
        (void)generator_metrics(no_gt, classification);
    } catch (const ValidationError&) {
        ++rejections;
    }
    problems.expect(rejections == 3,
                    "judgments without ground-truth claims must be rejected at every entry "
                    "point, got " +
                        std::to_string(rejections) + "/3");
    detail = "identity scores, empty retrieval, ground-truth-free rejection";
}

// ---------------------------------------------------------------------------
// 6. meta-evaluation statistics against hand-computed values
// ---------------------------------------------------------------------------

void criterion_meta(Problems& problems, std::string& detail) {
    const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> ys = {2.0, 1.0, 4.0, 3.0};
    const auto p = pearson(xs, ys);
    problems.expect(p.has_value() && std::abs(*p - 0.6) <= 1e-12,
                    "pearson([1,2,3,4],[2,1,4,3]) = " + fmt(p) + ", expected 0.6");

    const std::vector<double> sx = {1.0, 2.0, 3.0};
    const std::vector<double> sy = {10.0, 10.0, 20.0};
    const auto s = spearman(sx, sy);
    problems.expect(s.has_value() && std::abs(*s - 0.8660254037844386) <= 1e-9,
                    "spearman tie case = " + fmt(s) + ", expected sqrt(3)/2");

    const std::vector<int> h = {2, 0};
    const std::vector<int> h_prime = {1, 2};
    const double agreement = agreement_rate(h, h_prime);
    problems.expect(agreement == 0.5, "agreement_rate = " + fmt(agreement) + ", expected 0.5");

    const std::vector<double> raw = {0.4, 0.1, -0.1, -0.4};
    const std::vector<double> expected_scaled = {2.0, 0.5, -0.5, -2.0};
    problems.expect(normalize_diffs(raw) == expected_scaled,
                    "normalize_diffs([0.4,0.1,-0.1,-0.4]) wrong");
    const std::vector<double> zeros = {0.0, 0.0};
    problems.expect(normalize_diffs(zeros) == zeros,
                    "normalize_diffs of all-zero deltas must stay zero");

    // Four preference pairs with score deltas 0.4/0.1/-0.1/-0.4 against human
    // means 2/1/-1/-2: scaled deltas are 2/0.5/-0.5/-2, so the correlation is
    // 9 / sqrt(10 * 8.5).
    std::vector<PreferencePair> pairs;
    const std::vector<std::tuple<std::string, double, double, int>> spec = {
        {"p1", 0.5, 0.9, 2}, {"p2", 0.5, 0.6, 1}, {"p3", 0.5, 0.4, -1}, {"p4", 0.9, 0.5, -2}};
    for (const auto& [id, fa, fb, label] : spec) {
        PreferencePair pair;
        pair.pair_id = id;
        pair.scores_a["f1"] = fa;
        pair.scores_b["f1"] = fb;
        pair.labels["overall"] = {label};
        pairs.push_back(std::move(pair));
    }
    const CorrelationResult corr = correlate_metric(pairs, "f1", "overall");
    const double want = 9.0 / std::sqrt(85.0);
    problems.expect(corr.n == 4, "correlate_metric n = " + std::to_string(corr.n));
    problems.expect(corr.pearson.has_value() && std::abs(*corr.pearson - want) <= 1e-12 &&
                        std::abs(*corr.pearson - 0.9761870601839527) <= 1e-9,
                    "fixture pearson = " + fmt(corr.pearson) + ", expected " + fmt(want));
    problems.expect(corr.spearman.has_value() && std::abs(*corr.spearman - 1.0) <= 1e-12,
                    "fixture spearman = " + fmt(corr.spearman) + ", expected 1.0");

    problems.expect(default_metric_for_aspect(Aspect::kCorrectness) == Metric::kPrecision &&
                        default_metric_for_aspect(Aspect::kCompleteness) == Metric::kRecall &&
                        default_metric_for_aspect(Aspect::kOverall) == Metric::kF1,
                    "aspect-to-metric defaults are wrong");
    detail = "pearson/spearman/agreement, scaling, preference-pair fixture";
}

// ---------------------------------------------------------------------------
// 7. batched judging with a warm cache
// ---------------------------------------------------------------------------

void criterion_cache(Problems& problems, std::string& detail) {
    testsupport::MockJudge mock;
    testsupport::TempDir dir("accept-cache");

    // Every referenced text in this instance is distinct, so each of the
    // 2 extraction and 2 + 2k check requests has its own cache entry.
    const RagInstance inst = make_instance(
        "q-count", "The cat sat on the mat. The dog slept on the rug.",
        "The cat sat on the mat. Some birds can mimic speech.",
        {"The cat sat on the mat. Nothing else is here.",
         "The dog slept on the rug. Unrelated trailing words."});
    const std::string dataset = dir.file("dataset.jsonl");
    write_file_atomic(dataset, dataset_of({inst}));

    RunConfig config;
    config.extractor.kind = "REMOTE_JUDGE";
    config.checker.kind = "REMOTE_JUDGE";
    config.judge_endpoint = mock.endpoint();
    config.judge_model = "judge-1";
    config.retry_base_delay_ms = 1;
    config.cache_dir = dir.file("cache");
    config.parallelism = 2;

    const std::string cold_path = dir.file("cold.jsonl");
    const CommandResult cold = judge_file(dataset, config, cold_path);
    problems.expect(cold.exit_code == 0, "cold judge failed: " + cold.err);
    problems.expect(mock.requests() == 8,
                    "cold run sent " + std::to_string(mock.requests()) +
                        " requests, expected exactly 8 (2 extractions + 2 + 2k checks)");

    mock.reset_requests();
    const std::string warm_path = dir.file("warm.jsonl");
    const CommandResult warm = judge_file(dataset, config, warm_path);
    problems.expect(warm.exit_code == 0, "warm judge failed: " + warm.err);
    problems.expect(mock.requests() == 0, "warm run sent " + std::to_string(mock.requests()) +
                                              " requests, expected 0 (cache only)");
    problems.expect(read_file(cold_path) == read_file(warm_path),
                    "warm-cache judgments differ from the cold run");

    const auto records = read_judgments(cold_path);
    problems.expect(records.size() == 1 && records[0].query_id == "q-count" &&
                        records[0].judgments.claim_count() == 2 &&
                        records[0].judgments.gt_claim_count() == 2,
                    "cold run produced unexpected judgment content");
    detail = "one batched request per comparison; warm cache replays without traffic";
}

// ---------------------------------------------------------------------------
// 8. retry and per-instance failure isolation
// ---------------------------------------------------------------------------

void criterion_resilience(Problems& problems, std::string& detail) {
    testsupport::MockJudge mock;
    mock.set_transient_failures(true);  // ~30% of prompts fail on early deliveries
    testsupport::TempDir dir("accept-resilience");

    const std::vector<std::string> facts = {
        "Bees make honey.",        "Owls hunt at night.",  "Corks float on water.",
        "Wool keeps sheep warm.",  "Glass is made from sand."};
    std::vector<RagInstance> instances;
    for (size_t i = 0; i < facts.size(); ++i) {
        instances.push_back(make_instance("q-ok-" + std::to_string(i), facts[i], facts[i],
                                          {facts[i] + " Extra padding here."}));
    }
    // One instance whose chunk always draws an unparseable verdict; its
    // retries must exhaust without sinking the rest of the batch.
    instances.insert(instances.begin() + 2,
                     make_instance("q-poisoned", "Ravens solve puzzles.",
                                   "Ravens solve puzzles.",
                                   {"Ravens solve puzzles. POISON_RETRIABLE marker text."}));
    const std::string dataset = dir.file("dataset.jsonl");
    write_file_atomic(dataset, dataset_of(instances));

    RunConfig config;
    config.extractor.kind = "REMOTE_JUDGE";
    config.checker.kind = "REMOTE_JUDGE";
    config.judge_endpoint = mock.endpoint();
    config.judge_model = "judge-1";
    config.retry_base_delay_ms = 1;
    config.cache_dir = dir.file("cache");
    config.parallelism = 3;

    const std::string output = dir.file("judgments.jsonl");
    const CommandResult result = judge_file(dataset, config, output);
    problems.expect(result.exit_code == 1,
                    "exit code " + std::to_string(result.exit_code) + ", expected 1; err: " +
                        result.err);
    problems.expect(result.out.find("judged 5/6 instance(s); 1 failure(s)") != std::string::npos,
                    "summary line was: " + result.out);

    const auto records = read_judgments(output);
    problems.expect(records.size() == 5, "expected 5 surviving judgments, got " +
                                             std::to_string(records.size()));
    std::vector<std::string> ids;
    for (const auto& record : records) ids.push_back(record.query_id);
    const std::vector<std::string> expected_ids = {"q-ok-0", "q-ok-1", "q-ok-2", "q-ok-3",
                                                   "q-ok-4"};
    problems.expect(ids == expected_ids, "surviving judgments out of order or incomplete");
    for (const auto& record : records) {
        const MetricsRecord metrics = compute_all(record.judgments);
        problems.expect(metrics.precision == 1.0 && metrics.recall == 1.0,
                        record.query_id + ": healthy instance scored imperfectly despite "
                                          "transient failures");
    }

    const std::string errors = read_file(output + ".errors");
    problems.expect(errors.find("\"query_id\":\"q-poisoned\"") != std::string::npos,
                    "failure sidecar does not name the poisoned instance: " + errors);
    problems.expect(errors.find("unparseable label") != std::string::npos,
                    "failure sidecar does not carry the judge error: " + errors);
    problems.expect(errors.find("after 5 attempts") != std::string::npos,
                    "failure sidecar does not show retry exhaustion: " + errors);
    detail = "30% transient faults retried; one poisoned instance isolated in the sidecar";
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        std::function<void(Problems&, std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"metric suite matches the independent reference on every small configuration",
         criterion_exhaustive},
        {"random judgment sets satisfy range, partition, and permutation invariants",
         criterion_random_invariants},
        {"aggregation macro-averages per query and excludes undefined values",
         criterion_aggregation},
        {"golden dataset judgments and reports are byte-identical across parallelism",
         criterion_golden},
        {"boundary semantics: identity, empty retrieval, missing ground truth",
         criterion_boundaries},
        {"meta-evaluation statistics match hand-computed values", criterion_meta},
        {"remote judging batches per comparison and replays from a warm cache",
         criterion_cache},
        {"transient failures are retried and poisoned instances are isolated",
         criterion_resilience},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Problems problems;
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(problems, detail);
        } catch (const std::exception& e) {
            problems.add(std::string("unexpected exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (problems.ok()) {
            std::printf("[PASS] %zu. %s (%s; %lldms)\n", i + 1, criteria[i].title,
                        detail.c_str(), static_cast<long long>(ms));
        } else {
            ++failed;
            std::printf("[FAIL] %zu. %s (%zu problem(s))\n", i + 1, criteria[i].title,
                        problems.total);
            for (const std::string& item : problems.items) {
                std::printf("       - %s\n", item.c_str());
            }
        }
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<size_t>(failed),
                criteria.size());
    return failed == 0 ? 0 : 1;
}
