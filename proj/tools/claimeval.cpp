// claimeval: claim-level RAG evaluation from entailment judgments.
//
//   judge      dataset.jsonl + config -> judgments.jsonl (+ .errors/.meta.json)
//   eval       judgments.jsonl        -> per-query metrics + aggregate row
//   correlate  pairs.jsonl            -> metric/human preference correlations
//   validate   dataset.jsonl          -> schema violation listing
//
// Exit codes: 0 success, 1 partial/semantic failure, 2 input/usage failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "claimeval/claimeval.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Claim-level RAG evaluation engine"};
    app.require_subcommand(1);

    // --- judge ---
    auto* judge = app.add_subcommand("judge", "Produce entailment judgments for a dataset");
    std::string judge_dataset;
    std::string judge_config;
    std::string judge_output = "judgments.jsonl";
    int judge_parallelism = -1;
    std::string judge_cache_dir;
    judge->add_option("dataset", judge_dataset, "Dataset file (one instance per line)")
        ->required();
    judge->add_option("--config", judge_config, "Run configuration file (JSON)");
    judge->add_option("--output", judge_output, "Judgment output path");
    judge->add_option("--parallelism", judge_parallelism, "Max in-flight instances");
    judge->add_option("--cache-dir", judge_cache_dir, "Judge response cache directory");

    // --- eval ---
    auto* eval = app.add_subcommand("eval", "Compute metrics from a judgment file");
    std::string eval_judgments;
    std::string eval_output;
    std::string eval_format = "table";
    eval->add_option("judgments", eval_judgments, "Judgment file (one record per line)")
        ->required();
    eval->add_option("--output", eval_output, "Report output path (default: stdout)");
    eval->add_option("--format", eval_format, "Output format: table or jsonl");

    // --- correlate ---
    auto* correlate =
        app.add_subcommand("correlate", "Correlate metric scores with human preferences");
    std::string correlate_pairs;
    std::string correlate_output;
    std::string correlate_format = "table";
    std::vector<std::string> correlate_metrics;
    std::vector<std::string> correlate_aspects;
    correlate->add_option("pairs", correlate_pairs, "Preference-pair file (one pair per line)")
        ->required();
    correlate->add_option("--output", correlate_output, "Output path (default: stdout)");
    correlate->add_option("--format", correlate_format, "Output format: table or jsonl");
    correlate->add_option("--metric", correlate_metrics,
                          "Metric name (repeatable; default: the aspect's own metric)");
    correlate->add_option("--aspect", correlate_aspects,
                          "Aspect name (repeatable; default: all aspects)");

    // --- validate ---
    auto* validate = app.add_subcommand("validate", "Check a dataset file for violations");
    std::string validate_dataset;
    validate->add_option("dataset", validate_dataset, "Dataset file to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return claimeval::kExitUsage;
    }

    try {
        if (judge->parsed()) {
            claimeval::RunConfig config;
            if (!judge_config.empty()) {
                try {
                    config = claimeval::load_config(judge_config);
                } catch (const claimeval::Error& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return claimeval::kExitUsage;
                }
            }
            if (judge_parallelism >= 0) config.parallelism = judge_parallelism;
            if (!judge_cache_dir.empty()) config.cache_dir = judge_cache_dir;
            return claimeval::cmd_judge(judge_dataset, config, judge_output, std::cout,
                                        std::cerr);
        }
        if (eval->parsed()) {
            return claimeval::cmd_eval(eval_judgments, eval_output, eval_format, std::cout,
                                       std::cerr);
        }
        if (correlate->parsed()) {
            return claimeval::cmd_correlate(correlate_pairs, correlate_metrics,
                                            correlate_aspects, correlate_format,
                                            correlate_output, std::cout, std::cerr);
        }
        if (validate->parsed()) {
            return claimeval::cmd_validate(validate_dataset, std::cout, std::cerr);
        }
    } catch (const claimeval::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return claimeval::kExitUsage;
    } catch (const claimeval::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return claimeval::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return claimeval::kExitPartial;
    }
    return claimeval::kExitUsage;
}
