#pragma once
// The four commands behind the CLI, reusable from tests.
//
// Exit-code contract, stable across commands: 0 = success, 1 = partial or
// semantic failure (some instances failed, records skipped, violations
// found, no valid pairs), 2 = input/usage failure (unreadable or malformed
// input, bad configuration, bad flags).

#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "claimeval/io.hpp"
#include "claimeval/judge_client.hpp"
#include "claimeval/pipeline.hpp"
#include "claimeval/render.hpp"

namespace claimeval {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitUsage = 2;

struct Backends {
    std::unique_ptr<Extractor> extractor;
    std::unique_ptr<Checker> checker;
    std::shared_ptr<RemoteJudgeClient> client;  // set iff either side is REMOTE_JUDGE
};

inline Backends make_backends(const RunConfig& config) {
    validate_config(config);
    Backends backends;
    if (config.extractor.kind == "REMOTE_JUDGE" || config.checker.kind == "REMOTE_JUDGE") {
        RemoteJudgeConfig rc;
        rc.endpoint = config.judge_endpoint;
        rc.model = config.judge_model;
        rc.temperature = config.temperature;
        rc.max_tokens = config.max_tokens;
        rc.retry.max_attempts = config.retry_max_attempts;
        rc.retry.base_delay = std::chrono::milliseconds(config.retry_base_delay_ms);
        rc.retry.factor = config.retry_factor;
        rc.batch_checks = config.batch_checks;
        std::shared_ptr<CacheStore> cache;
        if (!config.cache_dir.empty()) {
            cache = std::make_shared<CacheStore>(config.cache_dir);
        }
        backends.client = std::make_shared<RemoteJudgeClient>(std::move(rc), std::move(cache));
    }

    if (config.extractor.kind == "SENTENCE") {
        backends.extractor = std::make_unique<SentenceExtractor>();
    } else if (config.extractor.kind == "FIXTURE") {
        backends.extractor = std::make_unique<FixtureExtractor>(config.extractor.fixture_path);
    } else {
        backends.extractor = std::make_unique<RemoteJudgeExtractor>(backends.client);
    }

    if (config.checker.kind == "LEXICAL") {
        backends.checker = std::make_unique<LexicalChecker>();
    } else if (config.checker.kind == "FIXTURE") {
        backends.checker = std::make_unique<FixtureChecker>(config.checker.fixture_path);
    } else {
        backends.checker = std::make_unique<RemoteJudgeChecker>(backends.client);
    }
    return backends;
}

inline int cmd_judge(const std::string& dataset_path, const RunConfig& config,
                     const std::string& output_path, std::ostream& out, std::ostream& err) {
    std::vector<DatasetEntry> entries;
    try {
        entries = read_dataset_entries(dataset_path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (entries.empty()) {
        err << "error: no instances in " << dataset_path << "\n";
        return kExitUsage;
    }
    // The judgment file is keyed by query_id, so duplicates cannot be judged.
    std::map<std::string, size_t> first_line;
    for (const DatasetEntry& entry : entries) {
        const auto [it, inserted] = first_line.emplace(entry.instance.query_id, entry.line);
        if (!inserted) {
            err << "error: duplicate query_id '" << entry.instance.query_id << "' (lines "
                << it->second << " and " << entry.line << ")\n";
            return kExitUsage;
        }
    }

    Backends backends;
    try {
        backends = make_backends(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<RagInstance> instances;
    instances.reserve(entries.size());
    for (DatasetEntry& entry : entries) instances.push_back(std::move(entry.instance));

    const BatchResult result = run_batch(instances, *backends.extractor, *backends.checker,
                                         static_cast<size_t>(config.parallelism));

    std::string body;
    for (size_t i = 0; i < instances.size(); ++i) {
        if (result.judgments[i]) {
            body += serialize_judgment({instances[i].query_id, *result.judgments[i]});
            body += '\n';
        }
    }
    const std::string errors_path = output_path + ".errors";
    try {
        write_file_atomic(output_path, body);
        write_file_atomic(output_path + ".meta.json", serialize_run_metadata(config));
        if (result.errors.empty()) {
            std::filesystem::remove(errors_path);
        } else {
            std::string error_body;
            for (const InstanceFailure& failure : result.errors) {
                nlohmann::ordered_json doc;
                doc["query_id"] = failure.query_id;
                doc["error"] = failure.message;
                error_body += doc.dump();
                error_body += '\n';
            }
            write_file_atomic(errors_path, error_body);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    out << "judged " << result.success_count() << "/" << instances.size() << " instance(s)";
    if (!result.errors.empty()) {
        out << "; " << result.errors.size() << " failure(s) listed in " << errors_path;
    }
    out << "\n";
    return result.errors.empty() ? kExitOk : kExitPartial;
}

inline int cmd_eval(const std::string& judgment_path, const std::string& output_path,
                    const std::string& format, std::ostream& out, std::ostream& err) {
    if (format != "table" && format != "jsonl") {
        err << "error: unknown format '" << format << "' (expected table or jsonl)\n";
        return kExitUsage;
    }
    std::vector<JudgmentRecord> records;
    try {
        records = read_judgments(judgment_path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (records.empty()) {
        err << "error: no judgment records in " << judgment_path << "\n";
        return kExitUsage;
    }

    bool skipped = false;
    std::vector<ReportRecord> per_query;
    std::vector<MetricsRecord> metric_records;
    for (const JudgmentRecord& record : records) {
        if (record.judgments.gt_claim_count() == 0) {
            err << "warning: skipping query '" << record.query_id
                << "': no ground-truth claims\n";
            skipped = true;
            continue;
        }
        const MetricsRecord metrics = compute_all(record.judgments);
        per_query.push_back(make_instance_report(record.query_id, metrics));
        metric_records.push_back(metrics);
    }
    if (per_query.empty()) {
        err << "error: no usable judgment records\n";
        return kExitPartial;
    }
    const ReportRecord aggregate_row = make_aggregate_report(aggregate(metric_records));

    std::string rendered;
    if (format == "jsonl") {
        for (const ReportRecord& record : per_query) {
            rendered += serialize_report(record);
            rendered += '\n';
        }
        rendered += serialize_report(aggregate_row);
        rendered += '\n';
    } else {
        rendered = render_report_table(per_query, aggregate_row);
    }

    if (output_path.empty()) {
        out << rendered;
    } else {
        try {
            write_file_atomic(output_path, rendered);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return skipped ? kExitPartial : kExitOk;
}

inline int cmd_correlate(const std::string& pairs_path, std::vector<std::string> metric_flags,
                         std::vector<std::string> aspect_flags, const std::string& format,
                         const std::string& output_path, std::ostream& out, std::ostream& err) {
    if (format != "table" && format != "jsonl") {
        err << "error: unknown format '" << format << "' (expected table or jsonl)\n";
        return kExitUsage;
    }
    for (const std::string& name : metric_flags) {
        if (!metric_from_name(name)) {
            err << "error: unknown metric '" << name << "'\n";
            return kExitUsage;
        }
    }
    for (const std::string& name : aspect_flags) {
        if (!aspect_from_name(name)) {
            err << "error: unknown aspect '" << name << "'\n";
            return kExitUsage;
        }
    }
    std::vector<PreferencePair> pairs;
    try {
        pairs = read_pairs(pairs_path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (pairs.empty()) {
        err << "error: no preference pairs in " << pairs_path << "\n";
        return kExitUsage;
    }

    if (aspect_flags.empty()) {
        for (Aspect aspect : kAllAspects) {
            aspect_flags.emplace_back(aspect_name(aspect));
        }
    }
    std::vector<CorrelationRow> rows;
    for (const std::string& aspect : aspect_flags) {
        if (metric_flags.empty()) {
            // Default pairing: the metric that plays this aspect's role.
            const Metric metric = default_metric_for_aspect(*aspect_from_name(aspect));
            rows.push_back({std::string(metric_name(metric)), aspect,
                            correlate_metric(pairs, metric_name(metric), aspect)});
        } else {
            for (const std::string& metric : metric_flags) {
                rows.push_back({metric, aspect, correlate_metric(pairs, metric, aspect)});
            }
        }
    }

    bool any_valid = false;
    for (const CorrelationRow& row : rows) {
        if (row.result.n > 0) any_valid = true;
    }
    if (!any_valid) {
        err << "error: no valid pairs for any requested metric/aspect\n";
        return kExitPartial;
    }

    std::string rendered;
    if (format == "jsonl") {
        for (const CorrelationRow& row : rows) {
            rendered += serialize_correlation(row);
            rendered += '\n';
        }
    } else {
        rendered = render_correlation_table(rows);
    }
    if (output_path.empty()) {
        out << rendered;
    } else {
        try {
            write_file_atomic(output_path, rendered);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return kExitOk;
}

inline int cmd_validate(const std::string& dataset_path, std::ostream& out, std::ostream& err) {
    std::vector<DatasetEntry> entries;
    try {
        entries = read_dataset_entries(dataset_path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (entries.empty()) {
        err << "error: no instances in " << dataset_path << "\n";
        return kExitUsage;
    }

    size_t count = 0;
    std::map<std::string, size_t> first_line;
    for (const DatasetEntry& entry : entries) {
        for (const Violation& violation : validate_instance(entry.instance)) {
            out << dataset_path << ":" << entry.line << ": query '" << entry.instance.query_id
                << "': " << violation.field << ": " << violation.message << "\n";
            ++count;
        }
        const auto [it, inserted] = first_line.emplace(entry.instance.query_id, entry.line);
        if (!inserted) {
            out << dataset_path << ":" << entry.line << ": duplicate query_id '"
                << entry.instance.query_id << "' (lines " << it->second << " and " << entry.line
                << ")\n";
            ++count;
        }
    }
    out << count << (count == 1 ? " violation" : " violations") << "\n";
    return count == 0 ? kExitOk : kExitPartial;
}

}  // namespace claimeval
