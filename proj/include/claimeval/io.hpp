#pragma once
// Line-delimited record formats and run configuration.
//
// One JSON object per line for all four record kinds (dataset instances,
// judgment sets, metric reports, preference pairs); parse(serialize(x))
// is the identity for each. Parsing is strict: wrong types, ragged
// matrices, non-normalized or duplicate claims, and out-of-range labels
// are errors naming the file and line rather than silently repaired,
// because repair would desync claim lists from their judgment matrices.

#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "claimeval/backends.hpp"
#include "claimeval/core.hpp"
#include "claimeval/meta.hpp"
#include "claimeval/metrics.hpp"
#include "claimeval/text.hpp"

namespace claimeval {

class ParseError : public Error {
  public:
    ParseError(const std::string& path, size_t line, const std::string& message)
        : Error(path + ":" + std::to_string(line) + ": " + message), line_(line) {}
    explicit ParseError(const std::string& message) : Error(message) {}

    size_t line() const { return line_; }

  private:
    size_t line_ = 0;
};

inline constexpr std::string_view kAggregateId = "__aggregate__";

namespace detail {

inline void require_field(const nlohmann::json& doc, const char* field, const char* type_name,
                          bool ok) {
    if (!doc.contains(field)) {
        throw Error(std::string("missing field '") + field + "'");
    }
    if (!ok) {
        throw Error(std::string("field '") + field + "' must be " + type_name);
    }
}

inline std::string get_string(const nlohmann::json& doc, const char* field) {
    require_field(doc, field, "a string", doc.contains(field) && doc[field].is_string());
    return doc[field].get<std::string>();
}

inline std::vector<std::string> get_string_array(const nlohmann::json& doc, const char* field) {
    require_field(doc, field, "an array", doc.contains(field) && doc[field].is_array());
    std::vector<std::string> out;
    out.reserve(doc[field].size());
    for (const auto& item : doc[field]) {
        if (!item.is_string()) {
            throw Error(std::string("field '") + field + "' must contain only strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::vector<bool> get_bool_array(const nlohmann::json& doc, const char* field) {
    require_field(doc, field, "an array", doc.contains(field) && doc[field].is_array());
    std::vector<bool> out;
    out.reserve(doc[field].size());
    for (const auto& item : doc[field]) {
        if (!item.is_boolean()) {
            throw Error(std::string("field '") + field + "' must contain only booleans");
        }
        out.push_back(item.get<bool>());
    }
    return out;
}

inline std::vector<std::vector<bool>> get_bool_matrix(const nlohmann::json& doc,
                                                      const char* field) {
    require_field(doc, field, "an array", doc.contains(field) && doc[field].is_array());
    std::vector<std::vector<bool>> out;
    out.reserve(doc[field].size());
    for (const auto& row : doc[field]) {
        if (!row.is_array()) {
            throw Error(std::string("field '") + field + "' must be an array of arrays");
        }
        std::vector<bool> cells;
        cells.reserve(row.size());
        for (const auto& item : row) {
            if (!item.is_boolean()) {
                throw Error(std::string("field '") + field + "' must contain only booleans");
            }
            cells.push_back(item.get<bool>());
        }
        out.push_back(std::move(cells));
    }
    return out;
}

// Calls fn(parsed object, line number) for every non-blank line; JSON and
// semantic errors surface as ParseError naming path:line.
template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw ParseError(path, line_no, "not a JSON object");
        }
        try {
            fn(doc, line_no);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(path, line_no, e.what());
        }
    }
}

inline std::atomic<unsigned long long>& temp_counter() {
    static std::atomic<unsigned long long> counter{0};
    return counter;
}

}  // namespace detail

// Writes content to a temp file in the target directory, then renames it
// into place, so readers never observe a partial file.
inline void write_file_atomic(const std::string& path, std::string_view content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    const std::filesystem::path temp =
        target.string() + ".tmp." + std::to_string(detail::temp_counter().fetch_add(1));
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + temp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out.good()) throw Error("short write on file: " + temp.string());
    }
    std::filesystem::rename(temp, target);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------
// Dataset records
// ---------------------------------------------------------------------------

inline RagInstance parse_instance_json(const nlohmann::json& doc) {
    RagInstance instance;
    instance.query_id = detail::get_string(doc, "query_id");
    instance.query = detail::get_string(doc, "query");
    instance.gt_answer = detail::get_string(doc, "gt_answer");
    instance.response = detail::get_string(doc, "response");
    detail::require_field(doc, "retrieved_context", "an array",
                          doc.contains("retrieved_context") && doc["retrieved_context"].is_array());
    for (const auto& item : doc["retrieved_context"]) {
        if (!item.is_object()) {
            throw Error("retrieved_context entries must be objects");
        }
        RetrievedChunk chunk;
        chunk.doc_id = detail::get_string(item, "doc_id");
        detail::require_field(item, "chunk_index", "an integer",
                              item.contains("chunk_index") && item["chunk_index"].is_number_integer());
        chunk.chunk_index = item["chunk_index"].get<int>();
        chunk.text = detail::get_string(item, "text");
        instance.retrieved.push_back(std::move(chunk));
    }
    return instance;
}

inline std::string serialize_instance(const RagInstance& instance) {
    nlohmann::ordered_json doc;
    doc["query_id"] = instance.query_id;
    doc["query"] = instance.query;
    doc["gt_answer"] = instance.gt_answer;
    doc["response"] = instance.response;
    doc["retrieved_context"] = nlohmann::ordered_json::array();
    for (const RetrievedChunk& chunk : instance.retrieved) {
        doc["retrieved_context"].push_back(nlohmann::ordered_json{
            {"doc_id", chunk.doc_id}, {"chunk_index", chunk.chunk_index}, {"text", chunk.text}});
    }
    return doc.dump();
}

struct DatasetEntry {
    RagInstance instance;
    size_t line = 0;
};

inline std::vector<DatasetEntry> read_dataset_entries(const std::string& path) {
    std::vector<DatasetEntry> entries;
    detail::for_each_record(path, [&](const nlohmann::json& doc, size_t line_no) {
        entries.push_back({parse_instance_json(doc), line_no});
    });
    return entries;
}

inline std::vector<RagInstance> read_dataset(const std::string& path) {
    std::vector<RagInstance> instances;
    for (auto& entry : read_dataset_entries(path)) {
        instances.push_back(std::move(entry.instance));
    }
    return instances;
}

// ---------------------------------------------------------------------------
// Judgment records
// ---------------------------------------------------------------------------

struct JudgmentRecord {
    std::string query_id;
    JudgmentSet judgments;

    friend bool operator==(const JudgmentRecord&, const JudgmentRecord&) = default;
};

namespace detail {

inline std::vector<Claim> claims_from_strings(const std::vector<std::string>& texts,
                                              ClaimSource source, const char* field) {
    std::vector<Claim> claims;
    claims.reserve(texts.size());
    for (size_t i = 0; i < texts.size(); ++i) {
        const std::string& text = texts[i];
        if (is_blank(text)) {
            throw Error(std::string(field) + "[" + std::to_string(i) + "] is blank");
        }
        if (normalize_text(text) != text) {
            throw Error(std::string(field) + "[" + std::to_string(i) + "] is not normalized: '" +
                        text + "'");
        }
        for (size_t j = 0; j < i; ++j) {
            if (texts[j] == text) {
                throw Error(std::string(field) + "[" + std::to_string(i) + "] duplicates entry " +
                            std::to_string(j));
            }
        }
        claims.push_back(Claim{static_cast<int>(i), text, source});
    }
    return claims;
}

}  // namespace detail

inline JudgmentRecord parse_judgment_json(const nlohmann::json& doc) {
    JudgmentRecord record;
    record.query_id = detail::get_string(doc, "query_id");
    JudgmentSet& js = record.judgments;
    js.response_claims = detail::claims_from_strings(
        detail::get_string_array(doc, "response_claims"), ClaimSource::kResponse,
        "response_claims");
    js.gt_claims = detail::claims_from_strings(detail::get_string_array(doc, "gt_claims"),
                                               ClaimSource::kGroundTruth, "gt_claims");
    js.response_vs_gt = detail::get_bool_array(doc, "response_vs_gt");
    js.gt_vs_response = detail::get_bool_array(doc, "gt_vs_response");

    const auto resp_rows = detail::get_bool_matrix(doc, "response_vs_chunks");
    const auto gt_rows = detail::get_bool_matrix(doc, "gt_vs_chunks");
    // When one claim list is empty its matrix has no rows and carries no
    // column count, so recover k from the other matrix.
    size_t k = 0;
    if (!resp_rows.empty()) {
        k = resp_rows.front().size();
    } else if (!gt_rows.empty()) {
        k = gt_rows.front().size();
    }
    js.response_vs_chunks = BoolMatrix::from_rows(resp_rows, k);
    js.gt_vs_chunks = BoolMatrix::from_rows(gt_rows, k);
    js.validate();
    return record;
}

inline std::string serialize_judgment(const JudgmentRecord& record) {
    nlohmann::ordered_json doc;
    doc["query_id"] = record.query_id;
    doc["response_claims"] = nlohmann::ordered_json::array();
    for (const Claim& claim : record.judgments.response_claims) {
        doc["response_claims"].push_back(claim.text);
    }
    doc["gt_claims"] = nlohmann::ordered_json::array();
    for (const Claim& claim : record.judgments.gt_claims) {
        doc["gt_claims"].push_back(claim.text);
    }
    doc["response_vs_gt"] = record.judgments.response_vs_gt;
    doc["gt_vs_response"] = record.judgments.gt_vs_response;
    doc["response_vs_chunks"] = record.judgments.response_vs_chunks.to_rows();
    doc["gt_vs_chunks"] = record.judgments.gt_vs_chunks.to_rows();
    return doc.dump();
}

inline std::vector<JudgmentRecord> read_judgments(const std::string& path) {
    std::vector<JudgmentRecord> records;
    detail::for_each_record(path, [&](const nlohmann::json& doc, size_t) {
        records.push_back(parse_judgment_json(doc));
    });
    return records;
}

// ---------------------------------------------------------------------------
// Report records
// ---------------------------------------------------------------------------

// One output row of the metrics report. Per-query rows put M/G/k in the
// metrics counters and 0/1 in `defined`; the aggregate row (query_id
// "__aggregate__") carries rounded mean counts, per-metric defined-instance
// counts, the instance total `n`, and the unrounded count means.
struct ReportRecord {
    std::string query_id;
    MetricsRecord metrics;
    std::array<size_t, kMetricCount> defined{};
    std::optional<size_t> n;
    std::optional<double> mean_m;
    std::optional<double> mean_g;
    std::optional<double> mean_k;

    bool is_aggregate() const { return query_id == kAggregateId; }

    friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

inline ReportRecord make_instance_report(std::string query_id, const MetricsRecord& metrics) {
    ReportRecord record;
    record.query_id = std::move(query_id);
    record.metrics = metrics;
    for (size_t i = 0; i < kMetricCount; ++i) {
        record.defined[i] = metrics.get(kAllMetrics[i]).has_value() ? 1 : 0;
    }
    return record;
}

inline ReportRecord make_aggregate_report(const AggregateReport& aggregate) {
    ReportRecord record;
    record.query_id = std::string(kAggregateId);
    for (size_t i = 0; i < kMetricCount; ++i) {
        record.metrics.set(kAllMetrics[i], aggregate.means[i]);
        record.defined[i] = aggregate.defined_counts[i];
    }
    record.metrics.n_response_claims =
        static_cast<size_t>(std::llround(aggregate.mean_response_claims));
    record.metrics.n_gt_claims = static_cast<size_t>(std::llround(aggregate.mean_gt_claims));
    record.metrics.k = static_cast<size_t>(std::llround(aggregate.mean_k));
    record.n = aggregate.instance_count;
    record.mean_m = aggregate.mean_response_claims;
    record.mean_g = aggregate.mean_gt_claims;
    record.mean_k = aggregate.mean_k;
    return record;
}

inline std::string serialize_report(const ReportRecord& record) {
    nlohmann::ordered_json doc;
    doc["query_id"] = record.query_id;
    nlohmann::ordered_json metrics;
    for (Metric m : kAllMetrics) {
        const auto v = record.metrics.get(m);
        if (v) {
            metrics[std::string(metric_name(m))] = *v;
        } else {
            metrics[std::string(metric_name(m))] = nullptr;
        }
    }
    doc["metrics"] = std::move(metrics);
    nlohmann::ordered_json counts;
    counts["m"] = record.metrics.n_response_claims;
    counts["g"] = record.metrics.n_gt_claims;
    counts["k"] = record.metrics.k;
    nlohmann::ordered_json defined;
    for (size_t i = 0; i < kMetricCount; ++i) {
        defined[std::string(metric_name(kAllMetrics[i]))] = record.defined[i];
    }
    counts["defined"] = std::move(defined);
    if (record.n) counts["n"] = *record.n;
    if (record.mean_m) counts["mean_m"] = *record.mean_m;
    if (record.mean_g) counts["mean_g"] = *record.mean_g;
    if (record.mean_k) counts["mean_k"] = *record.mean_k;
    doc["counts"] = std::move(counts);
    return doc.dump();
}

inline ReportRecord parse_report_json(const nlohmann::json& doc) {
    ReportRecord record;
    record.query_id = detail::get_string(doc, "query_id");
    detail::require_field(doc, "metrics", "an object",
                          doc.contains("metrics") && doc["metrics"].is_object());
    for (const auto& [key, value] : doc["metrics"].items()) {
        const auto metric = metric_from_name(key);
        if (!metric) throw Error("unknown metric '" + key + "'");
        if (value.is_null()) {
            record.metrics.set(*metric, std::nullopt);
        } else if (value.is_number()) {
            record.metrics.set(*metric, value.get<double>());
        } else {
            throw Error("metric '" + key + "' must be a number or null");
        }
    }
    detail::require_field(doc, "counts", "an object",
                          doc.contains("counts") && doc["counts"].is_object());
    const auto& counts = doc["counts"];
    detail::require_field(counts, "m", "an integer",
                          counts.contains("m") && counts["m"].is_number_integer());
    detail::require_field(counts, "g", "an integer",
                          counts.contains("g") && counts["g"].is_number_integer());
    detail::require_field(counts, "k", "an integer",
                          counts.contains("k") && counts["k"].is_number_integer());
    record.metrics.n_response_claims = counts["m"].get<size_t>();
    record.metrics.n_gt_claims = counts["g"].get<size_t>();
    record.metrics.k = counts["k"].get<size_t>();
    detail::require_field(counts, "defined", "an object",
                          counts.contains("defined") && counts["defined"].is_object());
    for (const auto& [key, value] : counts["defined"].items()) {
        const auto metric = metric_from_name(key);
        if (!metric) throw Error("unknown metric '" + key + "' in defined counts");
        if (!value.is_number_integer()) {
            throw Error("defined count for '" + key + "' must be an integer");
        }
        record.defined[static_cast<size_t>(*metric)] = value.get<size_t>();
    }
    if (counts.contains("n")) {
        if (!counts["n"].is_number_integer()) throw Error("counts.n must be an integer");
        record.n = counts["n"].get<size_t>();
    }
    if (counts.contains("mean_m")) record.mean_m = counts["mean_m"].get<double>();
    if (counts.contains("mean_g")) record.mean_g = counts["mean_g"].get<double>();
    if (counts.contains("mean_k")) record.mean_k = counts["mean_k"].get<double>();
    return record;
}

inline std::vector<ReportRecord> read_reports(const std::string& path) {
    std::vector<ReportRecord> records;
    detail::for_each_record(path, [&](const nlohmann::json& doc, size_t) {
        records.push_back(parse_report_json(doc));
    });
    return records;
}

// ---------------------------------------------------------------------------
// Preference-pair records
// ---------------------------------------------------------------------------

namespace detail {

inline std::map<std::string, double> parse_score_map(const nlohmann::json& doc,
                                                     const char* field) {
    require_field(doc, field, "an object", doc.contains(field) && doc[field].is_object());
    std::map<std::string, double> out;
    for (const auto& [key, value] : doc[field].items()) {
        if (!metric_from_name(key)) {
            throw Error(std::string(field) + " has unknown metric '" + key + "'");
        }
        if (!value.is_number()) {
            throw Error(std::string(field) + "['" + key + "'] must be a number");
        }
        out[key] = value.get<double>();
    }
    return out;
}

}  // namespace detail

inline PreferencePair parse_pair_json(const nlohmann::json& doc) {
    PreferencePair pair;
    pair.pair_id = detail::get_string(doc, "pair_id");
    if (is_blank(pair.pair_id)) throw Error("pair_id is blank");
    // Optional provenance: which query produced the two responses.
    pair.query_id = doc.value("query_id", "");
    pair.response_a = doc.value("response_a", "");
    pair.response_b = doc.value("response_b", "");
    pair.scores_a = detail::parse_score_map(doc, "scores_a");
    pair.scores_b = detail::parse_score_map(doc, "scores_b");
    detail::require_field(doc, "labels", "an object",
                          doc.contains("labels") && doc["labels"].is_object());
    for (const auto& [key, value] : doc["labels"].items()) {
        if (!aspect_from_name(key)) {
            throw Error("labels has unknown aspect '" + key + "'");
        }
        if (!value.is_array()) {
            throw Error("labels['" + key + "'] must be an array of integers");
        }
        std::vector<int> labels;
        labels.reserve(value.size());
        for (const auto& item : value) {
            if (!item.is_number_integer()) {
                throw Error("labels['" + key + "'] must be an array of integers");
            }
            const int label = item.get<int>();
            if (label < -2 || label > 2) {
                throw Error("labels['" + key + "'] value " + std::to_string(label) +
                            " outside [-2, 2]");
            }
            labels.push_back(label);
        }
        pair.labels[key] = std::move(labels);
    }
    return pair;
}

inline std::string serialize_pair(const PreferencePair& pair) {
    nlohmann::ordered_json doc;
    doc["pair_id"] = pair.pair_id;
    if (!pair.query_id.empty()) doc["query_id"] = pair.query_id;
    if (!pair.response_a.empty()) doc["response_a"] = pair.response_a;
    if (!pair.response_b.empty()) doc["response_b"] = pair.response_b;
    doc["scores_a"] = pair.scores_a;
    doc["scores_b"] = pair.scores_b;
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (Aspect aspect : kAllAspects) {
        const auto it = pair.labels.find(std::string(aspect_name(aspect)));
        if (it != pair.labels.end()) {
            labels[std::string(aspect_name(aspect))] = it->second;
        }
    }
    doc["labels"] = std::move(labels);
    return doc.dump();
}

inline std::vector<PreferencePair> read_pairs(const std::string& path) {
    std::vector<PreferencePair> pairs;
    detail::for_each_record(path, [&](const nlohmann::json& doc, size_t) {
        pairs.push_back(parse_pair_json(doc));
    });
    return pairs;
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct BackendSpec {
    std::string kind;          // FIXTURE | SENTENCE | LEXICAL | REMOTE_JUDGE
    std::string fixture_path;  // FIXTURE only

    friend bool operator==(const BackendSpec&, const BackendSpec&) = default;
};

struct RunConfig {
    BackendSpec extractor{"SENTENCE", ""};
    BackendSpec checker{"LEXICAL", ""};
    std::string judge_endpoint;
    std::string judge_model;
    double temperature = 0.0;
    int max_tokens = 2048;
    bool batch_checks = true;
    int parallelism = 8;
    std::string cache_dir;  // empty disables caching
    int retry_max_attempts = 5;
    int retry_base_delay_ms = 1000;
    double retry_factor = 2.0;
    // Upstream chunking parameters, recorded into run metadata verbatim;
    // this engine never chunks documents itself.
    int chunk_size = 300;
    double chunk_overlap_ratio = 0.2;
    int top_k = 20;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline void validate_config(const RunConfig& config) {
    if (!extractor_kind_from_name(config.extractor.kind)) {
        throw ValidationError("unknown extractor kind '" + config.extractor.kind + "'");
    }
    if (!checker_kind_from_name(config.checker.kind)) {
        throw ValidationError("unknown checker kind '" + config.checker.kind + "'");
    }
    if (config.extractor.kind == "FIXTURE" && config.extractor.fixture_path.empty()) {
        throw ValidationError("FIXTURE extractor requires fixture_path");
    }
    if (config.checker.kind == "FIXTURE" && config.checker.fixture_path.empty()) {
        throw ValidationError("FIXTURE checker requires fixture_path");
    }
    const bool remote = config.extractor.kind == "REMOTE_JUDGE" ||
                        config.checker.kind == "REMOTE_JUDGE";
    if (remote && (config.judge_endpoint.empty() || config.judge_model.empty())) {
        throw ValidationError("REMOTE_JUDGE backends require judge.endpoint and judge.model");
    }
    if (config.parallelism < 1) throw ValidationError("parallelism must be at least 1");
    if (config.max_tokens < 1) throw ValidationError("max_tokens must be at least 1");
    if (config.retry_max_attempts < 1) {
        throw ValidationError("retry.max_attempts must be at least 1");
    }
    if (config.retry_base_delay_ms < 0) {
        throw ValidationError("retry.base_delay_ms must be non-negative");
    }
    if (config.retry_factor < 1.0) throw ValidationError("retry.factor must be at least 1");
    if (config.temperature < 0.0) throw ValidationError("temperature must be non-negative");
    if (config.chunk_size < 1) throw ValidationError("chunk_size must be at least 1");
    if (config.chunk_overlap_ratio < 0.0 || config.chunk_overlap_ratio >= 1.0) {
        throw ValidationError("chunk_overlap_ratio must be in [0, 1)");
    }
    if (config.top_k < 0) throw ValidationError("top_k must be non-negative");
}

inline RunConfig parse_config_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");
    RunConfig config;
    const auto backend_spec = [](const nlohmann::json& node, const char* name) {
        BackendSpec spec;
        if (!node.is_object()) {
            throw ValidationError(std::string("config.") + name + " must be an object");
        }
        spec.kind = node.value("kind", "");
        spec.fixture_path = node.value("fixture_path", "");
        return spec;
    };
    if (doc.contains("extractor")) config.extractor = backend_spec(doc["extractor"], "extractor");
    if (doc.contains("checker")) config.checker = backend_spec(doc["checker"], "checker");
    if (doc.contains("judge")) {
        const auto& judge = doc["judge"];
        if (!judge.is_object()) throw ValidationError("config.judge must be an object");
        config.judge_endpoint = judge.value("endpoint", "");
        config.judge_model = judge.value("model", "");
        config.temperature = judge.value("temperature", 0.0);
        config.max_tokens = judge.value("max_tokens", 2048);
        config.batch_checks = judge.value("batch_checks", true);
    }
    config.parallelism = doc.value("parallelism", 8);
    config.cache_dir = doc.value("cache_dir", "");
    if (doc.contains("retry")) {
        const auto& retry = doc["retry"];
        if (!retry.is_object()) throw ValidationError("config.retry must be an object");
        config.retry_max_attempts = retry.value("max_attempts", 5);
        config.retry_base_delay_ms = retry.value("base_delay_ms", 1000);
        config.retry_factor = retry.value("factor", 2.0);
    }
    if (doc.contains("metadata")) {
        const auto& meta = doc["metadata"];
        if (!meta.is_object()) throw ValidationError("config.metadata must be an object");
        config.chunk_size = meta.value("chunk_size", 300);
        config.chunk_overlap_ratio = meta.value("chunk_overlap_ratio", 0.2);
        config.top_k = meta.value("top_k", 20);
    }
    validate_config(config);
    return config;
}

inline RunConfig load_config(const std::string& path) {
    const std::string text = read_file(path);
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError(path, 1, "config is not valid JSON");
    try {
        return parse_config_json(doc);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

// The run-metadata echo written next to judgment files.
inline std::string serialize_run_metadata(const RunConfig& config) {
    nlohmann::ordered_json doc;
    doc["extractor"] = config.extractor.kind;
    doc["checker"] = config.checker.kind;
    doc["model"] = config.judge_model;
    doc["temperature"] = config.temperature;
    doc["max_tokens"] = config.max_tokens;
    doc["parallelism"] = config.parallelism;
    doc["chunk_size"] = config.chunk_size;
    doc["chunk_overlap_ratio"] = config.chunk_overlap_ratio;
    doc["top_k"] = config.top_k;
    return doc.dump(2) + "\n";
}

}  // namespace claimeval
