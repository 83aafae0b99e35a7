#pragma once
// Remote judge: a chat-completion-style HTTP endpoint used for claim
// extraction and entailment checking.
//
// One POST per (claim list, reference) pair by default; transport errors,
// 5xx statuses, and unparseable payloads are retried with exponential
// backoff, while 4xx statuses and label-count mismatches fail hard.
// Validated responses are cached on disk keyed by (role, model, template
// version, input, reference), so editing a prompt template version string
// invalidates stale entries and a warm rerun issues zero HTTP requests.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "claimeval/backends.hpp"
#include "claimeval/cache.hpp"
#include "claimeval/core.hpp"

namespace claimeval {

// Hard remote-judge failure: retries exhausted, a 4xx status, or a
// structurally impossible response.
class JudgeError : public Error {
  public:
    using Error::Error;
};

enum class JudgeRole { kExtract, kCheck };

constexpr std::string_view judge_role_name(JudgeRole role) {
    return role == JudgeRole::kExtract ? "extract" : "check";
}

inline constexpr std::string_view kExtractTemplateVersion = "extract-v1";
inline constexpr std::string_view kCheckTemplateVersion = "check-v1";

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{1000};
    double factor = 2.0;

    std::chrono::milliseconds delay_before_attempt(int next_attempt) const {
        double scale = 1.0;
        for (int i = 2; i < next_attempt; ++i) scale *= factor;
        return std::chrono::milliseconds(
            static_cast<long long>(static_cast<double>(base_delay.count()) * scale));
    }
};

struct JudgeUsage {
    long long prompt_tokens = 0;
    long long completion_tokens = 0;

    friend bool operator==(const JudgeUsage&, const JudgeUsage&) = default;
};

struct JudgeRequest {
    JudgeRole role = JudgeRole::kCheck;
    std::string prompt;
    std::string model;
    double temperature = 0.0;
    int max_tokens = 2048;
};

struct JudgeResponse {
    std::string raw;                    // verbatim message content
    std::vector<std::string> payload;   // parsed claim texts or label names
    JudgeUsage usage;

    friend bool operator==(const JudgeResponse&, const JudgeResponse&) = default;
};

inline std::string serialize_judge_response(const JudgeResponse& response) {
    nlohmann::ordered_json doc;
    doc["raw"] = response.raw;
    doc["payload"] = response.payload;
    doc["usage"] = {{"prompt_tokens", response.usage.prompt_tokens},
                    {"completion_tokens", response.usage.completion_tokens}};
    return doc.dump();
}

inline std::optional<JudgeResponse> parse_judge_response(std::string_view payload) {
    nlohmann::json doc = nlohmann::json::parse(payload, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("raw") ||
        !doc["raw"].is_string() || !doc.contains("payload") || !doc["payload"].is_array()) {
        return std::nullopt;
    }
    JudgeResponse out;
    out.raw = doc["raw"].get<std::string>();
    for (const auto& item : doc["payload"]) {
        if (!item.is_string()) return std::nullopt;
        out.payload.push_back(item.get<std::string>());
    }
    if (doc.contains("usage") && doc["usage"].is_object()) {
        out.usage.prompt_tokens = doc["usage"].value("prompt_tokens", 0LL);
        out.usage.completion_tokens = doc["usage"].value("completion_tokens", 0LL);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Prompt templates. The template version strings participate in cache keys;
// bump them whenever the wording changes.
// ---------------------------------------------------------------------------

inline std::string render_extract_prompt(std::string_view text) {
    std::string prompt;
    prompt += "Decompose the text between <<< and >>> into short, standalone factual claims.\n";
    prompt += "Write exactly one claim per line, with no numbering, bullets, or commentary.\n";
    prompt += "Each claim must be a complete statement understandable on its own.\n\n";
    prompt += "<<<\n";
    prompt += text;
    prompt += "\n>>>\n";
    return prompt;
}

inline std::string render_check_prompt(const std::vector<std::string>& claims,
                                       std::string_view reference) {
    std::string prompt;
    prompt += "Below is a reference text between <<< and >>>, followed by a list of claims.\n";
    prompt += "For each claim, decide whether the reference entails it, contradicts it, or\n";
    prompt += "neither. Answer with exactly one word per line, in claim order, chosen from:\n";
    prompt += "Entailment, Neutral, Contradiction. Output nothing else.\n\n";
    prompt += "Reference:\n<<<\n";
    prompt += reference;
    prompt += "\n>>>\n\nClaims:\n";
    for (size_t i = 0; i < claims.size(); ++i) {
        prompt += std::to_string(i + 1);
        prompt += ". ";
        prompt += claims[i];
        prompt += "\n";
    }
    return prompt;
}

// ---------------------------------------------------------------------------
// HTTP client
// ---------------------------------------------------------------------------

struct RemoteJudgeConfig {
    std::string endpoint;  // full URL, e.g. http://127.0.0.1:8821/v1/chat/completions
    std::string model;
    double temperature = 0.0;
    int max_tokens = 2048;
    RetryPolicy retry;
    std::optional<std::string> api_key;  // falls back to $JUDGE_API_KEY
    bool batch_checks = true;            // one request per (claim list, reference)
};

namespace detail {

struct EndpointParts {
    std::string base;  // scheme://host:port
    std::string path;
};

inline EndpointParts split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("judge endpoint must include a scheme: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

struct ParseOutcome {
    enum class Status { kOk, kRetriable, kFatal };
    Status status = Status::kOk;
    std::string message;

    static ParseOutcome ok() { return {Status::kOk, {}}; }
    static ParseOutcome retriable(std::string msg) {
        return {Status::kRetriable, std::move(msg)};
    }
    static ParseOutcome fatal(std::string msg) { return {Status::kFatal, std::move(msg)}; }
};

inline std::string trim_ascii(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n'))
        --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> non_blank_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line = trim_ascii(text.substr(start, end - start));
        if (!line.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

}  // namespace detail

class RemoteJudgeClient {
  public:
    RemoteJudgeClient(RemoteJudgeConfig config, std::shared_ptr<CacheStore> cache)
        : config_(std::move(config)), cache_(std::move(cache)) {
        detail::split_endpoint(config_.endpoint);  // fail fast on a bad URL
        if (!config_.api_key) {
            if (const char* env = std::getenv("JUDGE_API_KEY")) {
                config_.api_key = std::string(env);
            }
        }
    }

    const RemoteJudgeConfig& config() const { return config_; }

    long long http_requests() const { return http_requests_.load(); }
    long long cache_hits() const { return cache_hits_.load(); }

    // Runs one judged completion: consult the cache, otherwise POST with
    // retries, validate via `parse` (which fills response.payload), and
    // cache only responses that validated. `validate_cached` re-checks a
    // cache hit so a corrupt or stale entry falls back to a live request.
    JudgeResponse complete(
        JudgeRole role, const std::string& prompt, const std::string& input_text,
        const std::string& reference_text,
        const std::function<detail::ParseOutcome(JudgeResponse&)>& parse,
        const std::function<bool(const JudgeResponse&)>& validate_cached) const {
        const std::string_view version =
            role == JudgeRole::kExtract ? kExtractTemplateVersion : kCheckTemplateVersion;
        const std::string key =
            cache_key(judge_role_name(role), config_.model, version, input_text, reference_text);
        if (cache_) {
            if (const auto hit = cache_->load(key)) {
                if (auto cached = parse_judge_response(*hit); cached && validate_cached(*cached)) {
                    cache_hits_.fetch_add(1);
                    return std::move(*cached);
                }
            }
        }

        std::string last_error;
        for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
            if (attempt > 1) {
                std::this_thread::sleep_for(config_.retry.delay_before_attempt(attempt));
            }
            JudgeResponse response;
            const detail::ParseOutcome outcome = post_once(prompt, response);
            if (outcome.status == detail::ParseOutcome::Status::kOk) {
                const detail::ParseOutcome parsed = parse(response);
                if (parsed.status == detail::ParseOutcome::Status::kOk) {
                    if (cache_) cache_->store(key, serialize_judge_response(response));
                    return response;
                }
                if (parsed.status == detail::ParseOutcome::Status::kFatal) {
                    throw JudgeError(parsed.message);
                }
                last_error = parsed.message;
            } else if (outcome.status == detail::ParseOutcome::Status::kFatal) {
                throw JudgeError(outcome.message);
            } else {
                last_error = outcome.message;
            }
        }
        throw JudgeError("judge request failed after " +
                         std::to_string(config_.retry.max_attempts) +
                         " attempts; last error: " + last_error);
    }

  private:
    // One HTTP round trip. kOk means a syntactically valid completion body
    // whose message content is in response.raw; payload parsing is the
    // caller's job.
    detail::ParseOutcome post_once(const std::string& prompt, JudgeResponse& response) const {
        const detail::EndpointParts parts = detail::split_endpoint(config_.endpoint);
        httplib::Client client(parts.base);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(120, 0);
        if (config_.api_key) client.set_bearer_token_auth(*config_.api_key);

        nlohmann::ordered_json body;
        body["model"] = config_.model;
        body["temperature"] = config_.temperature;
        body["max_tokens"] = config_.max_tokens;
        body["messages"] = nlohmann::ordered_json::array(
            {nlohmann::ordered_json{{"role", "user"}, {"content", prompt}}});

        http_requests_.fetch_add(1);
        httplib::Result result = client.Post(parts.path, body.dump(), "application/json");
        if (!result) {
            return detail::ParseOutcome::retriable(
                "transport error: " + httplib::to_string(result.error()));
        }
        if (result->status >= 500) {
            return detail::ParseOutcome::retriable("server error: HTTP " +
                                                   std::to_string(result->status));
        }
        if (result->status >= 400) {
            return detail::ParseOutcome::fatal("judge rejected request: HTTP " +
                                               std::to_string(result->status) + " " +
                                               result->body);
        }
        nlohmann::json doc =
            nlohmann::json::parse(result->body, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded() || !doc.is_object()) {
            return detail::ParseOutcome::retriable("response body is not a JSON object");
        }
        if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty() ||
            !doc["choices"][0].contains("message") ||
            !doc["choices"][0]["message"].contains("content") ||
            !doc["choices"][0]["message"]["content"].is_string()) {
            return detail::ParseOutcome::retriable(
                "response body missing choices[0].message.content");
        }
        response.raw = doc["choices"][0]["message"]["content"].get<std::string>();
        if (doc.contains("usage") && doc["usage"].is_object()) {
            response.usage.prompt_tokens = doc["usage"].value("prompt_tokens", 0LL);
            response.usage.completion_tokens = doc["usage"].value("completion_tokens", 0LL);
        }
        return detail::ParseOutcome::ok();
    }

    RemoteJudgeConfig config_;
    std::shared_ptr<CacheStore> cache_;
    mutable std::atomic<long long> http_requests_{0};
    mutable std::atomic<long long> cache_hits_{0};
};

// ---------------------------------------------------------------------------
// Backend adapters
// ---------------------------------------------------------------------------

class RemoteJudgeExtractor final : public Extractor {
  public:
    explicit RemoteJudgeExtractor(std::shared_ptr<RemoteJudgeClient> client)
        : client_(std::move(client)) {}

    std::vector<Claim> extract(const ExtractionRequest& request) const override {
        const std::string prompt = render_extract_prompt(request.text);
        const auto parse = [](JudgeResponse& response) {
            response.payload = detail::non_blank_lines(response.raw);
            return detail::ParseOutcome::ok();
        };
        const auto validate_cached = [](const JudgeResponse&) { return true; };
        const JudgeResponse response = client_->complete(JudgeRole::kExtract, prompt,
                                                         request.text, "", parse, validate_cached);
        std::vector<Claim> claims = make_claims(response.payload, request.source);
        if (claims.empty() && request.source == ClaimSource::kGroundTruth) {
            throw BackendError("judge extracted no ground-truth claims; raw response: " +
                               response.raw);
        }
        return claims;
    }

    std::string_view kind_name() const override { return "REMOTE_JUDGE"; }

  private:
    std::shared_ptr<RemoteJudgeClient> client_;
};

class RemoteJudgeChecker final : public Checker {
  public:
    explicit RemoteJudgeChecker(std::shared_ptr<RemoteJudgeClient> client)
        : client_(std::move(client)) {}

    std::vector<EntailmentLabel> check(const CheckRequest& request) const override {
        if (request.claims.empty()) return {};
        if (client_->config().batch_checks) {
            return check_list(request.claims, request.reference);
        }
        std::vector<EntailmentLabel> labels;
        labels.reserve(request.claims.size());
        for (const std::string& claim : request.claims) {
            const std::vector<EntailmentLabel> one = check_list({claim}, request.reference);
            labels.push_back(one.front());
        }
        return labels;
    }

    std::string_view kind_name() const override { return "REMOTE_JUDGE"; }

  private:
    std::vector<EntailmentLabel> check_list(const std::vector<std::string>& claims,
                                            const std::string& reference) const {
        const std::string prompt = render_check_prompt(claims, reference);
        std::string joined;  // claims never contain '\n', so this is injective
        for (const std::string& claim : claims) {
            joined += claim;
            joined += '\n';
        }
        const size_t expected = claims.size();
        const auto parse = [expected](JudgeResponse& response) {
            const std::vector<std::string> lines = detail::non_blank_lines(response.raw);
            std::vector<std::string> names;
            names.reserve(lines.size());
            for (const std::string& line : lines) {
                const auto label = parse_label(line);
                if (!label) {
                    return detail::ParseOutcome::retriable("unparseable label line: '" + line +
                                                           "'");
                }
                names.emplace_back(label_name(*label));
            }
            if (names.size() != expected) {
                return detail::ParseOutcome::fatal(
                    "judge returned " + std::to_string(names.size()) + " labels for " +
                    std::to_string(expected) + " claims");
            }
            response.payload = std::move(names);
            return detail::ParseOutcome::ok();
        };
        const auto validate_cached = [expected](const JudgeResponse& cached) {
            if (cached.payload.size() != expected) return false;
            for (const std::string& name : cached.payload) {
                if (!parse_label(name)) return false;
            }
            return true;
        };
        const JudgeResponse response = client_->complete(JudgeRole::kCheck, prompt, joined,
                                                         reference, parse, validate_cached);
        std::vector<EntailmentLabel> labels;
        labels.reserve(response.payload.size());
        for (const std::string& name : response.payload) {
            labels.push_back(*parse_label(name));
        }
        return labels;
    }

    std::shared_ptr<RemoteJudgeClient> client_;
};

}  // namespace claimeval
