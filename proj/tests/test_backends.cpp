#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "claimeval/backends.hpp"
#include "support/tempdir.hpp"

using namespace claimeval;
using testsupport::TempDir;

namespace {

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& line : lines) out << line << "\n";
}

CheckRequest check_request(std::vector<std::string> claims, std::string reference) {
    CheckRequest req;
    req.query_id = "q1";
    req.claims = std::move(claims);
    req.reference = std::move(reference);
    return req;
}

}  // namespace

TEST_CASE("backend kind names round-trip", "[backends]") {
    CHECK(extractor_kind_name(ExtractorKind::kSentence) == "SENTENCE");
    CHECK(extractor_kind_from_name("FIXTURE") == ExtractorKind::kFixture);
    CHECK(extractor_kind_from_name("REMOTE_JUDGE") == ExtractorKind::kRemoteJudge);
    CHECK_FALSE(extractor_kind_from_name("LEXICAL").has_value());  // checker-only kind

    CHECK(checker_kind_name(CheckerKind::kLexical) == "LEXICAL");
    CHECK(checker_kind_from_name("LEXICAL") == CheckerKind::kLexical);
    CHECK_FALSE(checker_kind_from_name("SENTENCE").has_value());  // extractor-only kind
    CHECK_FALSE(checker_kind_from_name("lexical").has_value());   // names are case-sensitive
}

TEST_CASE("SentenceExtractor turns sentences into canonical claims", "[backends]") {
    const SentenceExtractor ex;
    ExtractionRequest req;
    req.query_id = "q1";
    req.text = "Cats purr. Dogs BARK.  Cats purr.";
    req.source = ClaimSource::kResponse;
    const auto claims = ex.extract(req);
    REQUIRE(claims.size() == 2);  // duplicate sentence deduplicated
    CHECK(claims[0].text == "cats purr.");
    CHECK(claims[1].text == "dogs bark.");
    CHECK(claims[0].claim_id == 0);
    CHECK(claims[1].claim_id == 1);
    CHECK(claims[0].source == ClaimSource::kResponse);

    req.text = "   ";
    CHECK(ex.extract(req).empty());
    CHECK(ex.kind_name() == "SENTENCE");
}

TEST_CASE("LexicalChecker entails on contiguous normalized substring", "[backends]") {
    const LexicalChecker ch;
    const auto labels = ch.check(check_request(
        {"dogs bark", "cats purr", "a b c"}, "DOGS   bark loudly. a b x c."));
    REQUIRE(labels.size() == 3);
    CHECK(labels[0] == EntailmentLabel::kEntailment);  // case/space-insensitive hit
    CHECK(labels[1] == EntailmentLabel::kNeutral);
    CHECK(labels[2] == EntailmentLabel::kNeutral);  // subsequence but not substring

    CHECK(ch.check(check_request({}, "anything")).empty());
    CHECK(ch.kind_name() == "LEXICAL");
}

TEST_CASE("LexicalChecker normalizes unicode before matching", "[backends]") {
    const LexicalChecker ch;
    // Decomposed claim vs precomposed reference.
    const auto labels = ch.check(check_request({"cafe\xcc\x81 au lait"}, "CAF\xc3\x89 AU LAIT"));
    REQUIRE(labels.size() == 1);
    CHECK(labels[0] == EntailmentLabel::kEntailment);
}

TEST_CASE("FixtureExtractor replays stored claim lists", "[backends]") {
    TempDir dir("fx-extract");
    const auto path = dir.file("extract.jsonl");
    write_lines(path, {
        R"({"query_id":"q1","response_claims":["the sky is blue."],"gt_claims":["the sky is blue.","water is wet."]})",
        "",
        R"({"query_id":"q2","response_claims":[],"gt_claims":["one claim."]})",
    });
    const FixtureExtractor ex(path);

    ExtractionRequest req;
    req.query_id = "q1";
    req.source = ClaimSource::kGroundTruth;
    const auto gt = ex.extract(req);
    REQUIRE(gt.size() == 2);
    CHECK(gt[0].text == "the sky is blue.");
    CHECK(gt[1].text == "water is wet.");
    CHECK(gt[1].source == ClaimSource::kGroundTruth);

    req.source = ClaimSource::kResponse;
    CHECK(ex.extract(req).size() == 1);

    req.query_id = "q2";
    CHECK(ex.extract(req).empty());

    req.query_id = "missing";
    CHECK_THROWS_WITH(ex.extract(req), Catch::Matchers::ContainsSubstring("missing"));
    CHECK(ex.kind_name() == "FIXTURE");
}

TEST_CASE("FixtureExtractor rejects non-canonical stored claims", "[backends]") {
    TempDir dir("fx-extract-bad");
    const auto path = dir.file("extract.jsonl");
    write_lines(path, {
        R"({"query_id":"upper","response_claims":["NOT Normalized"],"gt_claims":[]})",
        R"({"query_id":"dup","response_claims":["twice.","twice."],"gt_claims":[]})",
        R"({"query_id":"blank","response_claims":["  "],"gt_claims":[]})",
    });
    const FixtureExtractor ex(path);
    for (const std::string id : {"upper", "dup", "blank"}) {
        ExtractionRequest req;
        req.query_id = id;
        req.source = ClaimSource::kResponse;
        CHECK_THROWS_AS(ex.extract(req), BackendError);
    }
}

TEST_CASE("FixtureExtractor rejects unreadable or malformed files", "[backends]") {
    CHECK_THROWS_WITH(FixtureExtractor("/nonexistent/path.jsonl"),
                      Catch::Matchers::ContainsSubstring("cannot open"));

    TempDir dir("fx-extract-bad2");
    const auto path = dir.file("broken.jsonl");
    write_lines(path, {R"(not json)"});
    CHECK_THROWS_WITH(FixtureExtractor(path),
                      Catch::Matchers::ContainsSubstring(":1"));

    const auto path2 = dir.file("missing-id.jsonl");
    write_lines(path2, {R"({"response_claims":[]})"});
    CHECK_THROWS_WITH(FixtureExtractor(path2),
                      Catch::Matchers::ContainsSubstring("query_id"));
}

TEST_CASE("FixtureChecker routes requests to the right stored labels", "[backends]") {
    TempDir dir("fx-check");
    const auto path = dir.file("check.jsonl");
    write_lines(path, {
        R"({"query_id":"q1","response_vs_gt":["entailment","neutral"],"gt_vs_response":["contradiction"],)"
        R"("response_vs_chunks":[["entailment","neutral"],["neutral","neutral"]],)"
        R"("gt_vs_chunks":[["neutral","entailment"]]})",
    });
    const FixtureChecker ch(path);

    CheckRequest req;
    req.query_id = "q1";
    req.claim_source = ClaimSource::kResponse;
    req.reference_kind = ReferenceKind::kGtAnswer;
    req.claims = {"claim a", "claim b"};
    auto labels = ch.check(req);
    CHECK(labels == std::vector<EntailmentLabel>{EntailmentLabel::kEntailment,
                                                 EntailmentLabel::kNeutral});

    req.claim_source = ClaimSource::kGroundTruth;
    req.reference_kind = ReferenceKind::kResponse;
    req.claims = {"gt claim"};
    labels = ch.check(req);
    CHECK(labels == std::vector<EntailmentLabel>{EntailmentLabel::kContradiction});

    req.claim_source = ClaimSource::kResponse;
    req.reference_kind = ReferenceKind::kChunk;
    req.chunk_index = 0;
    req.claims = {"claim a", "claim b"};
    labels = ch.check(req);
    CHECK(labels == std::vector<EntailmentLabel>{EntailmentLabel::kEntailment,
                                                 EntailmentLabel::kNeutral});

    req.claim_source = ClaimSource::kGroundTruth;
    req.chunk_index = 1;
    req.claims = {"gt claim"};
    labels = ch.check(req);
    CHECK(labels == std::vector<EntailmentLabel>{EntailmentLabel::kEntailment});

    // Out-of-range chunk column.
    req.chunk_index = 2;
    CHECK_THROWS_WITH(ch.check(req), Catch::Matchers::ContainsSubstring("chunk column 2"));

    // Empty claim list short-circuits even for unknown queries.
    CheckRequest empty;
    empty.query_id = "unknown";
    CHECK(ch.check(empty).empty());

    CheckRequest missing = req;
    missing.query_id = "unknown";
    missing.chunk_index = 0;
    CHECK_THROWS_WITH(ch.check(missing), Catch::Matchers::ContainsSubstring("unknown"));
}

TEST_CASE("FixtureChecker reports count mismatches and bad labels lazily", "[backends]") {
    TempDir dir("fx-check-bad");
    const auto path = dir.file("check.jsonl");
    write_lines(path, {
        R"({"query_id":"short","response_vs_gt":["entailment"],"gt_vs_response":[],)"
        R"("response_vs_chunks":[],"gt_vs_chunks":[]})",
        R"({"query_id":"badlabel","response_vs_gt":["maybe"],"gt_vs_response":[],)"
        R"("response_vs_chunks":[],"gt_vs_chunks":[]})",
        R"({"query_id":"good","response_vs_gt":["entailment"],"gt_vs_response":[],)"
        R"("response_vs_chunks":[],"gt_vs_chunks":[]})",
    });
    // Construction succeeds: labels parse lazily so one bad entry poisons
    // only its own query.
    const FixtureChecker ch(path);

    CheckRequest req;
    req.claim_source = ClaimSource::kResponse;
    req.reference_kind = ReferenceKind::kGtAnswer;

    req.query_id = "good";
    req.claims = {"one"};
    CHECK(ch.check(req).size() == 1);

    req.query_id = "short";
    req.claims = {"one", "two"};
    CHECK_THROWS_WITH(ch.check(req), Catch::Matchers::ContainsSubstring("1 labels for 2 claims"));

    req.query_id = "badlabel";
    req.claims = {"one"};
    CHECK_THROWS_WITH(ch.check(req), Catch::Matchers::ContainsSubstring("unknown label 'maybe'"));
}
