#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "cqgen/error.hpp"
#include "cqgen/evaluation.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cqgen;
using cqtest::FixedEmbedder;
using cqtest::TempDir;

namespace {

/// Unit vector at angle acos(c) from (1, 0): cosine against (1, 0) is exactly c.
std::vector<double> at_cosine(double c) { return {c, std::sqrt(1.0 - c * c)}; }

GroundTruthSet single_gt() {
    GroundTruthSet gt;
    gt.task_id = "t";
    gt.cqs = {"What is the reference question?"};
    return gt;
}

}  // namespace

TEST_CASE("ground truth loads from plain text, one CQ per line") {
    TempDir tmp;
    cqtest::write_file(tmp.file("demo_task.txt"),
                       "What is A?\n\nWhat is B?\n   \nWhat is C?\n");
    auto gt = load_ground_truth(tmp.file("demo_task.txt").string());
    CHECK(gt.task_id == "demo_task");
    CHECK(gt.cqs == std::vector<std::string>{"What is A?", "What is B?", "What is C?"});
}

TEST_CASE("ground truth loads from structured json") {
    TempDir tmp;
    cqtest::write_file(tmp.file("gt.json"),
                       R"({"task_id": "custom", "cqs": ["What is A?", "What is B?"]})");
    auto gt = load_ground_truth(tmp.file("gt.json").string());
    CHECK(gt.task_id == "custom");
    CHECK(gt.cqs.size() == 2);
}

TEST_CASE("ground truth rejects empty and duplicated sets") {
    TempDir tmp;
    cqtest::write_file(tmp.file("empty.txt"), "\n\n");
    CHECK_THROWS_AS(load_ground_truth(tmp.file("empty.txt").string()), Error);
    cqtest::write_file(tmp.file("dup.txt"), "What is A?\nWhat is A?\n");
    CHECK_THROWS_AS(load_ground_truth(tmp.file("dup.txt").string()), Error);
}

TEST_CASE("threshold classification around 0.6") {
    FixedEmbedder embedder(2);
    embedder.set("What is the reference question?", {1.0, 0.0});
    embedder.set("g1", at_cosine(0.7393));
    embedder.set("g2", at_cosine(0.3467));
    embedder.set("g3", at_cosine(0.8245));
    embedder.set("g4", at_cosine(0.4718));

    auto records = match_cqs({"g1", "g2", "g3", "g4"}, single_gt(), embedder, 0.6);
    REQUIRE(records.size() == 4);
    CHECK(records[0].best_cosine == doctest::Approx(0.7393).epsilon(1e-9));
    CHECK(records[0].valid);
    CHECK(records[1].best_cosine == doctest::Approx(0.3467).epsilon(1e-9));
    CHECK_FALSE(records[1].valid);
    CHECK(records[2].best_cosine == doctest::Approx(0.8245).epsilon(1e-9));
    CHECK(records[2].valid);
    CHECK(records[3].best_cosine == doctest::Approx(0.4718).epsilon(1e-9));
    CHECK_FALSE(records[3].valid);

    // 2 valid, 2 invalid → precision 0.5.
    CHECK(precision(records) == doctest::Approx(0.5));
}

TEST_CASE("a generated CQ identical to ground truth is valid with cosine 1") {
    MockEmbeddingProvider embedder(64);
    GroundTruthSet gt;
    gt.task_id = "t";
    gt.cqs = {"What is the shared question?", "What is something else?"};
    auto records = match_cqs({"What is the shared question?"}, gt, embedder, 0.6);
    REQUIRE(records.size() == 1);
    CHECK(records[0].best_cosine == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(records[0].valid);
    CHECK(records[0].best_cq_gt == "What is the shared question?");
}

TEST_CASE("best-match ties resolve to the earlier ground-truth CQ") {
    FixedEmbedder embedder(2);
    embedder.set("First twin?", {1.0, 0.0});
    embedder.set("Second twin?", {1.0, 0.0});
    embedder.set("generated", {1.0, 0.0});
    GroundTruthSet gt;
    gt.task_id = "t";
    gt.cqs = {"First twin?", "Second twin?"};
    auto records = match_cqs({"generated"}, gt, embedder, 0.6);
    REQUIRE(records.size() == 1);
    CHECK(records[0].best_cq_gt == "First twin?");
}

TEST_CASE("match_cqs validates inputs") {
    MockEmbeddingProvider embedder(16);
    try {
        match_cqs({}, single_gt(), embedder, 0.6);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::empty_generation);
    }
    for (double theta : {0.0, 1.0, -0.3, 1.5}) {
        try {
            match_cqs({"What is X?"}, single_gt(), embedder, theta);
            FAIL("expected error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::invalid_threshold);
        }
    }
}

TEST_CASE("precision arithmetic") {
    std::vector<MatchRecord> records;
    for (int i = 0; i < 5; ++i) records.push_back({"g", "t", 0.9, true});
    for (int i = 0; i < 5; ++i) records.push_back({"g", "t", 0.1, false});
    CHECK(precision(records) == doctest::Approx(0.5));

    std::vector<MatchRecord> none;
    for (int i = 0; i < 10; ++i) none.push_back({"g", "t", 0.1, false});
    CHECK(precision(none) == doctest::Approx(0.0));

    try {
        precision({});
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::empty_records);
    }
}

TEST_CASE("evaluate_run fills counts and threshold") {
    FixedEmbedder embedder(2);
    embedder.set("What is the reference question?", {1.0, 0.0});
    embedder.set("good", at_cosine(0.8));
    embedder.set("bad", at_cosine(0.2));
    auto report = evaluate_run("run-1", {"good", "bad"}, single_gt(), embedder, 0.6);
    CHECK(report.run_id == "run-1");
    CHECK(report.tp == 1);
    CHECK(report.fp == 1);
    CHECK(report.precision == doctest::Approx(0.5));
    CHECK(report.theta == doctest::Approx(0.6));
    CHECK(report.records.size() == 2);
}

TEST_CASE("extreme thresholds mark everything or nothing") {
    MockEmbeddingProvider embedder(64);
    GroundTruthSet gt;
    gt.task_id = "t";
    gt.cqs = {"What characterizes a replication study?"};
    std::vector<std::string> gen{"Which datasets support the archive?",
                                 "Who reviews the publication venue?"};
    auto low = evaluate_run("r", gen, gt, embedder, 1e-9);
    CHECK(low.tp == 2);
    CHECK(low.precision == doctest::Approx(1.0));
    auto high = evaluate_run("r", gen, gt, embedder, 0.999999);
    CHECK(high.tp == 0);
    CHECK(high.precision == doctest::Approx(0.0));
}

TEST_CASE("rethresholding reuses stored cosines") {
    FixedEmbedder embedder(2);
    embedder.set("What is the reference question?", {1.0, 0.0});
    embedder.set("a", at_cosine(0.75));
    embedder.set("b", at_cosine(0.55));
    embedder.set("c", at_cosine(0.35));
    auto base = evaluate_run("r", {"a", "b", "c"}, single_gt(), embedder, 0.6);
    CHECK(base.tp == 1);

    auto relaxed = rethreshold(base, 0.5);
    CHECK(relaxed.theta == doctest::Approx(0.5));
    CHECK(relaxed.tp == 2);
    CHECK(relaxed.precision == doctest::Approx(2.0 / 3.0));

    auto strict = rethreshold(base, 0.8);
    CHECK(strict.tp == 0);

    // Lowering theta never decreases precision.
    double prev = -1.0;
    for (double theta : {0.9, 0.7, 0.5, 0.3, 0.1}) {
        double p = rethreshold(base, theta).precision;
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("memoized evaluation equals direct evaluation") {
    auto inner = std::make_shared<MockEmbeddingProvider>(64);
    MemoizingEmbedder memo(inner);
    GroundTruthSet gt;
    gt.task_id = "t";
    gt.cqs = {"What is measured by the baseline?", "How are datasets archived?"};
    std::vector<std::string> gen{"What does the baseline measure?",
                                 "How are datasets archived?", "Who curates samples?"};
    auto direct = evaluate_run("r", gen, gt, *inner, 0.6);
    auto cached = evaluate_run("r", gen, gt, memo, 0.6);
    auto cached_again = evaluate_run("r", gen, gt, memo, 0.6);
    REQUIRE(direct.records.size() == cached.records.size());
    for (std::size_t i = 0; i < direct.records.size(); ++i) {
        CHECK(direct.records[i].best_cosine == cached.records[i].best_cosine);
        CHECK(direct.records[i].valid == cached.records[i].valid);
        CHECK(cached.records[i].best_cosine == cached_again.records[i].best_cosine);
    }
    CHECK(direct.precision == cached.precision);
}

TEST_CASE("consistency of constant precisions is zero") {
    MockEmbeddingProvider embedder(64);
    std::vector<EvalReport> reports(3);
    for (auto& r : reports) r.precision = 0.5;
    std::vector<std::string> texts{"What is A?\nWhat is B?", "What is C?\nWhat is D?",
                                   "What is E?\nWhat is F?"};
    auto c = consistency(reports, texts, embedder, "setting");
    CHECK(c.std_precision == doctest::Approx(0.0));
    CHECK(c.n_runs == 3);
    CHECK(c.setting_key == "setting");
}

TEST_CASE("two identical run texts give std_cosine zero") {
    MockEmbeddingProvider embedder(64);
    std::vector<EvalReport> reports(2);
    reports[0].precision = 0.4;
    reports[1].precision = 0.6;
    std::vector<std::string> texts{"What is A?\nWhat is B?", "What is A?\nWhat is B?"};
    auto c = consistency(reports, texts, embedder);
    // A single pair has no spread by definition.
    CHECK(c.std_cosine == doctest::Approx(0.0));
    // sample std of {0.4, 0.6} = sqrt(2 * 0.01 / 1)
    CHECK(c.std_precision == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("consistency matches hand-derived sample std") {
    MockEmbeddingProvider embedder(64);
    std::vector<EvalReport> reports(3);
    reports[0].precision = 0.2;
    reports[1].precision = 0.4;
    reports[2].precision = 0.6;
    std::vector<std::string> texts{"What is A?", "What is B?", "What is C?"};
    auto c = consistency(reports, texts, embedder);
    CHECK(c.std_precision == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(c.std_cosine >= 0.0);
}

TEST_CASE("consistency needs at least two aligned runs") {
    MockEmbeddingProvider embedder(64);
    std::vector<EvalReport> one(1);
    try {
        consistency(one, {"What is A?"}, embedder);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::insufficient_runs);
    }
    std::vector<EvalReport> two(2);
    try {
        consistency(two, {"What is A?"}, embedder);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
    }
}
