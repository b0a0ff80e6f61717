// Microbenchmarks for the hot paths: chunking, embedding, retrieval,
// response parsing, prompt rendering and the statistics kernel.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cqgen/corpus.hpp"
#include "cqgen/cq_parser.hpp"
#include "cqgen/embedding.hpp"
#include "cqgen/index.hpp"
#include "cqgen/prompt.hpp"
#include "cqgen/stats.hpp"

namespace {

std::string synthetic_text(std::size_t n, std::uint64_t seed) {
    static const char alphabet[] = "abcdefghij klmnopqrst. uvwxyz,\n";
    std::mt19937_64 rng(seed);
    std::string s;
    s.reserve(n);
    while (s.size() < n) s.push_back(alphabet[rng() % (sizeof(alphabet) - 1)]);
    return s;
}

void BM_ChunkDocument(benchmark::State& state) {
    const auto mode = state.range(1) == 0 ? cqgen::BoundaryMode::hard_cut
                                          : cqgen::BoundaryMode::sentence_snap;
    const auto doc =
        cqgen::ingest_document(synthetic_text(static_cast<std::size_t>(state.range(0)), 11),
                               cqgen::SourceFormat::plain_text, "bench", 1);
    const cqgen::ChunkingPolicy policy{1000, 200, mode};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::chunk_document(doc, policy));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ChunkDocument)
    ->ArgsProduct({{1 << 14, 1 << 17, 1 << 20}, {0, 1}})
    ->ArgNames({"chars", "snap"});

void BM_MockEmbedBatch(benchmark::State& state) {
    cqgen::MockEmbeddingProvider provider(64);
    std::vector<std::string> texts;
    for (int i = 0; i < state.range(0); ++i) texts.push_back(synthetic_text(800, 100 + i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::embed_texts(provider, texts));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_MockEmbedBatch)->Arg(16)->Arg(128)->ArgNames({"texts"});

void BM_RetrieveTopK(benchmark::State& state) {
    const std::size_t dim = 64;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> component(-1.0, 1.0);
    auto random_vector = [&] {
        cqgen::EmbeddingVector v;
        v.values.resize(dim);
        for (auto& x : v.values) x = component(rng);
        return v;
    };
    cqgen::VectorIndex index;
    index.provider_id = "bench";
    index.dim = dim;
    for (int i = 0; i < state.range(0); ++i) {
        index.entries.push_back(
            {{"doc" + std::to_string(i % 10), static_cast<std::size_t>(i / 10), 0, 0, ""},
             random_vector()});
    }
    const auto query = random_vector();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::retrieve_top_k(index, query, 10));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_RetrieveTopK)->Arg(1000)->Arg(10000)->Arg(100000)->ArgNames({"vectors"});

void BM_ParseCqs(benchmark::State& state) {
    std::string raw = "Here are the questions you asked for:\n";
    for (int i = 1; i <= state.range(0); ++i) {
        raw += std::to_string(i) + ". What is the relation between entity " + std::to_string(i) +
               " and its neighbours?\n";
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::parse_cqs(raw, static_cast<int>(state.range(0))));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ParseCqs)->Arg(15)->Arg(77)->ArgNames({"questions"});

void BM_RenderPrompt(benchmark::State& state) {
    cqgen::PromptVariables vars;
    vars.domain_name = "Empirical Software Research";
    vars.ontology_purpose = "organize methods, datasets and publication practices";
    vars.cq_definition = cqgen::default_cq_definition();
    vars.n_cqs = 25;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::render_prompt(vars));
    }
}
BENCHMARK(BM_RenderPrompt);

void BM_OneWayAnova(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> value(0.0, 1.0);
    cqgen::stats::FactorGroups groups;
    groups.factor_name = "temperature";
    for (int g = 0; g < 5; ++g) {
        auto& column = groups.groups["level" + std::to_string(g)];
        for (int i = 0; i < state.range(0); ++i) column.push_back(value(rng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::stats::one_way_anova(groups));
    }
}
BENCHMARK(BM_OneWayAnova)->Arg(10)->Arg(1000)->ArgNames({"per_group"});

void BM_FTailPValue(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(cqgen::stats::f_distribution_upper_tail(2.9, 7, 14));
    }
}
BENCHMARK(BM_FTailPValue);

}  // namespace

BENCHMARK_MAIN();
