#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "ontosense/corpus.hpp"
#include "ontosense/embeddings.hpp"
#include "ontosense/validation.hpp"

namespace {

using namespace osn;

EmbeddingSpace random_space(std::size_t words, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::string> names;
  std::vector<double> values;
  for (std::size_t i = 0; i < words; ++i) {
    names.push_back("w" + std::to_string(i));
    for (std::size_t d = 0; d < dim; ++d) values.push_back(g(rng));
  }
  return EmbeddingSpace(dim, names, values);
}

void BM_Cosine(benchmark::State& state) {
  const auto space = random_space(2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cosine(space, "w0", "w1"));
}
BENCHMARK(BM_Cosine)->Arg(100)->Arg(300);

void BM_Neighbors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = random_space(n + 1, 300, 2);
  std::vector<LabeledWord> pool;
  for (std::size_t i = 1; i <= n; ++i) pool.push_back({"w" + std::to_string(i), SenseCode::at(Pos::Verb, i % 7)});
  for (auto _ : state) benchmark::DoNotOptimize(neighbors(space, "w0", pool, 0.1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Neighbors)->Arg(1000)->Arg(10000);

void BM_Kappa(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<AnnotationRecord> recs;
  for (int i = 0; i < state.range(0); ++i)
    recs.push_back({std::to_string(i), SenseCode::at(Pos::Verb, rng() % 7), SenseCode::at(Pos::Verb, rng() % 7)});
  for (auto _ : state) benchmark::DoNotOptimize(cohen_kappa(recs));
}
BENCHMARK(BM_Kappa)->Arg(500)->Arg(50000);

void BM_LogLikelihood(benchmark::State& state) {
  std::uint64_t a = 25215;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_likelihood(a, 38270, 99996, 99997));
    a = a % 90000 + 1;
  }
}
BENCHMARK(BM_LogLikelihood);

void BM_ParseConllu(benchmark::State& state) {
  std::string text;
  for (int s = 0; s < state.range(0); ++s) {
    text += "# sent_id = " + std::to_string(s) + "\n";
    for (int t = 1; t <= 12; ++t)
      text += std::to_string(t) + "\tśabda\tśabda\t" + (t == 12 ? "VERB" : "NOUN") + "\t_\t_\t" +
              (t == 12 ? "0" : "12") + "\tk1\t_\t_\n";
    text += "\n";
  }
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(read_conllu(in));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseConllu)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
