#include "fuzzydl/parser.hpp"
#include "fuzzydl/services.hpp"
#include "fuzzydl/tableau.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace {

fdl::KnowledgeBase load(const std::string& file) {
  std::ifstream in(std::string(FUZZYDL_KB_DIR) + "/" + file);
  std::ostringstream text;
  text << in.rdbuf();
  auto parsed = fdl::parse_kb(text.str());
  if (!parsed.ok()) throw std::runtime_error("cannot parse " + file);
  return *parsed.value;
}

fdl::Assertion body_arm_query(fdl::SignedBound bound) {
  auto parsed = fdl::parse_assertion("o3 : some isPartOf-.Body and some isPartOf-.Arm");
  if (!parsed.ok()) throw std::runtime_error("cannot parse query");
  return fdl::with_bound(parsed.value->subject, bound);
}

void BM_BodyArmEntailment(benchmark::State& state) {
  const fdl::KnowledgeBase kb = load("example1.fkb");
  const fdl::Assertion query = body_arm_query({fdl::Ineq::Ge, fdl::Degree(3, 4)});
  for (auto _ : state) benchmark::DoNotOptimize(fdl::entails(kb, query));
}
BENCHMARK(BM_BodyArmEntailment);

void BM_BodyArmGlb(benchmark::State& state) {
  const fdl::KnowledgeBase kb = load("example1.fkb");
  const fdl::Assertion query = body_arm_query({});
  for (auto _ : state) benchmark::DoNotOptimize(fdl::glb(kb, query));
}
BENCHMARK(BM_BodyArmGlb);

void BM_Consistency(benchmark::State& state, const char* file) {
  const fdl::KnowledgeBase kb = load(file);
  for (auto _ : state) benchmark::DoNotOptimize(fdl::solve(kb).consistent);
}
BENCHMARK_CAPTURE(BM_Consistency, stress, "stress.fkb");
BENCHMARK_CAPTURE(BM_Consistency, blocking, "blocking.fkb");
BENCHMARK_CAPTURE(BM_Consistency, shin, "shin.fkb");
BENCHMARK_CAPTURE(BM_Consistency, gci, "domain_gci.fkb");

// Chains of k transitive edges with a universal restriction at the head.
void BM_TransitiveChain(benchmark::State& state) {
  std::ostringstream text;
  text << "trans R.\nassert i0 : all R.A >= 0.5.\n";
  for (int i = 0; i < state.range(0); ++i) text << "assert (i" << i << ", i" << i + 1 << ") : R >= 0.75.\n";
  auto parsed = fdl::parse_kb(text.str());
  if (!parsed.ok()) throw std::runtime_error("cannot parse chain");
  const fdl::KnowledgeBase kb = *parsed.value;
  for (auto _ : state) benchmark::DoNotOptimize(fdl::solve(kb).consistent);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransitiveChain)->RangeMultiplier(2)->Range(2, 32)->Complexity();

}  // namespace

BENCHMARK_MAIN();
