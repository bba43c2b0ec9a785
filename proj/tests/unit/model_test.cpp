#include "fuzzydl/oracle.hpp"
#include "fuzzydl/parser.hpp"
#include "fuzzydl/tableau.hpp"

#include "random_kb.hpp"

#include <gtest/gtest.h>

namespace fdl {
namespace {

KnowledgeBase parse_text(std::string_view text) {
  auto parsed = parse_kb(text);
  if (!parsed.ok()) throw std::runtime_error("bad test KB");
  return *parsed.value;
}

FuzzyInterpretation model_of(const KnowledgeBase& kb) {
  Prepared p = prepare(kb);
  SolveResult r = solve(p.initial);
  if (!r.consistent) throw std::runtime_error("inconsistent test KB");
  return extract_model(r.forest, kb, p.unfolded);
}

TEST(ExtractModel, StrictLowerBoundAddsEpsilon) {
  KnowledgeBase kb = parse_text("assert a : A >= 0.6. assert a : A > 0.6. assert b : A <= 0.3.");
  FuzzyInterpretation m = model_of(kb);
  Degree at_a = m.concept_degree("A", *m.individual("a"));
  EXPECT_GT(at_a, Degree(3, 5));
  EXPECT_LT(at_a, Degree(7, 10));
  EXPECT_EQ(m.concept_degree("A", *m.individual("b")), Degree::zero());
  EXPECT_TRUE(satisfies_kb(m, kb));
}

TEST(ExtractModel, TransitiveRolesAreClosed) {
  KnowledgeBase kb = parse_text(
      "trans R. assert (a, b) : R >= 0.8. assert (b, c) : R >= 0.9. assert a : all R.A >= 0.7.");
  FuzzyInterpretation m = model_of(kb);
  EXPECT_EQ(m.role_degree(Role("R"), *m.individual("a"), *m.individual("c")), Degree(4, 5));
  EXPECT_TRUE(satisfies_kb(m, kb)) << m.to_string();
}

TEST(ExtractModel, DefinedNamesFollowTheirBodies) {
  KnowledgeBase kb = parse_text("define C equiv A and some R.B. assert a : C >= 0.5. assert a : A <= 0.75.");
  FuzzyInterpretation m = model_of(kb);
  EXPECT_TRUE(satisfies_kb(m, kb)) << m.to_string();
}

TEST(ExtractModel, BlockedSuccessorsAreRedirected) {
  KnowledgeBase kb = parse_text("trans R. assert a : some R.A >= 0.6. assert a : all R.some R.A >= 0.6.");
  Prepared p = prepare(kb);
  SolveResult r = solve(p.initial);
  ASSERT_TRUE(r.consistent);
  FuzzyInterpretation m = extract_model(r.forest, kb, p.unfolded);
  EXPECT_LT(m.domain_size(), r.forest.size());
  EXPECT_TRUE(satisfies_kb(m, kb)) << m.to_string();
}

TEST(ExtractModel, RejectsShinForests) {
  KnowledgeBase kb = parse_text("assert a : <= 1 R >= 0.5.");
  Prepared p = prepare(kb);
  SolveResult r = solve(p.initial);
  ASSERT_TRUE(r.consistent);
  EXPECT_THROW(extract_model(r.forest, kb, p.unfolded), NotApplicable);
}

TEST(ExtractModel, RandomTransitiveKbs) {
  testing::GeneratorConfig config;
  config.role_names = {"R", "S"};
  config.transitive = {"R"};
  config.definitions = true;
  testing::KbGenerator gen(config, 51);
  int models = 0;
  for (int trial = 0; trial < 150; ++trial) {
    KnowledgeBase kb = gen.kb();
    Prepared p = prepare(kb);
    SolveResult r = solve(p.initial);
    if (!r.consistent) continue;
    ++models;
    FuzzyInterpretation m = extract_model(r.forest, kb, p.unfolded);
    auto why = first_violation(m, kb);
    EXPECT_FALSE(why) << *why << "\n" << serialize_kb(kb) << m.to_string();
  }
  EXPECT_GT(models, 50);
}

}  // namespace
}  // namespace fdl
