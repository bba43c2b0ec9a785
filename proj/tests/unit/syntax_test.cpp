#include "fuzzydl/kb.hpp"
#include "fuzzydl/oracle.hpp"
#include "fuzzydl/syntax.hpp"

#include "random_kb.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fdl {
namespace {

const Concept A = Concept::name("A");
const Concept B = Concept::name("B");
const Role R("R");
const Role S("S");

bool is_nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Not: return c.operand().kind() == ConceptKind::Name;
    case ConceptKind::And:
    case ConceptKind::Or: return is_nnf(c.left()) && is_nnf(c.right());
    case ConceptKind::Exists:
    case ConceptKind::Forall: return is_nnf(c.operand());
    default: return true;
  }
}

TEST(Role, InverseIsInvolution) {
  EXPECT_EQ(inv(inv(R)), R);
  EXPECT_NE(inv(R), R);
  EXPECT_EQ(inv(R).to_string(), "R-");
  EXPECT_TRUE(inv(R).inverted());
}

TEST(Concept, StructurallyEqualConceptsAreIdentical) {
  Concept x = Concept::exists(R, Concept::conjunction(A, Concept::negation(B)));
  Concept y = Concept::exists(Role("R"), Concept::conjunction(Concept::name("A"), Concept::negation(Concept::name("B"))));
  EXPECT_EQ(x, y);
  EXPECT_EQ(x.id(), y.id());
  EXPECT_NE(x, Concept::exists(inv(R), Concept::conjunction(A, Concept::negation(B))));
  EXPECT_NE(Concept::at_least(1, R), Concept::at_least(2, R));
  EXPECT_EQ(Concept(), Concept::top());
}

TEST(Concept, Accessors) {
  Concept c = Concept::forall(S, Concept::disjunction(A, B));
  EXPECT_EQ(c.kind(), ConceptKind::Forall);
  EXPECT_EQ(c.role(), S);
  EXPECT_EQ(c.operand().left(), A);
  EXPECT_EQ(c.operand().right(), B);
  EXPECT_TRUE(c.is_quantifier());
  EXPECT_TRUE(Concept::at_most(3, R).is_number_restriction());
  EXPECT_EQ(Concept::at_most(3, R).cardinality(), 3u);
}

TEST(Concept, Printing) {
  EXPECT_EQ(Concept::exists(inv(R), Concept::conjunction(A, Concept::negation(B))).to_string(),
            "some R-.(A and not B)");
  EXPECT_EQ(Concept::at_least(2, R).to_string(), ">= 2 R");
  EXPECT_EQ(Concept::top().to_string(), "top");
}

TEST(Nnf, PushesNegationToNames) {
  Concept c = Concept::negation(Concept::conjunction(Concept::exists(R, A), Concept::forall(S, Concept::negation(B))));
  Concept expected = Concept::disjunction(Concept::forall(R, Concept::negation(A)), Concept::exists(S, B));
  EXPECT_EQ(nnf(c), expected);
}

TEST(Nnf, NumberRestrictions) {
  EXPECT_EQ(nnf(Concept::negation(Concept::at_most(1, R))), Concept::at_least(2, R));
  EXPECT_EQ(nnf(Concept::negation(Concept::at_least(2, R))), Concept::at_most(1, R));
  EXPECT_EQ(nnf(Concept::negation(Concept::at_least(0, R))), Concept::bottom());
  EXPECT_EQ(nnf(Concept::negation(Concept::top())), Concept::bottom());
}

// NNF must preserve degrees exactly and the complement must be 1 - degree.
TEST(Nnf, PreservesSemanticsOnRandomInterpretations) {
  testing::GeneratorConfig config;
  config.role_names = {"R", "S"};
  config.number_restrictions = true;
  testing::KbGenerator gen(config, 21);
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> quarter(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Concept c = gen.concept_of_depth(3);
    FuzzyInterpretation i(3);
    for (const char* n : {"A", "B"}) {
      i.declare_concept(n);
      for (std::size_t e = 0; e < 3; ++e) i.set_concept(n, e, Degree(quarter(rng), 4));
    }
    for (const char* r : {"R", "S"}) {
      i.declare_role(r);
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) i.set_role(r, a, b, Degree(quarter(rng), 4));
    }
    EXPECT_TRUE(is_nnf(nnf(c))) << c.to_string();
    EXPECT_TRUE(is_nnf(nnf_negation(c))) << c.to_string();
    for (std::size_t e = 0; e < 3; ++e) {
      Degree d = eval_concept(i, c, e);
      EXPECT_EQ(eval_concept(i, nnf(c), e), d) << c.to_string();
      EXPECT_EQ(eval_concept(i, nnf_negation(c), e), Degree::one() - d) << c.to_string();
    }
  }
}

TEST(SubClosure, IncludesQuantifiersOverSubRoles) {
  RBox rbox;
  rbox.inclusions = {{R, S}};
  RoleHierarchy h = hierarchy_closure(rbox);
  auto closure = sub_closure(Concept::forall(S, Concept::exists(S, A)), h);
  EXPECT_TRUE(closure.count(Concept::forall(R, Concept::exists(S, A))));
  EXPECT_TRUE(closure.count(Concept::exists(R, A)));
  EXPECT_TRUE(closure.count(A));
  EXPECT_FALSE(closure.count(Concept::forall(inv(S), Concept::exists(S, A))));
}

TEST(ConceptMetrics, DepthSizeAndNames) {
  Concept c = Concept::conjunction(Concept::exists(R, A), Concept::at_most(1, S));
  EXPECT_EQ(depth(c), 2u);
  EXPECT_EQ(size(c), 4u);
  std::set<std::string> names;
  std::set<std::string> roles;
  collect_names(c, names);
  collect_roles(c, roles);
  EXPECT_EQ(names, std::set<std::string>{"A"});
  EXPECT_EQ(roles, (std::set<std::string>{"R", "S"}));
  EXPECT_TRUE(has_number_restriction(c));
  EXPECT_FALSE(has_number_restriction(A));
}

}  // namespace
}  // namespace fdl
