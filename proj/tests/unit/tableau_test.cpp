#include "fuzzydl/parser.hpp"
#include "fuzzydl/tableau.hpp"

#include "random_kb.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace fdl {
namespace {

const Concept A = Concept::name("A");
const Concept B = Concept::name("B");
const Role R("R");
const Role P("P");

KnowledgeBase parse_text(std::string_view text) {
  auto parsed = parse_kb(text);
  if (!parsed.ok()) throw std::runtime_error("bad test KB");
  return *parsed.value;
}

KnowledgeBase load(const std::string& file) {
  std::ifstream in(std::string(FUZZYDL_KB_DIR) + "/" + file);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_text(text.str());
}

std::shared_ptr<const ForestConfig> config_for(Mode mode, RBox rbox = {}) {
  auto cfg = std::make_shared<ForestConfig>();
  cfg->mode = mode;
  cfg->hierarchy = hierarchy_closure(rbox, {"R", "P"});
  return cfg;
}

ConceptTriple triple(Concept c, Ineq k, Degree d) { return {c, {k, d}}; }

TEST(Forest, RootsChildrenAndEdges) {
  Forest f(config_for(Mode::SI));
  NodeId a = f.add_root("a");
  NodeId x = f.add_child(a, {R, {Ineq::Ge, Degree(1, 2)}});
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.root_of("a"), a);
  EXPECT_FALSE(f.root_of("b"));
  EXPECT_EQ(f.node(x).parent, a);
  EXPECT_EQ(f.node_name(a), "x_a");
  EXPECT_EQ(f.node_name(x), "x1");
  ASSERT_NE(f.edge(a, x), nullptr);
  EXPECT_EQ(f.edge(x, a), nullptr);
  EXPECT_TRUE(f.add(x, triple(A, Ineq::Ge, Degree(1, 2))));
  EXPECT_FALSE(f.add(x, triple(A, Ineq::Ge, Degree(1, 2))));
  EXPECT_TRUE(f.has(x, triple(A, Ineq::Ge, Degree(1, 2))));
}

TEST(Forest, NeighboursReadEdgesInBothDirections) {
  Forest f(config_for(Mode::SI));
  NodeId a = f.add_root("a");
  NodeId x = f.add_child(a, {R, {Ineq::Ge, Degree(3, 4)}});
  auto forward = f.neighbours(a, R);
  ASSERT_EQ(forward.size(), 1u);
  EXPECT_EQ(forward[0].node, x);
  auto backward = f.neighbours(x, inv(R));
  ASSERT_EQ(backward.size(), 1u);
  EXPECT_EQ(backward[0].node, a);
  EXPECT_TRUE(f.neighbours(x, R).empty());
  EXPECT_EQ(f.conjugated_neighbours(a, R, {Ineq::Lt, Degree(3, 4)}), std::vector<NodeId>{x});
  EXPECT_TRUE(f.conjugated_neighbours(a, R, {Ineq::Le, Degree(3, 4)}).empty());
}

TEST(Forest, HierarchyAwareNeighbours) {
  RBox rbox;
  rbox.inclusions = {{P, R}};
  Forest f(config_for(Mode::SHIN, rbox));
  NodeId a = f.add_root("a");
  NodeId x = f.add_child(a, {P, {Ineq::Ge, Degree(1, 2)}});
  EXPECT_EQ(f.neighbours(a, R).size(), 1u);
  EXPECT_TRUE(f.neighbours(a, inv(R)).empty());
  EXPECT_EQ(f.neighbours(x, inv(R)).size(), 1u);
}

TEST(Blocking, EqualLabelsBlockInSubsetMode) {
  Forest f(config_for(Mode::SI));
  NodeId a = f.add_root("a");
  f.add(a, triple(A, Ineq::Ge, Degree(1, 2)));
  NodeId x = f.add_child(a, {R, {Ineq::Ge, Degree(1, 2)}});
  NodeId y = f.add_child(x, {R, {Ineq::Ge, Degree(1, 2)}});
  auto status = f.blocking();
  EXPECT_FALSE(status[index(a)].blocked());
  EXPECT_FALSE(status[index(x)].blocked());
  f.add(x, triple(A, Ineq::Ge, Degree(1, 2)));
  status = f.blocking();
  EXPECT_EQ(status[index(x)].kind, BlockKind::Direct);
  EXPECT_EQ(status[index(x)].blocker, a);
  EXPECT_EQ(status[index(y)].kind, BlockKind::Indirect);
}

TEST(Blocking, PairwiseNeedsMatchingPredecessors) {
  Forest f(config_for(Mode::SHIN));
  NodeId a = f.add_root("a");
  RoleTriple edge{R, {Ineq::Ge, Degree(1, 2)}};
  NodeId x1 = f.add_child(a, edge);
  NodeId x2 = f.add_child(x1, edge);
  NodeId x3 = f.add_child(x2, edge);
  for (NodeId n : {x1, x2, x3}) f.add(n, triple(A, Ineq::Ge, Degree(1, 2)));
  auto status = f.blocking();
  // x2 matches x1, but x1's predecessor is a root with another label.
  EXPECT_FALSE(status[index(x2)].blocked());
  EXPECT_EQ(status[index(x3)].kind, BlockKind::Direct);
  EXPECT_EQ(status[index(x3)].blocker, x2);
}

TEST(Clash, DetectsEveryKind) {
  auto fresh = [] { return Forest(config_for(Mode::SI)); };
  {
    Forest f = fresh();
    NodeId a = f.add_root("a");
    f.add(a, triple(A, Ineq::Ge, Degree(3, 4)));
    EXPECT_FALSE(find_clash(f));
    f.add(a, triple(A, Ineq::Lt, Degree(3, 4)));
    EXPECT_TRUE(find_clash(f));
  }
  {
    Forest f = fresh();
    NodeId a = f.add_root("a");
    f.add(a, triple(Concept::bottom(), Ineq::Gt, Degree(0)));
    EXPECT_TRUE(find_clash(f));
  }
  {
    Forest f = fresh();
    NodeId a = f.add_root("a");
    f.add(a, triple(Concept::top(), Ineq::Lt, Degree(1)));
    EXPECT_TRUE(find_clash(f));
  }
  {
    Forest f = fresh();
    NodeId a = f.add_root("a");
    f.add(a, triple(A, Ineq::Gt, Degree(1)));
    EXPECT_TRUE(find_clash(f));
  }
  {
    Forest f = fresh();
    NodeId a = f.add_root("a");
    NodeId b = f.add_root("b");
    f.add_edge(a, b, {R, {Ineq::Ge, Degree(1, 2)}});
    f.add_edge(b, a, {inv(R), {Ineq::Lt, Degree(1, 2)}});
    EXPECT_TRUE(find_clash(f));
  }
  {
    Forest f = fresh();
    NodeId a = f.add_root("a");
    f.set_distinct(a, a);
    EXPECT_TRUE(find_clash(f));
  }
}

TEST(Clash, NumberRestrictionCliques) {
  Forest f(config_for(Mode::SHIN));
  NodeId a = f.add_root("a");
  NodeId b = f.add_root("b");
  NodeId c = f.add_root("c");
  for (NodeId n : {b, c}) f.add_edge(a, n, {R, {Ineq::Ge, Degree(3, 5)}});
  f.add(a, triple(Concept::at_most(1, R), Ineq::Ge, Degree(3, 5)));
  EXPECT_FALSE(find_clash(f));
  f.set_distinct(b, c);
  EXPECT_TRUE(find_clash(f));
  EXPECT_TRUE(has_distinct_subset(f, {b, c}, 2));
  EXPECT_FALSE(has_distinct_subset(f, {b, c}, 3));
}

TEST(Solve, TrivialCases) {
  EXPECT_TRUE(solve(parse_text("assert a : top >= 1.")).consistent);
  EXPECT_FALSE(solve(parse_text("assert a : A >= 0.7. assert a : A < 0.7.")).consistent);
  EXPECT_FALSE(solve(parse_text("assert a : A >= 0.5. distinct a a.")).consistent);
  EXPECT_TRUE(solve(KnowledgeBase{}).consistent);
  EXPECT_TRUE(solve(parse_text("assert a : A and not A > 0.")).consistent);
  EXPECT_FALSE(solve(parse_text("assert a : A and not A > 0.5.")).consistent);
}

TEST(Solve, DisjunctionBacktracks) {
  SolveResult r = solve(parse_text("assert a : A or B >= 0.6. assert a : A < 0.5."), Mode::Auto, {1000, true});
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.stats.backtracks, 1u);
  EXPECT_TRUE(r.forest.has(*r.forest.root_of("a"), triple(B, Ineq::Ge, Degree(3, 5))));
}

TEST(Solve, BodyArmRefutation) {
  KnowledgeBase kb = load("example1.fkb");
  EXPECT_TRUE(solve(kb).consistent);
  kb.abox.concepts.push_back(
      {"o3",
       Concept::conjunction(Concept::exists(inv(Role("isPartOf")), Concept::name("Body")),
                            Concept::exists(inv(Role("isPartOf")), Concept::name("Arm"))),
       {Ineq::Lt, Degree(3, 4)}});
  SolveResult r = solve(kb, Mode::Auto, {1000, true});
  EXPECT_FALSE(r.consistent);
  ASSERT_TRUE(r.first_clash);
  EXPECT_EQ(r.forest.node_name(r.first_clash->node), "x_o2");
  EXPECT_EQ(r.stats.backtracks, 1u);
}

TEST(Solve, BlockIsBrokenByPropagation) {
  SolveResult r = solve(load("blocking.fkb"), Mode::Auto, {1000, true});
  EXPECT_FALSE(r.consistent);
  auto at = [&](const std::string& needle) {
    for (std::size_t i = 0; i < r.trace.size(); ++i)
      if (r.trace[i] == needle) return static_cast<int>(i);
    return -1;
  };
  int block = at("block x2 by x_b");
  int unblock = at("unblock x2");
  ASSERT_GE(block, 0);
  EXPECT_GT(unblock, block);
}

TEST(Solve, GciModeExploresEveryRelativeDegree) {
  SolveResult r = solve(load("domain_gci.fkb"), Mode::GCI, {1000, true});
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.stats.branches, 5u);
}

TEST(Solve, MergesUnderAtMost) {
  KnowledgeBase kb = parse_text(
      "assert a : <= 1 R >= 1. assert (a, b) : R >= 0.5. assert (a, c) : R >= 0.5. assert b : A >= 0.5.");
  SolveResult r = solve(kb);
  EXPECT_TRUE(r.consistent);
  kb.abox.inequalities.push_back({"b", "c"});
  EXPECT_FALSE(solve(kb).consistent);
}

TEST(Solve, AtLeastGeneratesDistinctSuccessors) {
  KnowledgeBase kb = parse_text("assert a : >= 2 R >= 0.5. assert a : all R.A >= 0.5.");
  SolveResult r = solve(kb);
  ASSERT_TRUE(r.consistent);
  EXPECT_EQ(r.forest.size(), 3u);
  EXPECT_FALSE(solve(parse_text("assert a : >= 2 R >= 0.6. assert a : <= 1 R >= 0.6.")).consistent);
}

TEST(Solve, NodeBudgetIsEnforced) {
  EXPECT_THROW(solve(load("stress.fkb"), Mode::Auto, {1, false}), ResourceLimit);
}

TEST(Solve, DeterministicTraceAndClash) {
  KnowledgeBase kb = load("example1.fkb");
  kb.abox.concepts.push_back({"o1", Concept::name("Body"), {Ineq::Lt, Degree(1, 2)}});
  SolveResult first = solve(kb, Mode::Auto, {1000, true});
  SolveResult second = solve(kb, Mode::Auto, {1000, true});
  EXPECT_EQ(first.trace, second.trace);
  EXPECT_EQ(first.consistent, second.consistent);
  EXPECT_EQ(first.forest.dump(), second.forest.dump());
}

TEST(Solve, LabelDegreesStayInTheSupport) {
  testing::GeneratorConfig config;
  config.role_names = {"R", "S"};
  config.transitive = {"S"};
  testing::KbGenerator gen(config, 41);
  for (int trial = 0; trial < 100; ++trial) {
    KnowledgeBase kb = gen.kb();
    std::set<Degree> support = degree_support(kb.abox);
    SolveResult r = solve(kb);
    for (const Node& n : r.forest.nodes())
      for (const ConceptTriple& t : n.label) EXPECT_TRUE(support.count(t.bound.degree)) << t.to_string();
    for (const auto& [_, label] : r.forest.edges())
      for (const RoleTriple& t : label) EXPECT_TRUE(support.count(t.bound.degree)) << t.to_string();
  }
}

TEST(Prepare, SelectsModeAndBuildsRoots) {
  Prepared p = prepare(load("example1.fkb"));
  EXPECT_EQ(p.config->mode, Mode::SI);
  EXPECT_EQ(p.initial.size(), 3u);
  EXPECT_EQ(p.unfolded.definitions.size(), 2u);
  EXPECT_EQ(prepare(load("shin.fkb")).config->mode, Mode::SHIN);
  Prepared g = prepare(load("domain_gci.fkb"));
  EXPECT_EQ(g.config->mode, Mode::GCI);
  EXPECT_EQ(g.config->offset, Degree(1, 40));
  EXPECT_EQ(g.config->gcis.size(), 1u);
  EXPECT_THROW(prepare(load("shin.fkb"), Mode::SI), KbError);
}

TEST(Dump, Format) {
  SolveResult r = solve(parse_text("assert (a, b) : R >= 0.5. assert a : A > 1/3."));
  std::string dump = r.forest.dump();
  EXPECT_NE(dump.find("node 0 root {\xE2\x9F\xA8" "A,>,1/3\xE2\x9F\xA9}"), std::string::npos) << dump;
  EXPECT_NE(dump.find("edge 0 -> 1 {\xE2\x9F\xA8R,>=,1/2\xE2\x9F\xA9}"), std::string::npos) << dump;
}

}  // namespace
}  // namespace fdl
