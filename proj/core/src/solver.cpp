#include "fuzzydl/tableau.hpp"

namespace fdl {

namespace {

// R(a,b) <= n on a non-simple role becomes (a : all R.X) >= 1-n and
// (b : X) <= 0 for a fresh X; edges alone miss role chains.
void encode_role_upper_bounds(ABox& abox, const RoleHierarchy& hierarchy, const std::set<std::string>& taken) {
  std::vector<RoleAssertion> kept;
  for (const auto& a : abox.roles) {
    if (is_positive(a.bound.ineq) || hierarchy.simple(a.role)) {
      kept.push_back(a);
      continue;
    }
    std::string name = a.role.to_string() + "<" + a.from + "," + a.to + ">";
    while (taken.count(name)) name += "'";
    Concept marker = Concept::name(name);
    abox.concepts.push_back({a.from, Concept::forall(a.role, marker), {reflect(a.bound.ineq), Degree::one() - a.bound.degree}});
    abox.concepts.push_back({a.to, marker, {Ineq::Le, Degree::zero()}});
  }
  abox.roles = std::move(kept);
}

}  // namespace

Prepared prepare(const KnowledgeBase& kb, Mode requested) {
  const Mode mode = select_mode(kb, requested);
  auto config = std::make_shared<ForestConfig>();
  config->mode = mode;
  config->hierarchy = hierarchy_closure(kb.rbox, kb.role_names());

  TBox unfolded;
  ABox abox;
  if (mode == Mode::GCI) {
    for (const Gci& g : as_gcis(kb.tbox)) config->gcis.push_back({nnf(g.lhs), nnf(g.rhs)});
    config->offset = gci_offset(kb.abox);
    auto [normalized, relative] = normalize_for_gci(kb.abox, config->offset);
    abox = std::move(normalized);
    config->relative = std::move(relative);
  } else {
    unfolded = unfold(kb.tbox, kb.all_names());
    abox = expand(kb.abox, unfolded);
  }
  encode_role_upper_bounds(abox, config->hierarchy, kb.all_names());
  for (auto& a : abox.concepts) a.expr = nnf(a.expr);

  Forest forest(config);
  for (const auto& name : abox.individuals()) forest.add_root(name);
  for (const auto& a : abox.concepts) forest.add(*forest.root_of(a.individual), {a.expr, a.bound});
  for (const auto& a : abox.roles)
    forest.add_edge(*forest.root_of(a.from), *forest.root_of(a.to), {a.role, a.bound});
  for (const auto& d : abox.inequalities) forest.set_distinct(*forest.root_of(d.first), *forest.root_of(d.second));

  return {config, std::move(unfolded), std::move(abox), std::move(forest)};
}

namespace {

struct Frame {
  Forest saved;
  ChoicePoint choice;
  std::size_t next = 0;
  std::size_t number = 0;
};

}  // namespace

SolveResult solve(Forest initial, const SolverOptions& options) {
  Trace trace;
  trace.enabled = options.trace;
  RuleContext ctx;
  ctx.node_budget = options.node_budget;
  ctx.trace = &trace;

  SolveResult result{false, initial, std::nullopt, {}, {}};
  std::vector<Frame> stack;
  Forest current = std::move(initial);
  std::size_t choices = 0;

  auto take = [&](Frame& frame) {
    const Alternative& alt = frame.choice.alternatives[frame.next];
    trace.add("choice " + std::to_string(frame.number) + " alternative " + std::to_string(frame.next + 1) + "/" +
              std::to_string(frame.choice.alternatives.size()) + ": " + describe(frame.saved, alt));
    ++frame.next;
    apply_alternative(current, alt);
  };

  for (;;) {
    Expansion e = apply_rules(current, ctx);
    if (e.kind == Expansion::Kind::Complete) {
      result.consistent = true;
      result.forest = std::move(current);
      break;
    }
    if (e.kind == Expansion::Kind::Choice) {
      ChoicePoint& cp = *e.choice;
      trace.add("choice " + std::to_string(++choices) + " by " + cp.rule + " on " + current.node_name(cp.node) +
                " for " + cp.subject);
      ++result.stats.branches;
      stack.push_back({current, std::move(cp), 0, choices});
      take(stack.back());
      continue;
    }
    trace.add("clash: " + e.clash->description);
    if (!result.first_clash) {
      result.first_clash = e.clash;
      result.forest = current;
    }
    while (!stack.empty() && stack.back().next >= stack.back().choice.alternatives.size()) stack.pop_back();
    if (stack.empty()) break;
    ++result.stats.backtracks;
    Frame& top = stack.back();
    trace.add("backtrack to choice " + std::to_string(top.number));
    current = top.saved;
    ctx.last_status = current.blocking();
    take(top);
  }
  result.stats.nodes = ctx.created;
  result.trace = std::move(trace.lines);
  return result;
}

SolveResult solve(const KnowledgeBase& kb, Mode requested, const SolverOptions& options) {
  return solve(prepare(kb, requested).initial, options);
}

}  // namespace fdl
