#include "fuzzydl/tableau.hpp"

#include <algorithm>

namespace fdl {

namespace {

SignedBound complement(const SignedBound& b) { return {reflect(b.ineq), neg_lukasiewicz(b.degree)}; }

class Engine {
 public:
  Engine(Forest& f, RuleContext& ctx, std::vector<BlockStatus> status)
      : f_(f), ctx_(ctx), status_(std::move(status)) {}

  bool negation();
  bool decomposition();
  bool propagation();
  std::optional<ChoicePoint> merging();
  bool generation();
  std::optional<ChoicePoint> branching();

 private:
  const BlockStatus& st(NodeId x) const { return status_[index(x)]; }
  bool live(NodeId x) const { return !st(x).dead; }
  bool indirectly_blocked(NodeId x) const { return st(x).kind == BlockKind::Indirect; }
  bool blocked(NodeId x) const { return st(x).blocked(); }

  void log(const std::string& line) {
    if (ctx_.trace) ctx_.trace->add(line);
  }

  bool add(const char* rule, NodeId x, NodeId target, const ConceptTriple& t) {
    if (!f_.add(target, t)) return false;
    if (target == x)
      log(std::string(rule) + " on " + f_.node_name(x) + " adds " + t.to_string());
    else
      log(std::string(rule) + " on " + f_.node_name(x) + " adds " + t.to_string() + " to " + f_.node_name(target));
    return true;
  }

  NodeId create(const char* rule, NodeId x, const RoleTriple& edge) {
    if (++ctx_.created > ctx_.node_budget)
      throw ResourceLimit("node budget of " + std::to_string(ctx_.node_budget) + " exceeded");
    NodeId y = f_.add_child(x, edge);
    log(std::string(rule) + " on " + f_.node_name(x) + " creates " + f_.node_name(y) + " via " + edge.to_string());
    return y;
  }

  // Snapshot of a node label so rules may extend it while iterating.
  std::vector<ConceptTriple> label(NodeId x) const {
    const auto& l = f_.node(x).label;
    return {l.begin(), l.end()};
  }

  template <typename Pred>
  std::vector<NodeId> nodes_where(Pred pred) const {
    std::vector<NodeId> out;
    for (const Node& n : f_.nodes())
      if (live(n.id) && pred(n.id)) out.push_back(n.id);
    return out;
  }

  bool at_least(const char* rule, NodeId x, std::uint32_t p, const Role& r, const SignedBound& b);
  void merge_candidates(NodeId x, const std::vector<NodeId>& members, std::vector<Alternative>& out) const;

  Forest& f_;
  RuleContext& ctx_;
  std::vector<BlockStatus> status_;
};

bool Engine::negation() {
  for (NodeId x : nodes_where([](NodeId) { return true; })) {
    bool changed = false;
    for (const auto& t : label(x))
      if (t.expr.kind() == ConceptKind::Not)
        changed |= add("¬", x, x, {t.expr.operand(), complement(t.bound)});
    if (changed) return true;
  }
  return false;
}

bool Engine::decomposition() {
  for (NodeId x : nodes_where([&](NodeId n) { return !indirectly_blocked(n); })) {
    bool changed = false;
    for (const auto& t : label(x)) {
      const ConceptKind k = t.expr.kind();
      const bool pos = is_positive(t.bound.ineq);
      if ((k == ConceptKind::And && pos) || (k == ConceptKind::Or && !pos)) {
        const char* rule = pos ? "⊓▷" : "⊔◁";
        changed |= add(rule, x, x, {t.expr.left(), t.bound});
        changed |= add(rule, x, x, {t.expr.right(), t.bound});
      }
    }
    if (changed) return true;
  }
  return false;
}

bool Engine::propagation() {
  const RoleHierarchy& h = f_.config().hierarchy;
  for (NodeId x : nodes_where([&](NodeId n) { return !indirectly_blocked(n); })) {
    bool changed = false;
    for (const auto& t : label(x)) {
      const ConceptKind k = t.expr.kind();
      const bool pos = is_positive(t.bound.ineq);
      const bool universal = k == ConceptKind::Forall && pos;
      const bool existential = k == ConceptKind::Exists && !pos;
      if (!universal && !existential) continue;
      const Role& r = t.expr.role();
      const Concept filler = t.expr.operand();
      const SignedBound probe = universal ? complement(t.bound) : t.bound;
      for (NodeId y : f_.conjugated_neighbours(x, r, probe))
        changed |= add(universal ? "∀▷" : "∃◁", x, y, {filler, t.bound});
      for (const Role& p : h.transitive_sub_roles(r)) {
        Concept carried = universal ? Concept::forall(p, filler) : Concept::exists(p, filler);
        const char* rule = p == r ? (universal ? "∀+" : "∃+") : (universal ? "∀'+" : "∃'+");
        for (NodeId y : f_.conjugated_neighbours(x, p, probe)) changed |= add(rule, x, y, {carried, t.bound});
      }
    }
    if (changed) return true;
  }
  return false;
}

void Engine::merge_candidates(NodeId x, const std::vector<NodeId>& members, std::vector<Alternative>& out) const {
  const auto parent = f_.node(x).parent;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      NodeId z = members[i];
      NodeId y = members[j];
      if (f_.distinct(y, z)) continue;
      if (f_.node(y).root && f_.node(z).root) {
        out.push_back(MergeNodes{x, y, z, true});
        continue;
      }
      if (indirectly_blocked(x) || f_.node(y).root) continue;
      if (parent == y || f_.is_ancestor(y, z)) continue;
      out.push_back(MergeNodes{x, y, z, false});
    }
  }
}

std::optional<ChoicePoint> Engine::merging() {
  if (f_.mode() == Mode::SI) return std::nullopt;
  for (NodeId x : nodes_where([](NodeId) { return true; })) {
    for (const auto& t : label(x)) {
      const ConceptKind k = t.expr.kind();
      const std::uint32_t p = t.expr.cardinality();
      std::vector<NodeId> members;
      std::size_t limit = 0;
      const char* rule = nullptr;
      if (k == ConceptKind::AtMost && is_positive(t.bound.ineq)) {
        members = f_.conjugated_neighbours(x, t.expr.role(), complement(t.bound));
        limit = p;
        rule = "≤▷";
      } else if (k == ConceptKind::AtLeast && is_negative(t.bound.ineq) && p > 0) {
        members = f_.conjugated_neighbours(x, t.expr.role(), t.bound);
        limit = p - 1;
        rule = "≥◁";
      } else {
        continue;
      }
      if (members.size() <= limit) continue;
      std::vector<Alternative> alternatives;
      merge_candidates(x, members, alternatives);
      if (alternatives.empty()) continue;
      return ChoicePoint{rule, x, t.to_string(), std::move(alternatives)};
    }
  }
  return std::nullopt;
}

bool Engine::at_least(const char* rule, NodeId x, std::uint32_t p, const Role& r, const SignedBound& b) {
  if (p == 0) return false;
  if (has_distinct_subset(f_, f_.neighbours_with(x, r, b), p)) return false;
  std::vector<NodeId> fresh;
  for (std::uint32_t i = 0; i < p; ++i) fresh.push_back(create(rule, x, {r, b}));
  for (std::size_t i = 0; i < fresh.size(); ++i)
    for (std::size_t j = i + 1; j < fresh.size(); ++j) f_.set_distinct(fresh[i], fresh[j]);
  return true;
}

bool Engine::generation() {
  for (NodeId x : nodes_where([&](NodeId n) { return !blocked(n); })) {
    for (const auto& t : label(x)) {
      const ConceptKind k = t.expr.kind();
      const bool pos = is_positive(t.bound.ineq);
      if (trivially_true(t.bound)) continue;
      if ((k == ConceptKind::Exists && pos) || (k == ConceptKind::Forall && !pos)) {
        const Role& r = t.expr.role();
        const SignedBound edge = pos ? t.bound : complement(t.bound);
        const ConceptTriple filler{t.expr.operand(), t.bound};
        auto existing = f_.neighbours_implying(x, r, edge);
        if (std::any_of(existing.begin(), existing.end(), [&](NodeId y) { return f_.implied(y, filler); })) continue;
        const char* rule = pos ? "∃▷" : "∀◁";
        NodeId y = create(rule, x, {r, edge});
        add(rule, x, y, filler);
        return true;
      }
      if (k == ConceptKind::AtLeast && pos) {
        if (at_least("≥▷", x, t.expr.cardinality(), t.expr.role(), t.bound)) return true;
      } else if (k == ConceptKind::AtMost && !pos) {
        if (at_least("≤◁", x, t.expr.cardinality() + 1, t.expr.role(), complement(t.bound))) return true;
      }
    }
  }
  return false;
}

std::optional<ChoicePoint> Engine::branching() {
  const ForestConfig& cfg = f_.config();
  for (NodeId x : nodes_where([&](NodeId n) { return !indirectly_blocked(n); })) {
    for (const auto& t : label(x)) {
      const ConceptKind k = t.expr.kind();
      const bool pos = is_positive(t.bound.ineq);
      if ((k == ConceptKind::Or && pos) || (k == ConceptKind::And && !pos)) {
        ConceptTriple left{t.expr.left(), t.bound};
        ConceptTriple right{t.expr.right(), t.bound};
        if (f_.implied(x, left) || f_.implied(x, right)) continue;
        return ChoicePoint{pos ? "⊔▷" : "⊓◁", x, t.to_string(), {AddTriple{x, left}, AddTriple{x, right}}};
      }
    }
    if (cfg.mode != Mode::GCI || blocked(x)) continue;
    for (const Degree& n : cfg.relative.xs) {
      for (const Gci& g : cfg.gcis) {
        ConceptTriple low{g.lhs, {Ineq::Le, n - cfg.offset}};
        ConceptTriple high{g.rhs, {Ineq::Ge, n}};
        if (f_.implied(x, low) || f_.implied(x, high)) continue;
        return ChoicePoint{"GCI", x, g.lhs.to_string() + " ⊑ " + g.rhs.to_string() + " at " + n.to_string(),
                           {AddTriple{x, low}, AddTriple{x, high}}};
      }
    }
  }
  return std::nullopt;
}

void trace_blocking(const Forest& f, RuleContext& ctx, const std::vector<BlockStatus>& now) {
  if (ctx.trace && ctx.trace->enabled) {
    for (std::size_t i = 0; i < now.size(); ++i) {
      BlockStatus before = i < ctx.last_status.size() ? ctx.last_status[i] : BlockStatus{};
      const bool was = before.kind == BlockKind::Direct;
      const bool is = now[i].kind == BlockKind::Direct;
      auto id = static_cast<NodeId>(i);
      if (is && (!was || before.blocker != now[i].blocker))
        ctx.trace->add("block " + f.node_name(id) + " by " + f.node_name(*now[i].blocker));
      else if (was && !is)
        ctx.trace->add("unblock " + f.node_name(id));
    }
  }
  ctx.last_status = now;
}

}  // namespace

std::string describe(const Forest& f, const Alternative& a) {
  if (const auto* add = std::get_if<AddTriple>(&a)) return "add " + add->triple.to_string() + " to " + f.node_name(add->node);
  const auto& m = std::get<MergeNodes>(a);
  return "merge " + f.node_name(m.from) + " into " + f.node_name(m.into);
}

void apply_alternative(Forest& f, const Alternative& a) {
  if (const auto* add = std::get_if<AddTriple>(&a)) {
    f.add(add->node, add->triple);
    return;
  }
  const auto& m = std::get<MergeNodes>(a);
  if (m.roots)
    f.merge_roots(m.from, m.into);
  else
    f.merge_into_neighbour(m.x, m.from, m.into);
}

Expansion apply_rules(Forest& f, RuleContext& ctx) {
  for (;;) {
    std::vector<BlockStatus> status = f.blocking();
    trace_blocking(f, ctx, status);
    if (auto clash = find_clash(f, status)) return {Expansion::Kind::Clash, std::move(clash), std::nullopt};

    Engine engine(f, ctx, std::move(status));
    if (engine.negation() || engine.decomposition() || engine.propagation()) continue;
    if (auto choice = engine.merging()) return {Expansion::Kind::Choice, std::nullopt, std::move(choice)};
    if (engine.generation()) continue;
    if (auto choice = engine.branching()) return {Expansion::Kind::Choice, std::nullopt, std::move(choice)};
    return {};
  }
}

}  // namespace fdl
