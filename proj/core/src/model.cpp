#include "fuzzydl/tableau.hpp"

namespace fdl {

namespace {

std::set<Degree> forest_degrees(const Forest& f) {
  std::set<Degree> out{Degree::zero(), Degree::one()};
  auto add = [&](const Degree& d) {
    out.insert(d);
    out.insert(neg_lukasiewicz(d));
  };
  for (const Node& n : f.nodes())
    for (const auto& t : n.label) add(t.bound.degree);
  for (const auto& [key, label] : f.edges())
    for (const auto& t : label) add(t.bound.degree);
  return out;
}

// Smallest degree meeting every lower bound in the triples.
Degree lower_envelope(const Degree& current, const SignedBound& b, const Degree& epsilon) {
  if (b.ineq == Ineq::Ge) return tconorm_max(current, b.degree);
  if (b.ineq == Ineq::Gt) return tconorm_max(current, b.degree + epsilon);
  return current;
}

}  // namespace

FuzzyInterpretation extract_model(const Forest& f, const KnowledgeBase& kb, const TBox& unfolded) {
  if (f.mode() != Mode::SI) throw NotApplicable("model extraction is only defined for SI forests");

  const auto status = f.blocking();
  std::vector<std::optional<std::size_t>> element(f.size());
  std::size_t count = 0;
  for (const Node& n : f.nodes())
    if (!status[index(n.id)].dead && !status[index(n.id)].blocked()) element[index(n.id)] = count++;
  auto target = [&](NodeId id) -> std::optional<std::size_t> {
    const BlockStatus& s = status[index(id)];
    if (s.kind == BlockKind::Direct) return element[index(*s.blocker)];
    return element[index(id)];
  };

  const Degree epsilon = minimum_gap(forest_degrees(f)) / Degree(2);
  FuzzyInterpretation model(count);

  std::set<std::string> defined;
  for (const auto& d : unfolded.definitions) defined.insert(d.name);
  std::set<std::string> names = kb.concept_names();
  for (const auto& d : unfolded.definitions) collect_names(d.body, names);
  for (const auto& name : names) model.declare_concept(name);

  for (const Node& n : f.nodes()) {
    auto e = element[index(n.id)];
    if (!e) continue;
    std::map<std::string, Degree> values;
    for (const auto& t : n.label) {
      if (t.expr.kind() != ConceptKind::Name || defined.count(t.expr.name())) continue;
      auto [it, fresh] = values.emplace(t.expr.name(), Degree::zero());
      it->second = lower_envelope(it->second, t.bound, epsilon);
    }
    for (const auto& [name, value] : values) {
      model.declare_concept(name);
      model.set_concept(name, *e, value);
    }
  }

  std::set<std::string> roles = kb.role_names();
  for (const auto& name : roles) model.declare_role(name);
  for (const auto& [key, label] : f.edges()) {
    const auto& fromn = f.node(key.first);
    if (status[index(fromn.id)].dead || status[index(fromn.id)].blocked()) continue;
    auto from = element[index(key.first)];
    auto to = target(key.second);
    if (!from || !to) continue;
    for (const auto& t : label) {
      model.declare_role(t.role.name());
      auto [a, b] = t.role.inverted() ? std::pair{*to, *from} : std::pair{*from, *to};
      Degree cur = model.role_degree(Role(t.role.name()), a, b);
      model.set_role(t.role.name(), a, b, lower_envelope(cur, t.bound, epsilon));
    }
  }

  const RoleHierarchy h = hierarchy_closure(kb.rbox, roles);
  for (const auto& name : roles) {
    if (!h.transitive(Role(name))) continue;
    Role r(name);
    for (std::size_t k = 0; k < count; ++k)
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
          Degree via = tnorm_min(model.role_degree(r, i, k), model.role_degree(r, k, j));
          if (via > model.role_degree(r, i, j)) model.set_role(name, i, j, via);
        }
  }

  for (const auto& d : unfolded.definitions) {
    Concept body = expand(Concept::name(d.name), unfolded);
    for (std::size_t e = 0; e < count; ++e) model.set_concept(d.name, e, eval_concept(model, body, e));
  }

  for (const auto& name : kb.abox.individuals())
    if (auto root = f.root_of(name))
      if (auto e = element[index(*root)]) model.set_individual(name, *e);
  return model;
}

}  // namespace fdl
