#include "random_kb.hpp"

#include <algorithm>
#include <functional>

namespace fdl::testing {

Role KbGenerator::role() {
  return Role(pick(config_.role_names), false);
}

SignedBound KbGenerator::bound() {
  std::vector<Ineq> kinds{Ineq::Ge, Ineq::Le};
  if (config_.strict_bounds) kinds = {Ineq::Ge, Ineq::Gt, Ineq::Le, Ineq::Lt};
  Ineq k = pick(kinds);
  std::vector<Degree> allowed;
  for (const Degree& d : config_.degrees) {
    // Bounds no degree satisfies only produce trivial inconsistencies.
    if (k == Ineq::Gt && d == Degree::one()) continue;
    if (k == Ineq::Lt && d == Degree::zero()) continue;
    allowed.push_back(d);
  }
  return {k, pick(allowed)};
}

Concept KbGenerator::concept_of_depth(std::size_t max_depth) {
  std::uniform_int_distribution<int> coin(0, 99);
  auto atom = [&]() {
    Concept a = Concept::name(pick(config_.concept_names));
    return coin(rng_) < 30 ? Concept::negation(a) : a;
  };
  if (max_depth == 0 || coin(rng_) < 25) return atom();
  int choice = coin(rng_);
  if (config_.number_restrictions && choice < 15) {
    const auto& pool = config_.simple_roles.empty() ? config_.role_names : config_.simple_roles;
    Role r(pick(pool));
    std::uint32_t p = std::uniform_int_distribution<std::uint32_t>(0, 2)(rng_);
    return coin(rng_) < 50 ? Concept::at_least(p, r) : Concept::at_most(p, r);
  }
  if (choice < 40) return Concept::conjunction(concept_of_depth(max_depth - 1), concept_of_depth(max_depth - 1));
  if (choice < 60) return Concept::disjunction(concept_of_depth(max_depth - 1), concept_of_depth(max_depth - 1));
  Role r = role();
  if (choice < 80) return Concept::exists(r, concept_of_depth(max_depth - 1));
  return Concept::forall(r, concept_of_depth(max_depth - 1));
}

KnowledgeBase KbGenerator::kb() {
  KnowledgeBase kb;
  kb.rbox.transitive = config_.transitive;
  kb.rbox.inclusions = config_.inclusions;

  if (config_.definitions) {
    Concept body = concept_of_depth(std::min<std::size_t>(config_.max_depth, 2));
    auto kind = std::uniform_int_distribution<int>(0, 1)(rng_) ? DefinitionKind::Equivalent : DefinitionKind::Subsumed;
    kb.tbox.definitions.push_back({"X", kind, body});
  }

  const std::size_t concepts = std::uniform_int_distribution<std::size_t>(1, config_.max_concept_assertions)(rng_);
  const std::size_t roles = std::uniform_int_distribution<std::size_t>(0, config_.max_role_assertions)(rng_);
  std::uniform_int_distribution<int> coin(0, 99);
  for (std::size_t i = 0; i < concepts; ++i) {
    Concept c = concept_of_depth(config_.max_depth);
    if (config_.definitions && coin(rng_) < 40) c = Concept::conjunction(Concept::name("X"), c);
    kb.abox.concepts.push_back({pick(config_.individuals), c, bound()});
  }
  for (std::size_t i = 0; i < roles; ++i)
    kb.abox.roles.push_back({pick(config_.individuals), pick(config_.individuals), role(), bound()});
  if (config_.inequalities && config_.individuals.size() > 1 && coin(rng_) < 50) {
    auto names = kb.abox.individuals();
    if (names.size() > 1) kb.abox.inequalities.push_back({names[0], names[1]});
  }
  return kb;
}

std::size_t tree_model_bound(const KnowledgeBase& kb) {
  TBox unfolded = unfold(kb.tbox, kb.all_names());
  ABox abox = expand(kb.abox, unfolded);

  std::vector<std::size_t> generating_at_level;
  std::function<void(const Concept&, bool, std::size_t)> walk = [&](const Concept& c, bool positive,
                                                                     std::size_t level) {
    switch (c.kind()) {
      case ConceptKind::And:
      case ConceptKind::Or:
        walk(c.left(), positive, level);
        walk(c.right(), positive, level);
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        bool generates = (c.kind() == ConceptKind::Exists) == positive;
        if (generates) {
          if (generating_at_level.size() <= level) generating_at_level.resize(level + 1, 0);
          ++generating_at_level[level];
        }
        walk(c.operand(), positive, level + 1);
        break;
      }
      default: break;
    }
  };
  for (const auto& a : abox.concepts) walk(nnf(a.expr), is_positive(a.bound.ineq), 0);

  auto at_or_above = [&](std::size_t k) {
    std::size_t total = 0;
    for (std::size_t l = k; l < generating_at_level.size(); ++l) total += generating_at_level[l];
    return total;
  };
  std::size_t layer = abox.individuals().size();
  std::size_t total = layer;
  for (std::size_t k = 0; layer > 0 && k < generating_at_level.size(); ++k) {
    layer *= at_or_above(k);
    total += layer;
  }
  return std::max<std::size_t>(total, 1);
}

}  // namespace fdl::testing
