#include "fuzzydl/services.hpp"

#include <algorithm>

namespace fdl {

namespace {

KnowledgeBase with(const KnowledgeBase& kb, std::initializer_list<Assertion> extra) {
  KnowledgeBase out = kb;
  for (const auto& a : extra) out.abox.add(a);
  return out;
}

}  // namespace

bool consistent(const KnowledgeBase& kb, const ServiceOptions& options) {
  return solve(kb, options.mode, options.solver).consistent;
}

bool entails(const KnowledgeBase& kb, const Assertion& query, const ServiceOptions& options) {
  SignedBound b = bound_of(query);
  return !consistent(with(kb, {with_bound(query, {negate(b.ineq), b.degree})}), options);
}

bool entails(const KnowledgeBase& kb, const Assertion& subject, const std::vector<SignedBound>& bounds,
             const ServiceOptions& options) {
  return std::all_of(bounds.begin(), bounds.end(),
                     [&](const SignedBound& b) { return entails(kb, with_bound(subject, b), options); });
}

std::set<Degree> candidate_degrees(const KnowledgeBase& kb, Mode mode) {
  std::set<Degree> out = degree_support(kb.abox);
  if (mode == Mode::GCI) {
    auto relative = normalize_for_gci(kb.abox, gci_offset(kb.abox)).second;
    out.insert(relative.xs.begin(), relative.xs.end());
  }
  return out;
}

BoundResult glb(const KnowledgeBase& kb, const Assertion& subject, const ServiceOptions& options) {
  if (!consistent(kb, options)) return {false, Degree::one()};
  const Mode mode = select_mode(with(kb, {subject}), options.mode);
  const auto candidates = candidate_degrees(kb, mode);
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it)
    if (entails(kb, with_bound(subject, {Ineq::Ge, *it}), options)) return {true, *it};
  return {true, Degree::zero()};
}

BoundResult lub(const KnowledgeBase& kb, const Assertion& subject, const ServiceOptions& options) {
  if (!consistent(kb, options)) return {false, Degree::zero()};
  const Mode mode = select_mode(with(kb, {subject}), options.mode);
  for (const Degree& n : candidate_degrees(kb, mode))
    if (entails(kb, with_bound(subject, {Ineq::Le, n}), options)) return {true, n};
  return {true, Degree::one()};
}

std::string fresh_individual(const KnowledgeBase& kb) {
  auto used = kb.abox.individuals();
  std::set<std::string> taken(used.begin(), used.end());
  std::string name = "fresh";
  for (int i = 1; taken.count(name); ++i) name = "fresh" + std::to_string(i);
  return name;
}

bool satisfiable(const KnowledgeBase& kb, const Concept& c, const ServiceOptions& options) {
  return consistent(with(kb, {ConceptAssertion{fresh_individual(kb), c, {Ineq::Gt, Degree::zero()}}}), options);
}

bool n_satisfiable(const KnowledgeBase& kb, const Concept& c, const Degree& n, const ServiceOptions& options) {
  const std::string a = fresh_individual(kb);
  return consistent(with(kb, {ConceptAssertion{a, c, {Ineq::Ge, n}}, ConceptAssertion{a, c, {Ineq::Le, n}}}), options);
}

bool subsumes(const KnowledgeBase& kb, const Concept& sub, const Concept& super, const ServiceOptions& options) {
  const std::string a = fresh_individual(kb);
  for (const Degree& n : {Degree::half(), Degree::one()}) {
    KnowledgeBase test = with(kb, {ConceptAssertion{a, sub, {Ineq::Ge, n}}, ConceptAssertion{a, super, {Ineq::Lt, n}}});
    if (consistent(test, options)) return false;
  }
  return true;
}

}  // namespace fdl
