#include "fuzzydl/kb.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace fdl {

std::string to_string(const Assertion& a) {
  if (const auto* c = std::get_if<ConceptAssertion>(&a))
    return c->individual + " : " + c->expr.to_string() + " " + c->bound.to_string();
  const auto& r = std::get<RoleAssertion>(a);
  return "(" + r.from + ", " + r.to + ") : " + r.role.to_string() + " " + r.bound.to_string();
}

SignedBound bound_of(const Assertion& a) {
  return std::visit([](const auto& x) { return x.bound; }, a);
}

Assertion with_bound(const Assertion& a, SignedBound bound) {
  return std::visit(
      [&](auto x) -> Assertion {
        x.bound = bound;
        return x;
      },
      a);
}

void ABox::add(const Assertion& a) {
  if (const auto* c = std::get_if<ConceptAssertion>(&a))
    concepts.push_back(*c);
  else
    roles.push_back(std::get<RoleAssertion>(a));
}

std::vector<std::string> ABox::individuals() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto note = [&](const std::string& name) {
    if (seen.insert(name).second) out.push_back(name);
  };
  for (const auto& a : concepts) note(a.individual);
  for (const auto& a : roles) {
    note(a.from);
    note(a.to);
  }
  for (const auto& a : inequalities) {
    note(a.first);
    note(a.second);
  }
  return out;
}

namespace {

template <typename F>
void for_each_concept(const KnowledgeBase& kb, F&& f) {
  for (const auto& d : kb.tbox.definitions) {
    f(Concept::name(d.name));
    f(d.body);
  }
  for (const auto& g : kb.tbox.gcis) {
    f(g.lhs);
    f(g.rhs);
  }
  for (const auto& a : kb.abox.concepts) f(a.expr);
}

}  // namespace

std::set<std::string> KnowledgeBase::concept_names() const {
  std::set<std::string> out;
  for_each_concept(*this, [&](const Concept& c) { collect_names(c, out); });
  return out;
}

std::set<std::string> KnowledgeBase::role_names() const {
  std::set<std::string> out;
  for_each_concept(*this, [&](const Concept& c) { collect_roles(c, out); });
  for (const auto& t : rbox.transitive) out.insert(t);
  for (const auto& i : rbox.inclusions) {
    out.insert(i.sub.name());
    out.insert(i.super.name());
  }
  for (const auto& r : abox.roles) out.insert(r.role.name());
  return out;
}

std::set<std::string> KnowledgeBase::all_names() const {
  auto out = concept_names();
  for (auto& r : role_names()) out.insert(r);
  for (auto& i : abox.individuals()) out.insert(i);
  return out;
}

bool RoleHierarchy::subsumed(const Role& sub, const Role& super) const {
  if (sub == super) return true;
  auto it = supers_.find(sub);
  return it != supers_.end() && it->second.count(super) > 0;
}

bool RoleHierarchy::transitive(const Role& r) const { return transitive_.count(r) > 0; }

bool RoleHierarchy::simple(const Role& r) const {
  if (transitive(r)) return false;
  for (const Role& t : transitive_)
    if (subsumed(t, r)) return false;
  return true;
}

std::vector<Role> RoleHierarchy::sub_roles(const Role& super) const {
  std::vector<Role> out;
  bool seen_self = false;
  for (const Role& r : roles_) {
    if (subsumed(r, super)) {
      out.push_back(r);
      seen_self = seen_self || r == super;
    }
  }
  if (!seen_self) out.insert(std::lower_bound(out.begin(), out.end(), super), super);
  return out;
}

std::vector<Role> RoleHierarchy::transitive_sub_roles(const Role& super) const {
  std::vector<Role> out;
  for (const Role& r : sub_roles(super))
    if (transitive(r)) out.push_back(r);
  return out;
}

RoleHierarchy hierarchy_closure(const RBox& rbox, const std::set<std::string>& extra_roles) {
  RoleHierarchy h;
  std::set<std::string> names = extra_roles;
  for (const auto& t : rbox.transitive) names.insert(t);
  std::map<Role, std::set<Role>> direct;
  for (const auto& inc : rbox.inclusions) {
    names.insert(inc.sub.name());
    names.insert(inc.super.name());
    direct[inc.sub].insert(inc.super);
    direct[inc.sub.inverse()].insert(inc.super.inverse());
    if (inc.sub != inc.super) h.proper_inclusions_ = true;
  }
  for (const auto& n : names) {
    h.roles_.emplace_back(n, false);
    h.roles_.emplace_back(n, true);
  }
  std::sort(h.roles_.begin(), h.roles_.end());
  for (const Role& r : h.roles_) {
    std::set<Role> reach{r};
    std::vector<Role> work{r};
    while (!work.empty()) {
      Role cur = work.back();
      work.pop_back();
      auto it = direct.find(cur);
      if (it == direct.end()) continue;
      for (const Role& s : it->second)
        if (reach.insert(s).second) work.push_back(s);
    }
    h.supers_[r] = std::move(reach);
  }
  for (const auto& t : rbox.transitive) {
    h.transitive_.insert(Role(t, false));
    h.transitive_.insert(Role(t, true));
  }
  return h;
}

namespace {

bool has_duplicates(const TBox& tbox) {
  std::set<std::string> seen;
  for (const auto& d : tbox.definitions)
    if (!seen.insert(d.name).second) return true;
  return false;
}

// Definition dependency cycle, if any, as the name where it closes.
std::optional<std::string> find_cycle(const TBox& tbox) {
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& d : tbox.definitions) {
    std::set<std::string> used;
    collect_names(d.body, used);
    deps[d.name].insert(used.begin(), used.end());
  }
  enum class Mark { Fresh, Active, Done };
  std::map<std::string, Mark> mark;
  std::optional<std::string> found;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    if (found) return;
    auto& m = mark[n];
    if (m == Mark::Done) return;
    if (m == Mark::Active) {
      found = n;
      return;
    }
    m = Mark::Active;
    if (auto it = deps.find(n); it != deps.end())
      for (const auto& next : it->second)
        if (deps.count(next)) visit(next);
    mark[n] = Mark::Done;
  };
  for (const auto& d : tbox.definitions) visit(d.name);
  return found;
}

}  // namespace

bool is_unfoldable(const TBox& tbox) {
  return tbox.gcis.empty() && !has_duplicates(tbox) && !find_cycle(tbox);
}

TBox unfold(const TBox& tbox, const std::set<std::string>& reserved) {
  if (!tbox.gcis.empty()) throw KbError(KbErrorKind::Mode, "TBox with general inclusions cannot be unfolded");
  std::set<std::string> seen;
  for (const auto& d : tbox.definitions)
    if (!seen.insert(d.name).second) throw KbError(KbErrorKind::DuplicateDefinition, "concept " + d.name + " is defined twice");
  if (auto cyc = find_cycle(tbox)) throw KbError(KbErrorKind::CyclicTBox, "definition of " + *cyc + " is cyclic");

  std::set<std::string> taken = reserved;
  for (const auto& d : tbox.definitions) {
    taken.insert(d.name);
    collect_names(d.body, taken);
  }
  TBox out;
  for (const auto& d : tbox.definitions) {
    if (d.kind == DefinitionKind::Equivalent) {
      out.definitions.push_back(d);
      continue;
    }
    std::string fresh = d.name + "'";
    while (taken.count(fresh)) fresh += "'";
    taken.insert(fresh);
    out.definitions.push_back(
        {d.name, DefinitionKind::Equivalent, Concept::conjunction(Concept::name(fresh), d.body)});
  }
  return out;
}

namespace {

class Expander {
 public:
  explicit Expander(const TBox& unfolded) {
    for (const auto& d : unfolded.definitions) bodies_.emplace(d.name, d.body);
  }

  Concept operator()(const Concept& c) {
    if (auto it = memo_.find(c); it != memo_.end()) return it->second;
    Concept out = rewrite(c);
    memo_.emplace(c, out);
    return out;
  }

 private:
  Concept rewrite(const Concept& c) {
    switch (c.kind()) {
      case ConceptKind::Name: {
        auto it = bodies_.find(c.name());
        return it == bodies_.end() ? c : (*this)(it->second);
      }
      case ConceptKind::Not: return Concept::negation((*this)(c.operand()));
      case ConceptKind::And: return Concept::conjunction((*this)(c.left()), (*this)(c.right()));
      case ConceptKind::Or: return Concept::disjunction((*this)(c.left()), (*this)(c.right()));
      case ConceptKind::Exists: return Concept::exists(c.role(), (*this)(c.operand()));
      case ConceptKind::Forall: return Concept::forall(c.role(), (*this)(c.operand()));
      default: return c;
    }
  }

  std::map<std::string, Concept> bodies_;
  std::map<Concept, Concept> memo_;
};

}  // namespace

Concept expand(const Concept& c, const TBox& unfolded) { return Expander(unfolded)(c); }

ABox expand(const ABox& abox, const TBox& unfolded) {
  Expander ex(unfolded);
  ABox out = abox;
  for (auto& a : out.concepts) a.expr = ex(a.expr);
  return out;
}

std::vector<Gci> as_gcis(const TBox& tbox) {
  std::vector<Gci> out;
  for (const auto& d : tbox.definitions) {
    Concept name = Concept::name(d.name);
    out.push_back({name, d.body});
    if (d.kind == DefinitionKind::Equivalent) out.push_back({d.body, name});
  }
  out.insert(out.end(), tbox.gcis.begin(), tbox.gcis.end());
  return out;
}

namespace {

void collect_non_simple(const Concept& c, const RoleHierarchy& h, std::vector<Concept>& out) {
  switch (c.kind()) {
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      if (!h.simple(c.role())) out.push_back(c);
      break;
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      collect_non_simple(c.operand(), h, out);
      break;
    case ConceptKind::And:
    case ConceptKind::Or:
      collect_non_simple(c.left(), h, out);
      collect_non_simple(c.right(), h, out);
      break;
    default: break;
  }
}

bool in_unit_interval(const Degree& d) { return d >= Degree::zero() && d <= Degree::one(); }

}  // namespace

std::vector<Concept> non_simple_number_restrictions(const Concept& c, const RoleHierarchy& hierarchy) {
  std::vector<Concept> out;
  collect_non_simple(c, hierarchy, out);
  return out;
}

Diagnostic non_simple_diagnostic(const Concept& restriction) {
  return {Severity::Error, DiagnosticCode::NonSimpleRoleInNumberRestriction,
          "number restriction " + restriction.to_string() + " uses non-simple role " + restriction.role().to_string(),
          {}};
}

std::vector<Diagnostic> validate(const KnowledgeBase& kb) {
  std::vector<Diagnostic> out;
  RoleHierarchy h = hierarchy_closure(kb.rbox, kb.role_names());
  for_each_concept(kb, [&](const Concept& c) {
    for (const Concept& bad : non_simple_number_restrictions(c, h)) out.push_back(non_simple_diagnostic(bad));
  });
  if (!kb.tbox.gcis.empty())
    out.push_back({Severity::Note, DiagnosticCode::GciPresent, "general concept inclusions present; GCI mode required", {}});
  else if (!is_unfoldable(kb.tbox))
    out.push_back({Severity::Note, DiagnosticCode::NonUnfoldableTBox,
                   "TBox is cyclic or redefines a name; GCI mode required", {}});
  auto check_degree = [&](const SignedBound& b, const std::string& what) {
    if (!in_unit_interval(b.degree))
      out.push_back({Severity::Error, DiagnosticCode::DegreeOutOfRange,
                     "degree " + b.degree.to_string() + " of " + what + " is outside [0,1]", {}});
  };
  for (const auto& a : kb.abox.concepts) check_degree(a.bound, to_string(Assertion(a)));
  for (const auto& a : kb.abox.roles) check_degree(a.bound, to_string(Assertion(a)));
  return out;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::SI: return "si";
    case Mode::SHIN: return "shin";
    case Mode::GCI: return "gci";
  }
  return "?";
}

KbFeatures features_of(const KnowledgeBase& kb) {
  KbFeatures f;
  for_each_concept(kb, [&](const Concept& c) { f.number_restrictions = f.number_restrictions || has_number_restriction(c); });
  for (const auto& inc : kb.rbox.inclusions)
    if (inc.sub != inc.super) f.role_inclusions = true;
  f.inequalities = !kb.abox.inequalities.empty();
  f.needs_gci = !is_unfoldable(kb.tbox);
  return f;
}

Mode select_mode(const KnowledgeBase& kb, Mode requested) {
  KbFeatures f = features_of(kb);
  auto reject = [&](const std::string& why) {
    throw KbError(KbErrorKind::Mode, "mode " + std::string(to_string(requested)) + " cannot handle " + why);
  };
  switch (requested) {
    case Mode::GCI: return Mode::GCI;
    case Mode::SI:
      if (f.number_restrictions) reject("number restrictions");
      if (f.role_inclusions) reject("role inclusions");
      if (f.inequalities) reject("inequality assertions");
      if (f.needs_gci) reject("a TBox that is not unfoldable");
      return Mode::SI;
    case Mode::SHIN:
      if (f.needs_gci) reject("a TBox that is not unfoldable");
      return Mode::SHIN;
    case Mode::Auto:
      if (f.needs_gci) return Mode::GCI;
      if (f.number_restrictions || f.role_inclusions || f.inequalities) return Mode::SHIN;
      return Mode::SI;
  }
  return Mode::SI;
}

std::set<Degree> degree_support(const ABox& abox) {
  std::set<Degree> out{Degree::zero(), Degree::half(), Degree::one()};
  auto add = [&](const Degree& d) {
    out.insert(d);
    out.insert(neg_lukasiewicz(d));
  };
  for (const auto& a : abox.concepts) add(a.bound.degree);
  for (const auto& a : abox.roles) add(a.bound.degree);
  return out;
}

Degree minimum_gap(const std::set<Degree>& degrees) {
  std::optional<Degree> best;
  for (auto it = degrees.begin(); it != degrees.end(); ++it) {
    auto next = std::next(it);
    if (next == degrees.end()) break;
    Degree gap = *next - *it;
    if (!best || gap < *best) best = gap;
  }
  return best.value_or(Degree::one());
}

Degree gci_offset(const ABox& abox) { return minimum_gap(degree_support(abox)) / Degree(4); }

std::pair<ABox, RelativeDegrees> normalize_for_gci(const ABox& abox, const Degree& ell) {
  ABox out = abox;
  RelativeDegrees rel{{Degree::zero(), Degree::half(), Degree::one()}};
  auto fix = [&](SignedBound& b) {
    if (b.ineq == Ineq::Gt) b = {Ineq::Ge, b.degree + ell};
    if (b.ineq == Ineq::Lt) b = {Ineq::Le, b.degree - ell};
    rel.xs.insert(b.degree);
    rel.xs.insert(neg_lukasiewicz(b.degree));
  };
  for (auto& a : out.concepts) fix(a.bound);
  for (auto& a : out.roles) fix(a.bound);
  return {std::move(out), std::move(rel)};
}

}  // namespace fdl
