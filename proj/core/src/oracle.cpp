#include "fuzzydl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fdl {

FuzzyInterpretation::FuzzyInterpretation(std::size_t domain_size) : size_(domain_size) {}

void FuzzyInterpretation::declare_concept(const std::string& name) {
  concepts_.try_emplace(name, std::vector<Degree>(size_, Degree::zero()));
}

void FuzzyInterpretation::declare_role(const std::string& name) {
  roles_.try_emplace(name, std::vector<Degree>(size_ * size_, Degree::zero()));
}

void FuzzyInterpretation::set_concept(const std::string& name, std::size_t e, Degree d) {
  declare_concept(name);
  concepts_.at(name).at(e) = d;
}

void FuzzyInterpretation::set_role(const std::string& name, std::size_t from, std::size_t to, Degree d) {
  declare_role(name);
  roles_.at(name).at(from * size_ + to) = d;
}

void FuzzyInterpretation::set_individual(const std::string& name, std::size_t e) { individuals_[name] = e; }

Degree FuzzyInterpretation::concept_degree(const std::string& name, std::size_t e) const {
  auto it = concepts_.find(name);
  if (it == concepts_.end()) throw UnknownName("concept " + name + " is not interpreted");
  return it->second.at(e);
}

Degree FuzzyInterpretation::role_degree(const Role& r, std::size_t from, std::size_t to) const {
  auto it = roles_.find(r.name());
  if (it == roles_.end()) throw UnknownName("role " + r.name() + " is not interpreted");
  if (r.inverted()) std::swap(from, to);
  return it->second.at(from * size_ + to);
}

std::optional<std::size_t> FuzzyInterpretation::individual(const std::string& name) const {
  auto it = individuals_.find(name);
  if (it == individuals_.end()) return std::nullopt;
  return it->second;
}

std::string FuzzyInterpretation::to_string() const {
  std::ostringstream os;
  os << "domain " << size_ << "\n";
  for (const auto& [name, e] : individuals_) os << "  " << name << " -> " << e << "\n";
  for (const auto& [name, values] : concepts_) {
    os << "  " << name << ":";
    for (const auto& v : values) os << " " << v;
    os << "\n";
  }
  for (const auto& [name, values] : roles_) {
    os << "  " << name << ":";
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (values[i * size_ + j] != Degree::zero()) os << " (" << i << "," << j << ")=" << values[i * size_ + j];
    os << "\n";
  }
  return os.str();
}

namespace {

// k-th largest (1-based) of values; nullopt when there are fewer than k.
std::optional<Degree> kth_largest(std::vector<Degree> values, std::size_t k) {
  if (k == 0 || k > values.size()) return std::nullopt;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end(),
                   std::greater<>());
  return values[k - 1];
}

}  // namespace

Degree eval_concept(const FuzzyInterpretation& i, const Concept& c, std::size_t e) {
  const std::size_t n = i.domain_size();
  switch (c.kind()) {
    case ConceptKind::Top: return Degree::one();
    case ConceptKind::Bottom: return Degree::zero();
    case ConceptKind::Name: return i.concept_degree(c.name(), e);
    case ConceptKind::Not: return neg_lukasiewicz(eval_concept(i, c.operand(), e));
    case ConceptKind::And: return tnorm_min(eval_concept(i, c.left(), e), eval_concept(i, c.right(), e));
    case ConceptKind::Or: return tconorm_max(eval_concept(i, c.left(), e), eval_concept(i, c.right(), e));
    case ConceptKind::Exists: {
      Degree best = Degree::zero();
      for (std::size_t y = 0; y < n; ++y)
        best = tconorm_max(best, tnorm_min(i.role_degree(c.role(), e, y), eval_concept(i, c.operand(), y)));
      return best;
    }
    case ConceptKind::Forall: {
      Degree worst = Degree::one();
      for (std::size_t y = 0; y < n; ++y)
        worst = tnorm_min(worst, impl_kd(i.role_degree(c.role(), e, y), eval_concept(i, c.operand(), y)));
      return worst;
    }
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost: {
      std::vector<Degree> values;
      for (std::size_t y = 0; y < n; ++y) values.push_back(i.role_degree(c.role(), e, y));
      if (c.kind() == ConceptKind::AtLeast) {
        if (c.cardinality() == 0) return Degree::one();
        return kth_largest(values, c.cardinality()).value_or(Degree::zero());
      }
      auto v = kth_largest(values, c.cardinality() + 1);
      return v ? neg_lukasiewicz(*v) : Degree::one();
    }
  }
  return Degree::zero();
}

std::optional<std::string> first_violation(const FuzzyInterpretation& i, const KnowledgeBase& kb) {
  const std::size_t n = i.domain_size();
  for (const auto& name : kb.abox.individuals())
    if (!i.individual(name)) return "individual " + name + " is not interpreted";

  for (const auto& a : kb.abox.concepts) {
    Degree v = eval_concept(i, a.expr, *i.individual(a.individual));
    if (!holds(a.bound.ineq, v, a.bound.degree)) return to_string(Assertion{a}) + " (actual " + v.to_string() + ")";
  }
  for (const auto& a : kb.abox.roles) {
    Degree v = i.role_degree(a.role, *i.individual(a.from), *i.individual(a.to));
    if (!holds(a.bound.ineq, v, a.bound.degree)) return to_string(Assertion{a}) + " (actual " + v.to_string() + ")";
  }
  for (const auto& d : kb.abox.inequalities)
    if (*i.individual(d.first) == *i.individual(d.second)) return d.first + " and " + d.second + " share an element";

  for (const auto& d : kb.tbox.definitions) {
    Concept name = Concept::name(d.name);
    for (std::size_t e = 0; e < n; ++e) {
      Degree lhs = eval_concept(i, name, e);
      Degree rhs = eval_concept(i, d.body, e);
      bool ok = d.kind == DefinitionKind::Equivalent ? lhs == rhs : lhs <= rhs;
      if (!ok) return "definition of " + d.name + " fails at element " + std::to_string(e);
    }
  }
  for (const auto& g : kb.tbox.gcis)
    for (std::size_t e = 0; e < n; ++e)
      if (eval_concept(i, g.lhs, e) > eval_concept(i, g.rhs, e))
        return "inclusion " + g.lhs.to_string() + " ⊑ " + g.rhs.to_string() + " fails at element " + std::to_string(e);

  for (const auto& name : kb.rbox.transitive) {
    Role r(name);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (tnorm_min(i.role_degree(r, a, b), i.role_degree(r, b, c)) > i.role_degree(r, a, c))
            return "role " + name + " is not transitive";
  }
  for (const auto& inc : kb.rbox.inclusions)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (i.role_degree(inc.sub, a, b) > i.role_degree(inc.super, a, b))
          return "inclusion " + inc.sub.to_string() + " ⊑ " + inc.super.to_string() + " fails";
  return std::nullopt;
}

bool satisfies_kb(const FuzzyInterpretation& i, const KnowledgeBase& kb) { return !first_violation(i, kb); }

std::vector<Degree> default_grid(const KnowledgeBase& kb) {
  std::set<Degree> base = degree_support(kb.abox);
  std::vector<Degree> sorted(base.begin(), base.end());
  std::vector<Degree> out;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    out.push_back(sorted[k]);
    if (k + 1 < sorted.size()) out.push_back((sorted[k] + sorted[k + 1]) / Degree(2));
  }
  return out;
}

namespace {

struct Interval {
  Degree lo;
  Degree hi;
};

enum class Verdict { Violated, Satisfied, Open };

Verdict judge(const Interval& v, const SignedBound& b) {
  const bool all = holds(b.ineq, is_positive(b.ineq) ? v.lo : v.hi, b.degree);
  const bool any = holds(b.ineq, is_positive(b.ineq) ? v.hi : v.lo, b.degree);
  if (all) return Verdict::Satisfied;
  return any ? Verdict::Open : Verdict::Violated;
}

// lhs <= rhs
Verdict judge_leq(const Interval& lhs, const Interval& rhs) {
  if (lhs.hi <= rhs.lo) return Verdict::Satisfied;
  if (lhs.lo > rhs.hi) return Verdict::Violated;
  return Verdict::Open;
}

class Search {
 public:
  Search(const KnowledgeBase& kb, const std::vector<Degree>& grid, std::size_t size, std::size_t budget,
         std::size_t& steps)
      : kb_(kb), grid_(grid), size_(size), budget_(budget), steps_(steps) {
    for (const auto& name : kb.concept_names()) concept_index_.emplace(name, concept_index_.size());
    for (const auto& name : kb.role_names()) role_index_.emplace(name, role_index_.size());
    role_base_ = concept_index_.size() * size_;
    values_.assign(role_base_ + role_index_.size() * size_ * size_, -1);
  }

  // Assignment for the given individual placement, or nullopt. Throws
  // std::length_error when the step budget runs out.
  std::optional<FuzzyInterpretation> run(const std::vector<std::size_t>& placement) {
    placement_ = placement;
    std::fill(values_.begin(), values_.end(), -1);
    if (!dfs()) return std::nullopt;
    return build();
  }

 private:
  Interval var(std::size_t v) const {
    if (values_[v] < 0) {
      if (!unknown_) unknown_ = v;
      return {grid_.front(), grid_.back()};
    }
    const Degree& d = grid_[static_cast<std::size_t>(values_[v])];
    return {d, d};
  }

  Interval role(const Role& r, std::size_t from, std::size_t to) const {
    if (r.inverted()) std::swap(from, to);
    return var(role_base_ + role_index_.at(r.name()) * size_ * size_ + from * size_ + to);
  }

  Interval eval(const Concept& c, std::size_t e) const {
    switch (c.kind()) {
      case ConceptKind::Top: return {Degree::one(), Degree::one()};
      case ConceptKind::Bottom: return {Degree::zero(), Degree::zero()};
      case ConceptKind::Name: return var(concept_index_.at(c.name()) * size_ + e);
      case ConceptKind::Not: {
        Interval v = eval(c.operand(), e);
        return {neg_lukasiewicz(v.hi), neg_lukasiewicz(v.lo)};
      }
      case ConceptKind::And:
      case ConceptKind::Or: {
        Interval a = eval(c.left(), e);
        Interval b = eval(c.right(), e);
        if (c.kind() == ConceptKind::And) return {tnorm_min(a.lo, b.lo), tnorm_min(a.hi, b.hi)};
        return {tconorm_max(a.lo, b.lo), tconorm_max(a.hi, b.hi)};
      }
      case ConceptKind::Exists: {
        Interval out{Degree::zero(), Degree::zero()};
        for (std::size_t y = 0; y < size_; ++y) {
          Interval r = role(c.role(), e, y);
          Interval f = eval(c.operand(), y);
          out.lo = tconorm_max(out.lo, tnorm_min(r.lo, f.lo));
          out.hi = tconorm_max(out.hi, tnorm_min(r.hi, f.hi));
        }
        return out;
      }
      case ConceptKind::Forall: {
        Interval out{Degree::one(), Degree::one()};
        for (std::size_t y = 0; y < size_; ++y) {
          Interval r = role(c.role(), e, y);
          Interval f = eval(c.operand(), y);
          out.lo = tnorm_min(out.lo, impl_kd(r.hi, f.lo));
          out.hi = tnorm_min(out.hi, impl_kd(r.lo, f.hi));
        }
        return out;
      }
      case ConceptKind::AtLeast:
      case ConceptKind::AtMost: {
        std::vector<Degree> lows;
        std::vector<Degree> highs;
        for (std::size_t y = 0; y < size_; ++y) {
          Interval r = role(c.role(), e, y);
          lows.push_back(r.lo);
          highs.push_back(r.hi);
        }
        if (c.kind() == ConceptKind::AtLeast) {
          if (c.cardinality() == 0) return {Degree::one(), Degree::one()};
          return {kth_largest(lows, c.cardinality()).value_or(Degree::zero()),
                  kth_largest(highs, c.cardinality()).value_or(Degree::zero())};
        }
        auto lo = kth_largest(highs, c.cardinality() + 1);
        auto hi = kth_largest(lows, c.cardinality() + 1);
        return {lo ? neg_lukasiewicz(*lo) : Degree::one(), hi ? neg_lukasiewicz(*hi) : Degree::one()};
      }
    }
    return {Degree::zero(), Degree::one()};
  }

  // Violated if any constraint fails outright; Open with unknown_ set to a
  // variable of the first undecided constraint; Satisfied otherwise.
  Verdict check() const {
    std::optional<std::size_t> pending;
    auto consider = [&](Verdict v) {
      if (v == Verdict::Open && !pending) pending = unknown_;
      unknown_.reset();
      return v == Verdict::Violated;
    };
    auto at = [&](const std::string& name) { return placement_[individual_slot(name)]; };

    for (const auto& a : kb_.abox.concepts)
      if (consider(judge(eval(a.expr, at(a.individual)), a.bound))) return Verdict::Violated;
    for (const auto& a : kb_.abox.roles)
      if (consider(judge(role(a.role, at(a.from), at(a.to)), a.bound))) return Verdict::Violated;
    for (const auto& d : kb_.tbox.definitions) {
      Concept name = Concept::name(d.name);
      for (std::size_t e = 0; e < size_; ++e) {
        if (consider(judge_leq(eval(name, e), eval(d.body, e)))) return Verdict::Violated;
        if (d.kind == DefinitionKind::Equivalent && consider(judge_leq(eval(d.body, e), eval(name, e))))
          return Verdict::Violated;
      }
    }
    for (const auto& g : kb_.tbox.gcis)
      for (std::size_t e = 0; e < size_; ++e)
        if (consider(judge_leq(eval(g.lhs, e), eval(g.rhs, e)))) return Verdict::Violated;
    for (const auto& name : kb_.rbox.transitive) {
      Role r(name);
      for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b)
          for (std::size_t c = 0; c < size_; ++c) {
            Interval ab = role(r, a, b);
            Interval bc = role(r, b, c);
            Interval ac = role(r, a, c);
            if (consider(judge_leq({tnorm_min(ab.lo, bc.lo), tnorm_min(ab.hi, bc.hi)}, ac))) return Verdict::Violated;
          }
    }
    for (const auto& inc : kb_.rbox.inclusions)
      for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b)
          if (consider(judge_leq(role(inc.sub, a, b), role(inc.super, a, b)))) return Verdict::Violated;

    unknown_ = pending;
    return pending ? Verdict::Open : Verdict::Satisfied;
  }

  std::size_t individual_slot(const std::string& name) const {
    auto names = kb_.abox.individuals();
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
  }

  bool dfs() {
    if (++steps_ > budget_) throw std::length_error("oracle budget exceeded");
    Verdict v = check();
    if (v == Verdict::Violated) return false;
    if (v == Verdict::Satisfied) return true;
    std::size_t branch = *unknown_;
    unknown_.reset();
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      values_[branch] = static_cast<int>(k);
      if (dfs()) return true;
    }
    values_[branch] = -1;
    return false;
  }

  FuzzyInterpretation build() const {
    FuzzyInterpretation out(size_);
    auto value = [&](std::size_t v) { return values_[v] < 0 ? grid_.front() : grid_[static_cast<std::size_t>(values_[v])]; };
    for (const auto& [name, ci] : concept_index_)
      for (std::size_t e = 0; e < size_; ++e) out.set_concept(name, e, value(ci * size_ + e));
    for (const auto& [name, ri] : role_index_)
      for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b)
          out.set_role(name, a, b, value(role_base_ + ri * size_ * size_ + a * size_ + b));
    auto names = kb_.abox.individuals();
    for (std::size_t k = 0; k < names.size(); ++k) out.set_individual(names[k], placement_[k]);
    return out;
  }

  const KnowledgeBase& kb_;
  const std::vector<Degree>& grid_;
  std::size_t size_;
  std::size_t budget_;
  std::size_t& steps_;
  std::map<std::string, std::size_t> concept_index_;
  std::map<std::string, std::size_t> role_index_;
  std::size_t role_base_ = 0;
  std::vector<int> values_;
  std::vector<std::size_t> placement_;
  mutable std::optional<std::size_t> unknown_;
};

// Restricted-growth placements of individuals onto `size` elements that keep
// asserted-distinct individuals apart.
void placements(const KnowledgeBase& kb, std::size_t size,
                const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  const auto names = kb.abox.individuals();
  std::vector<std::size_t> current;
  auto slot = [&](const std::string& n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
  };
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t used) {
    if (k == names.size()) return visit(current);
    for (std::size_t e = 0; e < std::min(used + 1, size); ++e) {
      current.push_back(e);
      bool ok = true;
      for (const auto& d : kb.abox.inequalities) {
        std::size_t a = slot(d.first);
        std::size_t b = slot(d.second);
        if (a <= k && b <= k && current[a] == current[b]) ok = false;
      }
      if (ok && rec(k + 1, std::max(used, e + 1))) return true;
      current.pop_back();
    }
    return false;
  };
  rec(0, 0);
}

}  // namespace

SearchResult search_model(const KnowledgeBase& kb, const SearchOptions& options) {
  const std::vector<Degree> grid = options.grid.empty() ? default_grid(kb) : options.grid;
  SearchResult result;
  try {
    for (std::size_t size = 1; size <= options.max_domain; ++size) {
      Search search(kb, grid, size, options.budget, result.steps);
      placements(kb, size, [&](const std::vector<std::size_t>& placement) {
        if (auto model = search.run(placement)) {
          result.model = std::move(model);
          return true;
        }
        return false;
      });
      if (result.model) {
        result.status = SearchStatus::Found;
        return result;
      }
    }
  } catch (const std::length_error&) {
    result.status = SearchStatus::BudgetExceeded;
    return result;
  }
  result.status = SearchStatus::Exhausted;
  return result;
}

}  // namespace fdl
