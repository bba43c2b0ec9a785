// Direct semantics over finite fuzzy interpretations, and a brute-force model
// search used to cross-check the tableau on small inputs.
#pragma once

#include "fuzzydl/degree.hpp"
#include "fuzzydl/kb.hpp"
#include "fuzzydl/syntax.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdl {

class UnknownName : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite interpretation with domain {0, ..., size-1}. Names must be declared
// before they are read; declared names start at degree 0.
class FuzzyInterpretation {
 public:
  explicit FuzzyInterpretation(std::size_t domain_size = 0);

  std::size_t domain_size() const { return size_; }

  void declare_concept(const std::string& name);
  void declare_role(const std::string& name);
  void set_concept(const std::string& name, std::size_t e, Degree d);
  void set_role(const std::string& name, std::size_t from, std::size_t to, Degree d);
  void set_individual(const std::string& name, std::size_t e);

  Degree concept_degree(const std::string& name, std::size_t e) const;
  // Inverse roles read the stored relation with arguments swapped.
  Degree role_degree(const Role& r, std::size_t from, std::size_t to) const;
  std::optional<std::size_t> individual(const std::string& name) const;

  const std::map<std::string, std::vector<Degree>>& concepts() const { return concepts_; }
  const std::map<std::string, std::vector<Degree>>& roles() const { return roles_; }
  const std::map<std::string, std::size_t>& individuals() const { return individuals_; }

  std::string to_string() const;

 private:
  std::size_t size_;
  std::map<std::string, std::vector<Degree>> concepts_;
  std::map<std::string, std::vector<Degree>> roles_;
  std::map<std::string, std::size_t> individuals_;
};

Degree eval_concept(const FuzzyInterpretation& i, const Concept& c, std::size_t e);

// Description of the first axiom or assertion the interpretation violates.
std::optional<std::string> first_violation(const FuzzyInterpretation& i, const KnowledgeBase& kb);
bool satisfies_kb(const FuzzyInterpretation& i, const KnowledgeBase& kb);

// KB degrees, their complements, {0, 0.5, 1}, and the midpoint of every pair
// of neighbouring values so strict bounds can be met.
std::vector<Degree> default_grid(const KnowledgeBase& kb);

struct SearchOptions {
  std::size_t max_domain = 3;
  std::vector<Degree> grid;  // empty: default_grid(kb)
  std::size_t budget = 2'000'000;
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<FuzzyInterpretation> model;
  std::size_t steps = 0;
};

// Domain sizes ascending, then individual placements, then degree assignments
// in grid order; the first model found is returned.
SearchResult search_model(const KnowledgeBase& kb, const SearchOptions& options = {});

}  // namespace fdl
