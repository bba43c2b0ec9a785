// Knowledge bases: TBox, RBox and fuzzy ABox, plus the preprocessing that
// turns them into tableau input (unfolding, role closure, GCI normalization).
#pragma once

#include "fuzzydl/degree.hpp"
#include "fuzzydl/diagnostics.hpp"
#include "fuzzydl/syntax.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fdl {

enum class DefinitionKind : std::uint8_t { Subsumed, Equivalent };

struct Definition {
  std::string name;
  DefinitionKind kind = DefinitionKind::Equivalent;
  Concept body;
  friend bool operator==(const Definition&, const Definition&) = default;
};

struct Gci {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const Gci&, const Gci&) = default;
};

struct TBox {
  std::vector<Definition> definitions;
  std::vector<Gci> gcis;
  bool empty() const { return definitions.empty() && gcis.empty(); }
  friend bool operator==(const TBox&, const TBox&) = default;
};

struct RoleInclusion {
  Role sub;
  Role super;
  friend bool operator==(const RoleInclusion&, const RoleInclusion&) = default;
};

struct RBox {
  std::vector<std::string> transitive;
  std::vector<RoleInclusion> inclusions;
  bool empty() const { return transitive.empty() && inclusions.empty(); }
  friend bool operator==(const RBox&, const RBox&) = default;
};

struct ConceptAssertion {
  std::string individual;
  Concept expr;
  SignedBound bound;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
  std::string from;
  std::string to;
  Role role;
  SignedBound bound;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

struct Inequality {
  std::string first;
  std::string second;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;
std::string to_string(const Assertion& a);
SignedBound bound_of(const Assertion& a);
Assertion with_bound(const Assertion& a, SignedBound bound);

struct ABox {
  std::vector<ConceptAssertion> concepts;
  std::vector<RoleAssertion> roles;
  std::vector<Inequality> inequalities;

  bool empty() const { return concepts.empty() && roles.empty() && inequalities.empty(); }
  void add(const Assertion& a);
  // Individuals in order of first mention.
  std::vector<std::string> individuals() const;
  friend bool operator==(const ABox&, const ABox&) = default;
};

struct KnowledgeBase {
  TBox tbox;
  RBox rbox;
  ABox abox;
  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

  std::set<std::string> concept_names() const;
  std::set<std::string> role_names() const;
  std::set<std::string> all_names() const;
};

// Reflexive-transitive, inverse-closed role inclusion relation together with
// the inverse-closed set of transitive roles.
class RoleHierarchy {
 public:
  RoleHierarchy() = default;

  // sub is a sub-role of super under the reflexive-transitive closure.
  bool subsumed(const Role& sub, const Role& super) const;
  bool transitive(const Role& r) const;
  // No sub-role of r (r included) is transitive.
  bool simple(const Role& r) const;

  // Every mentioned role and its inverse, sorted.
  const std::vector<Role>& roles() const { return roles_; }
  std::vector<Role> sub_roles(const Role& super) const;
  std::vector<Role> transitive_sub_roles(const Role& super) const;
  bool has_proper_inclusions() const { return proper_inclusions_; }

  friend RoleHierarchy hierarchy_closure(const RBox& rbox, const std::set<std::string>& extra_roles);

 private:
  std::vector<Role> roles_;
  std::map<Role, std::set<Role>> supers_;
  std::set<Role> transitive_;
  bool proper_inclusions_ = false;
};

RoleHierarchy hierarchy_closure(const RBox& rbox, const std::set<std::string>& extra_roles = {});

enum class KbErrorKind { CyclicTBox, DuplicateDefinition, Mode };

class KbError : public std::runtime_error {
 public:
  KbError(KbErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  KbErrorKind kind() const { return kind_; }

 private:
  KbErrorKind kind_;
};

bool is_unfoldable(const TBox& tbox);

// Rewrites each A ⊑ C into A ≡ A' ⊓ C with a fresh A' (no clash with
// reserved names) and checks acyclicity. Throws KbError.
TBox unfold(const TBox& tbox, const std::set<std::string>& reserved = {});

// Substitutes defined names by their bodies; tbox must come from unfold().
Concept expand(const Concept& c, const TBox& unfolded);
ABox expand(const ABox& abox, const TBox& unfolded);

// Every definition and GCI as a list of inclusions.
std::vector<Gci> as_gcis(const TBox& tbox);

std::vector<Diagnostic> validate(const KnowledgeBase& kb);
std::vector<Concept> non_simple_number_restrictions(const Concept& c, const RoleHierarchy& hierarchy);
Diagnostic non_simple_diagnostic(const Concept& restriction);

enum class Mode : std::uint8_t { Auto, SI, SHIN, GCI };
std::string_view to_string(Mode m);

struct KbFeatures {
  bool number_restrictions = false;
  bool role_inclusions = false;
  bool inequalities = false;
  bool needs_gci = false;
};
KbFeatures features_of(const KnowledgeBase& kb);

// Resolves Auto and rejects explicit modes the KB does not fit. Throws KbError.
Mode select_mode(const KnowledgeBase& kb, Mode requested);

// {0, 0.5, 1} together with every assertion degree and its complement.
std::set<Degree> degree_support(const ABox& abox);
// Smallest positive difference between two members.
Degree minimum_gap(const std::set<Degree>& degrees);

struct RelativeDegrees {
  std::set<Degree> xs;
  friend bool operator==(const RelativeDegrees&, const RelativeDegrees&) = default;
};

// Offset used to turn strict bounds into non-strict ones in GCI mode.
Degree gci_offset(const ABox& abox);

// Replaces > n by >= n+ell and < n by <= n-ell, and collects the relative
// degree set from the normalized degrees.
std::pair<ABox, RelativeDegrees> normalize_for_gci(const ABox& abox, const Degree& ell);

}  // namespace fdl
