// Roles and concept descriptions. Concepts are interned: two structurally
// equal concepts share one node, so equality and ordering are by id.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace fdl {

class Role {
 public:
  Role() = default;
  explicit Role(std::string name, bool inverted = false)
      : name_(std::move(name)), inverted_(inverted) {}

  const std::string& name() const { return name_; }
  bool inverted() const { return inverted_; }
  Role inverse() const { return Role(name_, !inverted_); }
  std::string to_string() const { return inverted_ ? name_ + "-" : name_; }

  friend bool operator==(const Role&, const Role&) = default;
  friend auto operator<=>(const Role&, const Role&) = default;

 private:
  std::string name_;
  bool inverted_ = false;
};

inline Role inv(const Role& r) { return r.inverse(); }

enum class ConceptKind : std::uint8_t {
  Top,
  Bottom,
  Name,
  Not,
  And,
  Or,
  Exists,
  Forall,
  AtLeast,
  AtMost,
};

namespace detail {
struct ConceptNode;
}

class RoleHierarchy;

class Concept {
 public:
  // Default-constructed concepts are Top.
  Concept();

  static Concept top();
  static Concept bottom();
  static Concept name(std::string id);
  static Concept negation(Concept c);
  static Concept conjunction(Concept a, Concept b);
  static Concept disjunction(Concept a, Concept b);
  static Concept exists(Role r, Concept filler);
  static Concept forall(Role r, Concept filler);
  static Concept at_least(std::uint32_t n, Role r);
  static Concept at_most(std::uint32_t n, Role r);

  ConceptKind kind() const;
  std::uint32_t id() const;
  // Name only.
  const std::string& name() const;
  // Not: the negated concept. Exists/Forall: the filler.
  Concept operand() const;
  // And/Or operands.
  Concept left() const;
  Concept right() const;
  // Exists/Forall/AtLeast/AtMost.
  const Role& role() const;
  std::uint32_t cardinality() const;

  bool is_quantifier() const { return kind() == ConceptKind::Exists || kind() == ConceptKind::Forall; }
  bool is_number_restriction() const { return kind() == ConceptKind::AtLeast || kind() == ConceptKind::AtMost; }

  // Text in the KB surface syntax; binary constructors are parenthesised.
  std::string to_string() const;

  friend bool operator==(const Concept& a, const Concept& b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b) { return a.id() <=> b.id(); }

 private:
  explicit Concept(const detail::ConceptNode* node) : node_(node) {}
  const detail::ConceptNode* node_;
  friend class ConceptTable;
};

Concept nnf(const Concept& c);
// NNF of the complement of c.
Concept nnf_negation(const Concept& c);

// Closure under sub-concepts and under quantifier instantiation along the
// role hierarchy: if QS.C is present and R is a sub-role of S, QR.C is added.
std::set<Concept> sub_closure(const Concept& c, const RoleHierarchy& hierarchy);

// Constructor nesting depth; names, top and bottom have depth 0.
std::size_t depth(const Concept& c);
std::size_t size(const Concept& c);
void collect_names(const Concept& c, std::set<std::string>& out);
void collect_roles(const Concept& c, std::set<std::string>& out);
bool has_number_restriction(const Concept& c);

}  // namespace fdl

template <>
struct std::hash<fdl::Concept> {
  std::size_t operator()(const fdl::Concept& c) const noexcept { return std::hash<std::uint32_t>{}(c.id()); }
};

template <>
struct std::hash<fdl::Role> {
  std::size_t operator()(const fdl::Role& r) const noexcept {
    return std::hash<std::string>{}(r.name()) ^ static_cast<std::size_t>(r.inverted());
  }
};
