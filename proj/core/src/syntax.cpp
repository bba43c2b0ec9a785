#include "fuzzydl/syntax.hpp"

#include "fuzzydl/kb.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fdl {

namespace detail {

struct ConceptNode {
  ConceptKind kind = ConceptKind::Top;
  std::uint32_t id = 0;
  std::string name;
  const ConceptNode* first = nullptr;
  const ConceptNode* second = nullptr;
  Role role;
  std::uint32_t cardinality = 0;
};

}  // namespace detail

class ConceptTable {
 public:
  static ConceptTable& instance() {
    static ConceptTable table;
    return table;
  }

  Concept make(ConceptKind kind, std::string name, const detail::ConceptNode* first,
               const detail::ConceptNode* second, Role role, std::uint32_t cardinality) {
    Key key{kind, name, first ? first->id : 0, second ? second->id : 0, role.name(), role.inverted(), cardinality};
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return Concept(it->second);
    auto& node = nodes_.emplace_back();
    node.kind = kind;
    node.id = static_cast<std::uint32_t>(nodes_.size() - 1);
    node.name = std::move(name);
    node.first = first;
    node.second = second;
    node.role = std::move(role);
    node.cardinality = cardinality;
    index_.emplace(std::move(key), &node);
    return Concept(&node);
  }

  static const detail::ConceptNode* node(const Concept& c) { return c.node_; }

 private:
  ConceptTable() { make(ConceptKind::Top, {}, nullptr, nullptr, {}, 0); }

  using Key = std::tuple<ConceptKind, std::string, std::uint32_t, std::uint32_t, std::string, bool, std::uint32_t>;
  std::mutex mutex_;
  std::deque<detail::ConceptNode> nodes_;
  std::map<Key, const detail::ConceptNode*> index_;
};

namespace {

const detail::ConceptNode* node_of(const Concept& c) { return ConceptTable::node(c); }

Concept make(ConceptKind kind, std::string name, const Concept* a, const Concept* b, Role role, std::uint32_t n) {
  return ConceptTable::instance().make(kind, std::move(name), a ? node_of(*a) : nullptr, b ? node_of(*b) : nullptr,
                                       std::move(role), n);
}

}  // namespace

Concept::Concept() : Concept(top()) {}

Concept Concept::top() { return make(ConceptKind::Top, {}, nullptr, nullptr, {}, 0); }
Concept Concept::bottom() { return make(ConceptKind::Bottom, {}, nullptr, nullptr, {}, 0); }
Concept Concept::name(std::string id) { return make(ConceptKind::Name, std::move(id), nullptr, nullptr, {}, 0); }
Concept Concept::negation(Concept c) { return make(ConceptKind::Not, {}, &c, nullptr, {}, 0); }
Concept Concept::conjunction(Concept a, Concept b) { return make(ConceptKind::And, {}, &a, &b, {}, 0); }
Concept Concept::disjunction(Concept a, Concept b) { return make(ConceptKind::Or, {}, &a, &b, {}, 0); }
Concept Concept::exists(Role r, Concept filler) { return make(ConceptKind::Exists, {}, &filler, nullptr, std::move(r), 0); }
Concept Concept::forall(Role r, Concept filler) { return make(ConceptKind::Forall, {}, &filler, nullptr, std::move(r), 0); }
Concept Concept::at_least(std::uint32_t n, Role r) { return make(ConceptKind::AtLeast, {}, nullptr, nullptr, std::move(r), n); }
Concept Concept::at_most(std::uint32_t n, Role r) { return make(ConceptKind::AtMost, {}, nullptr, nullptr, std::move(r), n); }

ConceptKind Concept::kind() const { return node_->kind; }
std::uint32_t Concept::id() const { return node_->id; }
const std::string& Concept::name() const { return node_->name; }
Concept Concept::operand() const { return Concept(node_->first); }
Concept Concept::left() const { return Concept(node_->first); }
Concept Concept::right() const { return Concept(node_->second); }
const Role& Concept::role() const { return node_->role; }
std::uint32_t Concept::cardinality() const { return node_->cardinality; }

std::string Concept::to_string() const {
  switch (kind()) {
    case ConceptKind::Top: return "top";
    case ConceptKind::Bottom: return "bottom";
    case ConceptKind::Name: return name();
    case ConceptKind::Not: return "not " + operand().to_string();
    case ConceptKind::And: return "(" + left().to_string() + " and " + right().to_string() + ")";
    case ConceptKind::Or: return "(" + left().to_string() + " or " + right().to_string() + ")";
    case ConceptKind::Exists: return "some " + role().to_string() + "." + operand().to_string();
    case ConceptKind::Forall: return "all " + role().to_string() + "." + operand().to_string();
    case ConceptKind::AtLeast: return ">= " + std::to_string(cardinality()) + " " + role().to_string();
    case ConceptKind::AtMost: return "<= " + std::to_string(cardinality()) + " " + role().to_string();
  }
  return "?";
}

Concept nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Name:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      return c;
    case ConceptKind::Not: return nnf_negation(c.operand());
    case ConceptKind::And: return Concept::conjunction(nnf(c.left()), nnf(c.right()));
    case ConceptKind::Or: return Concept::disjunction(nnf(c.left()), nnf(c.right()));
    case ConceptKind::Exists: return Concept::exists(c.role(), nnf(c.operand()));
    case ConceptKind::Forall: return Concept::forall(c.role(), nnf(c.operand()));
  }
  return c;
}

Concept nnf_negation(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top: return Concept::bottom();
    case ConceptKind::Bottom: return Concept::top();
    case ConceptKind::Name: return Concept::negation(c);
    case ConceptKind::Not: return nnf(c.operand());
    case ConceptKind::And: return Concept::disjunction(nnf_negation(c.left()), nnf_negation(c.right()));
    case ConceptKind::Or: return Concept::conjunction(nnf_negation(c.left()), nnf_negation(c.right()));
    case ConceptKind::Exists: return Concept::forall(c.role(), nnf_negation(c.operand()));
    case ConceptKind::Forall: return Concept::exists(c.role(), nnf_negation(c.operand()));
    case ConceptKind::AtMost: return Concept::at_least(c.cardinality() + 1, c.role());
    case ConceptKind::AtLeast:
      if (c.cardinality() == 0) return Concept::bottom();
      return Concept::at_most(c.cardinality() - 1, c.role());
  }
  return c;
}

std::set<Concept> sub_closure(const Concept& c, const RoleHierarchy& hierarchy) {
  std::set<Concept> out;
  std::vector<Concept> work{c};
  while (!work.empty()) {
    Concept cur = work.back();
    work.pop_back();
    if (!out.insert(cur).second) continue;
    switch (cur.kind()) {
      case ConceptKind::Not: work.push_back(cur.operand()); break;
      case ConceptKind::And:
      case ConceptKind::Or:
        work.push_back(cur.left());
        work.push_back(cur.right());
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        work.push_back(cur.operand());
        bool is_exists = cur.kind() == ConceptKind::Exists;
        for (const Role& r : hierarchy.sub_roles(cur.role())) {
          work.push_back(is_exists ? Concept::exists(r, cur.operand()) : Concept::forall(r, cur.operand()));
        }
        break;
      }
      default: break;
    }
  }
  return out;
}

std::size_t depth(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return 1 + depth(c.operand());
    case ConceptKind::And:
    case ConceptKind::Or:
      return 1 + std::max(depth(c.left()), depth(c.right()));
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      return 1;
    default: return 0;
  }
}

std::size_t size(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return 1 + size(c.operand());
    case ConceptKind::And:
    case ConceptKind::Or:
      return 1 + size(c.left()) + size(c.right());
    default: return 1;
  }
}

void collect_names(const Concept& c, std::set<std::string>& out) {
  switch (c.kind()) {
    case ConceptKind::Name: out.insert(c.name()); break;
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      collect_names(c.operand(), out);
      break;
    case ConceptKind::And:
    case ConceptKind::Or:
      collect_names(c.left(), out);
      collect_names(c.right(), out);
      break;
    default: break;
  }
}

void collect_roles(const Concept& c, std::set<std::string>& out) {
  switch (c.kind()) {
    case ConceptKind::Not: collect_roles(c.operand(), out); break;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      out.insert(c.role().name());
      collect_roles(c.operand(), out);
      break;
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      out.insert(c.role().name());
      break;
    case ConceptKind::And:
    case ConceptKind::Or:
      collect_roles(c.left(), out);
      collect_roles(c.right(), out);
      break;
    default: break;
  }
}

bool has_number_restriction(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      return true;
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return has_number_restriction(c.operand());
    case ConceptKind::And:
    case ConceptKind::Or:
      return has_number_restriction(c.left()) || has_number_restriction(c.right());
    default: return false;
  }
}

}  // namespace fdl
