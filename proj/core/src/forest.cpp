#include "fuzzydl/tableau.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fdl {

namespace {

std::string fraction(const Degree& d) {
  if (d.denominator() == 1) return std::to_string(d.numerator());
  return std::to_string(d.numerator()) + "/" + std::to_string(d.denominator());
}

std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// No degree in [0, 1] satisfies the bound.
bool unsatisfiable(const SignedBound& b) {
  switch (b.ineq) {
    case Ineq::Ge: return b.degree > Degree::one();
    case Ineq::Gt: return b.degree >= Degree::one();
    case Ineq::Le: return b.degree < Degree::zero();
    case Ineq::Lt: return b.degree <= Degree::zero();
  }
  return false;
}

}  // namespace

bool has_distinct_subset(const Forest& f, const std::vector<NodeId>& members, std::size_t k) {
  if (k == 0) return true;
  if (members.size() < k) return false;
  std::vector<NodeId> chosen;
  std::function<bool(std::size_t)> extend = [&](std::size_t start) {
    if (chosen.size() == k) return true;
    for (std::size_t i = start; i < members.size(); ++i) {
      if (members.size() - i < k - chosen.size()) return false;
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](NodeId c) { return f.distinct(c, members[i]); });
      if (!ok) continue;
      chosen.push_back(members[i]);
      if (extend(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return extend(0);
}

std::string ConceptTriple::to_string() const {
  return "<" + expr.to_string() + ", " + std::string(symbol(bound.ineq)) + ", " + bound.degree.to_string() + ">";
}

std::string RoleTriple::to_string() const {
  return "<" + role.to_string() + ", " + std::string(symbol(bound.ineq)) + ", " + bound.degree.to_string() + ">";
}

Forest::Forest(std::shared_ptr<const ForestConfig> config) : config_(std::move(config)) {}

NodeId Forest::add_root(const std::string& individual) {
  if (auto it = roots_.find(individual); it != roots_.end()) return it->second;
  auto id = static_cast<NodeId>(nodes_.size());
  Node n;
  n.id = id;
  n.root = true;
  n.individual = individual;
  nodes_.push_back(std::move(n));
  roots_.emplace(individual, id);
  return id;
}

NodeId Forest::add_child(NodeId parent, const RoleTriple& edge) {
  auto id = static_cast<NodeId>(nodes_.size());
  Node n;
  n.id = id;
  n.parent = parent;
  nodes_.push_back(std::move(n));
  add_edge(parent, id, edge);
  return id;
}

std::optional<NodeId> Forest::root_of(const std::string& individual) const {
  auto it = roots_.find(individual);
  if (it == roots_.end()) return std::nullopt;
  NodeId id = it->second;
  while (node(id).merged_into) id = *node(id).merged_into;
  return id;
}

std::string Forest::node_name(NodeId id) const {
  const Node& n = node(id);
  return n.root ? "x_" + n.individual : "x" + std::to_string(index(id));
}

bool Forest::implied(NodeId x, const ConceptTriple& t) const {
  if (trivially_true(t.bound)) return true;
  const auto& label = node(x).label;
  return std::any_of(label.begin(), label.end(),
                     [&](const ConceptTriple& s) { return s.expr == t.expr && implies(s.bound, t.bound); });
}

bool Forest::add(NodeId x, const ConceptTriple& t) { return nodes_.at(index(x)).label.insert(t).second; }

bool Forest::add_edge(NodeId from, NodeId to, const RoleTriple& t) {
  nodes_.at(index(from)).out.insert(to);
  nodes_.at(index(to)).in.insert(from);
  return edges_[{from, to}].insert(t).second;
}

const RoleLabel* Forest::edge(NodeId from, NodeId to) const {
  auto it = edges_.find({from, to});
  return it == edges_.end() ? nullptr : &it->second;
}

bool Forest::distinct(NodeId a, NodeId b) const { return distinct_.count(ordered(a, b)) > 0; }

void Forest::set_distinct(NodeId a, NodeId b) { distinct_.insert(ordered(a, b)); }

std::vector<Neighbour> Forest::neighbours(NodeId x, const Role& r) const {
  std::vector<Neighbour> out;
  const RoleHierarchy& h = config_->hierarchy;
  const Node& n = node(x);
  for (NodeId y : n.out)
    for (const auto& t : edges_.at({x, y}))
      if (h.subsumed(t.role, r)) out.push_back({y, t.bound});
  Role inverse = inv(r);
  for (NodeId y : n.in)
    for (const auto& t : edges_.at({y, x}))
      if (h.subsumed(t.role, inverse)) out.push_back({y, t.bound});
  return out;
}

std::vector<NodeId> Forest::conjugated_neighbours(NodeId x, const Role& r, const SignedBound& probe) const {
  std::vector<NodeId> out;
  for (const auto& nb : neighbours(x, r))
    if (conjugates(nb.bound, probe)) out.push_back(nb.node);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> Forest::neighbours_with(NodeId x, const Role& r, const SignedBound& bound) const {
  std::vector<NodeId> out;
  for (const auto& nb : neighbours(x, r))
    if (nb.bound == bound) out.push_back(nb.node);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> Forest::neighbours_implying(NodeId x, const Role& r, const SignedBound& bound) const {
  std::vector<NodeId> out;
  for (const auto& nb : neighbours(x, r))
    if (implies(nb.bound, bound)) out.push_back(nb.node);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Forest::is_ancestor(NodeId ancestor, NodeId of) const {
  std::optional<NodeId> cur = node(of).parent;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = node(*cur).parent;
  }
  return false;
}

std::vector<BlockStatus> Forest::blocking() const {
  std::vector<BlockStatus> status(nodes_.size());
  const bool pairwise = config_->mode != Mode::SI;
  auto edge_label = [&](NodeId from, NodeId to) {
    const RoleLabel* l = edge(from, to);
    return l ? *l : RoleLabel{};
  };
  for (const Node& n : nodes_) {
    BlockStatus& s = status[index(n.id)];
    if (n.root) {
      s.dead = n.merged_into.has_value();
      continue;
    }
    NodeId parent = *n.parent;
    const RoleLabel* in = edge(parent, n.id);
    if (status[index(parent)].dead || in == nullptr || in->empty()) {
      s.dead = true;
      s.kind = BlockKind::Indirect;
      continue;
    }
    if (status[index(parent)].blocked()) {
      s.kind = BlockKind::Indirect;
      continue;
    }
    if (!pairwise) {
      for (std::optional<NodeId> y = parent; y; y = node(*y).parent) {
        if (node(*y).label == n.label) {
          s = {BlockKind::Direct, *y, false};
          break;
        }
      }
      continue;
    }
    const Node& xp = node(parent);
    const RoleLabel& x_edge = *in;
    for (std::optional<NodeId> y = parent; y && !node(*y).root; y = node(*y).parent) {
      const Node& yn = node(*y);
      const Node& yp = node(*yn.parent);
      if (yn.label == n.label && yp.label == xp.label && edge_label(yp.id, yn.id) == x_edge) {
        s = {BlockKind::Direct, *y, false};
        break;
      }
    }
  }
  return status;
}

void Forest::merge_into_neighbour(NodeId x, NodeId y, NodeId z) {
  for (const auto& t : ConceptLabel(node(y).label)) add(z, t);

  RoleLabel triples;
  if (const RoleLabel* l = edge(x, y)) triples.insert(l->begin(), l->end());
  if (const RoleLabel* l = edge(y, x))
    for (const auto& t : *l) triples.insert({inv(t.role), t.bound});

  if (node(x).parent == z) {
    for (const auto& t : triples) add_edge(z, x, {inv(t.role), t.bound});
  } else {
    for (const auto& t : triples) add_edge(x, z, t);
  }

  if (auto it = edges_.find({x, y}); it != edges_.end()) it->second.clear();
  if (auto it = edges_.find({y, x}); it != edges_.end()) it->second.clear();
  if (node(y).parent == x && !edge(x, y)) {
    nodes_[index(x)].out.insert(y);
    nodes_[index(y)].in.insert(x);
    edges_[{x, y}];
  }

  for (const auto& [a, b] : std::set<std::pair<NodeId, NodeId>>(distinct_)) {
    if (a == y && b != z) set_distinct(b, z);
    if (b == y && a != z) set_distinct(a, z);
  }
}

void Forest::merge_roots(NodeId y, NodeId z) {
  for (const auto& t : ConceptLabel(node(y).label)) add(z, t);

  auto redirect = [&](NodeId id) { return id == y ? z : id; };
  std::vector<std::pair<std::pair<NodeId, NodeId>, RoleLabel>> moved;
  for (NodeId w : node(y).out) moved.push_back({{z, redirect(w)}, edges_.at({y, w})});
  for (NodeId w : node(y).in)
    if (w != y) moved.push_back({{redirect(w), z}, edges_.at({w, y})});

  for (NodeId w : std::set<NodeId>(node(y).out)) {
    edges_.erase({y, w});
    nodes_[index(w)].in.erase(y);
  }
  for (NodeId w : std::set<NodeId>(node(y).in)) {
    edges_.erase({w, y});
    nodes_[index(w)].out.erase(y);
  }
  nodes_[index(y)].out.clear();
  nodes_[index(y)].in.clear();

  for (const auto& [key, label] : moved)
    for (const auto& t : label) add_edge(key.first, key.second, t);

  for (Node& n : nodes_)
    if (n.parent == y) n.parent = z;

  for (const auto& [a, b] : std::set<std::pair<NodeId, NodeId>>(distinct_)) {
    if (a == y) set_distinct(b, z);
    if (b == y) set_distinct(a, z);
  }

  nodes_[index(y)].label.clear();
  nodes_[index(y)].merged_into = z;
}

std::string Forest::dump() const {
  std::ostringstream os;
  auto triples = [&](const auto& label, auto&& name) {
    os << "{";
    bool first = true;
    for (const auto& t : label) {
      os << (first ? "" : " ") << "⟨" << name(t) << "," << symbol(t.bound.ineq) << "," << fraction(t.bound.degree)
         << "⟩";
      first = false;
    }
    os << "}";
  };
  for (const Node& n : nodes_) {
    os << "node " << index(n.id) << (n.root ? " root " : " ");
    triples(n.label, [](const ConceptTriple& t) { return t.expr.to_string(); });
    os << "\n";
  }
  for (const auto& [key, label] : edges_) {
    os << "edge " << index(key.first) << " -> " << index(key.second) << " ";
    triples(label, [](const RoleTriple& t) { return t.role.to_string(); });
    os << "\n";
  }
  for (const Node& n : nodes_) {
    if (n.root) os << "# " << index(n.id) << " = " << n.individual << "\n";
    if (n.merged_into) os << "# " << index(n.id) << " merged into " << index(*n.merged_into) << "\n";
  }
  for (const auto& [a, b] : distinct_) os << "# " << index(a) << " != " << index(b) << "\n";
  return os.str();
}

std::optional<Clash> find_clash(const Forest& f) { return find_clash(f, f.blocking()); }

std::optional<Clash> find_clash(const Forest& f, const std::vector<BlockStatus>& status) {
  const RoleHierarchy& h = f.config().hierarchy;
  const bool counting = f.mode() != Mode::SI;

  for (const auto& [a, b] : f.inequalities())
    if (a == b) return Clash{a, f.node_name(a) + " is distinct from itself"};

  for (const Node& n : f.nodes()) {
    if (status[index(n.id)].dead) continue;
    const std::string where = f.node_name(n.id);
    for (auto it = n.label.begin(); it != n.label.end(); ++it) {
      const ConceptTriple& t = *it;
      const ConceptKind kind = t.expr.kind();
      bool top = kind == ConceptKind::Top || (kind == ConceptKind::AtLeast && t.expr.cardinality() == 0);
      if (unsatisfiable(t.bound) || (kind == ConceptKind::Bottom && !holds(t.bound.ineq, Degree::zero(), t.bound.degree)) ||
          (top && !holds(t.bound.ineq, Degree::one(), t.bound.degree)))
        return Clash{n.id, where + " holds " + t.to_string()};
      for (auto jt = std::next(it); jt != n.label.end() && jt->expr == t.expr; ++jt)
        if (conjugates(t.bound, jt->bound))
          return Clash{n.id, where + " holds " + t.to_string() + " and " + jt->to_string()};

      if (!counting) continue;
      if (kind == ConceptKind::AtMost && is_positive(t.bound.ineq)) {
        std::uint32_t p = t.expr.cardinality();
        auto members = f.conjugated_neighbours(n.id, t.expr.role(),
                                              {reflect(t.bound.ineq), neg_lukasiewicz(t.bound.degree)});
        if (has_distinct_subset(f, members, p + 1))
          return Clash{n.id, where + " holds " + t.to_string() + " with " + std::to_string(p + 1) +
                                 " distinct neighbours"};
      }
      if (kind == ConceptKind::AtLeast && is_negative(t.bound.ineq) && t.expr.cardinality() > 0) {
        std::uint32_t p = t.expr.cardinality();
        auto members = f.conjugated_neighbours(n.id, t.expr.role(), t.bound);
        if (has_distinct_subset(f, members, p))
          return Clash{n.id, where + " holds " + t.to_string() + " with " + std::to_string(p) +
                                 " distinct neighbours"};
      }
    }
  }

  for (const auto& [key, label] : f.edges()) {
    auto [a, b] = key;
    if (status[index(a)].dead || status[index(b)].dead || label.empty()) continue;
    RoleLabel combined = label;
    if (a != b) {
      if (a > b && f.edge(b, a)) continue;
      if (const RoleLabel* back = f.edge(b, a))
        for (const auto& t : *back) combined.insert({inv(t.role), t.bound});
    }
    if (a == b)
      for (const auto& t : label) combined.insert({inv(t.role), t.bound});
    const std::string where = "edge " + f.node_name(a) + " -> " + f.node_name(b);
    for (const auto& t : combined) {
      if (unsatisfiable(t.bound)) return Clash{a, where + " holds " + t.to_string()};
      if (!is_positive(t.bound.ineq)) continue;
      for (const auto& u : combined)
        if (is_negative(u.bound.ineq) && h.subsumed(t.role, u.role) && conjugates(t.bound, u.bound))
          return Clash{a, where + " holds " + t.to_string() + " and " + u.to_string()};
    }
  }
  return std::nullopt;
}

}  // namespace fdl
