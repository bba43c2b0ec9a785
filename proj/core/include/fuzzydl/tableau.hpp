// Completion-forest tableau for fuzzy SI, SHIN and SHIN with general
// inclusions. A Forest is a plain value: the solver copies it at every choice
// point and backtracks by restoring the copy.
#pragma once

#include "fuzzydl/degree.hpp"
#include "fuzzydl/kb.hpp"
#include "fuzzydl/oracle.hpp"
#include "fuzzydl/syntax.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fdl {

struct ConceptTriple {
  Concept expr;
  SignedBound bound;

  friend bool operator==(const ConceptTriple&, const ConceptTriple&) = default;
  friend auto operator<=>(const ConceptTriple& a, const ConceptTriple& b) {
    if (auto c = a.expr <=> b.expr; c != 0) return c;
    return a.bound <=> b.bound;
  }
  std::string to_string() const;
};

struct RoleTriple {
  Role role;
  SignedBound bound;

  friend bool operator==(const RoleTriple&, const RoleTriple&) = default;
  friend auto operator<=>(const RoleTriple& a, const RoleTriple& b) {
    if (auto c = a.role <=> b.role; c != 0) return c;
    return a.bound <=> b.bound;
  }
  std::string to_string() const;
};

enum class NodeId : std::uint32_t {};
inline std::uint32_t index(NodeId id) { return static_cast<std::uint32_t>(id); }

using ConceptLabel = std::set<ConceptTriple>;
using RoleLabel = std::set<RoleTriple>;

struct Node {
  NodeId id{};
  bool root = false;
  std::string individual;  // roots only
  std::optional<NodeId> parent;
  std::optional<NodeId> merged_into;  // roots removed by a merge
  ConceptLabel label;
  std::set<NodeId> out;
  std::set<NodeId> in;
};

// Fixed per solve: which rules are active and the data the GCI rule needs.
struct ForestConfig {
  Mode mode = Mode::SI;
  RoleHierarchy hierarchy;
  std::vector<Gci> gcis;  // NNF, GCI mode only
  RelativeDegrees relative;
  Degree offset;
};

enum class BlockKind : std::uint8_t { None, Direct, Indirect };

struct BlockStatus {
  BlockKind kind = BlockKind::None;
  std::optional<NodeId> blocker;  // Direct only
  bool dead = false;              // cut off by a merge; ignored by every rule

  bool blocked() const { return kind != BlockKind::None; }
  friend bool operator==(const BlockStatus&, const BlockStatus&) = default;
};

struct Neighbour {
  NodeId node;
  SignedBound bound;
};

class Forest {
 public:
  explicit Forest(std::shared_ptr<const ForestConfig> config);

  const ForestConfig& config() const { return *config_; }
  Mode mode() const { return config_->mode; }

  NodeId add_root(const std::string& individual);
  NodeId add_child(NodeId parent, const RoleTriple& edge);
  std::optional<NodeId> root_of(const std::string& individual) const;

  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(index(id)); }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::string node_name(NodeId id) const;

  bool has(NodeId x, const ConceptTriple& t) const { return node(x).label.count(t) > 0; }
  // Some triple on the same concept is at least as strong as t.
  bool implied(NodeId x, const ConceptTriple& t) const;
  bool add(NodeId x, const ConceptTriple& t);
  bool add_edge(NodeId from, NodeId to, const RoleTriple& t);
  // Null when no edge was ever created between the two nodes.
  const RoleLabel* edge(NodeId from, NodeId to) const;
  const std::map<std::pair<NodeId, NodeId>, RoleLabel>& edges() const { return edges_; }

  bool distinct(NodeId a, NodeId b) const;
  void set_distinct(NodeId a, NodeId b);
  const std::set<std::pair<NodeId, NodeId>>& inequalities() const { return distinct_; }

  // Every (y, bound) such that an edge triple relates x to y through a
  // sub-role of r, read in either direction.
  std::vector<Neighbour> neighbours(NodeId x, const Role& r) const;
  // Neighbours whose bound conjugates with probe, deduplicated, ascending.
  std::vector<NodeId> conjugated_neighbours(NodeId x, const Role& r, const SignedBound& probe) const;
  // Neighbours connected with exactly this bound.
  std::vector<NodeId> neighbours_with(NodeId x, const Role& r, const SignedBound& bound) const;
  // Neighbours connected with a bound at least as strong as this one.
  std::vector<NodeId> neighbours_implying(NodeId x, const Role& r, const SignedBound& bound) const;

  std::vector<BlockStatus> blocking() const;
  bool is_ancestor(NodeId ancestor, NodeId of) const;

  // Merges y into z for merging rules on node x.
  void merge_into_neighbour(NodeId x, NodeId y, NodeId z);
  void merge_roots(NodeId y, NodeId z);

  // `node <id> [root] {...}` and `edge <a> -> <b> {...}` lines.
  std::string dump() const;

 private:
  std::shared_ptr<const ForestConfig> config_;
  std::vector<Node> nodes_;
  std::map<std::pair<NodeId, NodeId>, RoleLabel> edges_;
  std::set<std::pair<NodeId, NodeId>> distinct_;
  std::map<std::string, NodeId> roots_;
};

// Some k members are pairwise distinct.
bool has_distinct_subset(const Forest& f, const std::vector<NodeId>& members, std::size_t k);

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Clash {
  NodeId node;
  std::string description;
};

std::optional<Clash> find_clash(const Forest& f);
std::optional<Clash> find_clash(const Forest& f, const std::vector<BlockStatus>& status);

struct AddTriple {
  NodeId node;
  ConceptTriple triple;
};

struct MergeNodes {
  NodeId x;  // node carrying the restriction; unused for root merges
  NodeId from;
  NodeId into;
  bool roots = false;
};

using Alternative = std::variant<AddTriple, MergeNodes>;

struct ChoicePoint {
  std::string rule;
  NodeId node;
  std::string subject;
  std::vector<Alternative> alternatives;
};

std::string describe(const Forest& f, const Alternative& a);
void apply_alternative(Forest& f, const Alternative& a);

struct Trace {
  bool enabled = false;
  std::vector<std::string> lines;
  void add(std::string line) {
    if (enabled) lines.push_back(std::move(line));
  }
};

struct RuleContext {
  std::size_t node_budget = 100'000;
  std::size_t created = 0;  // generated nodes across all branches
  Trace* trace = nullptr;
  std::vector<BlockStatus> last_status;  // for block/unblock trace events
};

struct Expansion {
  enum class Kind : std::uint8_t { Complete, Clash, Choice } kind = Kind::Complete;
  std::optional<Clash> clash;
  std::optional<ChoicePoint> choice;
};

// Applies deterministic rules until a clash, a choice point or completion.
// Throws ResourceLimit when the forest outgrows the node budget.
Expansion apply_rules(Forest& f, RuleContext& ctx);

struct SolverOptions {
  std::size_t node_budget = 100'000;
  bool trace = false;
};

struct SolverStats {
  std::size_t nodes = 0;
  std::size_t branches = 0;
  std::size_t backtracks = 0;
};

struct SolveResult {
  bool consistent = false;
  // Complete clash-free forest when consistent, else the first clashing one.
  Forest forest;
  std::optional<Clash> first_clash;
  std::vector<std::string> trace;
  SolverStats stats;
};

// Builds the tableau input (mode, unfolding, normalization) and the initial
// forest for a KB. Throws KbError.
struct Prepared {
  std::shared_ptr<const ForestConfig> config;
  TBox unfolded;  // SI and SHIN: the unfolded TBox used for expansion
  ABox abox;      // what the initial forest encodes
  Forest initial;
};
Prepared prepare(const KnowledgeBase& kb, Mode requested = Mode::Auto);

SolveResult solve(Forest initial, const SolverOptions& options = {});
SolveResult solve(const KnowledgeBase& kb, Mode requested = Mode::Auto, const SolverOptions& options = {});

class NotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Finite model read off a complete clash-free SI forest. Throws NotApplicable
// for other modes.
FuzzyInterpretation extract_model(const Forest& f, const KnowledgeBase& kb, const TBox& unfolded);

}  // namespace fdl
