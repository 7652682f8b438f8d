// Hereditarily finite sets kept in an append-only interned store.
// Every node is fully collapsed at creation, so two ids are equal
// exactly when they encode the same set.
#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pcsf {

struct SetNode {
  std::uint32_t id = 0;
  friend bool operator==(const SetNode&, const SetNode&) = default;
};

struct SetNodeHash {
  std::size_t operator()(SetNode n) const noexcept {
    return static_cast<std::size_t>(n.id) * 0x9e3779b97f4a7c15ull;
  }
};

// Thrown when interning would exceed the configured node budget.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SetStore {
public:
  SetStore();

  // The empty set is interned at construction and always has id 0.
  SetNode empty() const { return SetNode{0}; }

  // Normalizes (sorts, removes duplicates) and returns the unique node
  // with exactly these children. Existing inputs only; child ids must
  // already live in this store.
  SetNode intern(std::vector<SetNode> children);

  std::span<const SetNode> children(SetNode n) const;
  std::size_t card(SetNode n) const { return children(n).size(); }
  std::uint32_t rank(SetNode n) const;

  // Number of nodes strictly below n, i.e. card of the transitive closure.
  std::uint64_t tc_size(SetNode n) const;

  bool member(SetNode x, SetNode s) const;
  SetNode union_of(SetNode a);
  SetNode difference(SetNode a, SetNode b);

  // Canonical order: rank first, then cardinality, then the child
  // sequences compared largest-first. Total on stored nodes; <0, 0, >0.
  int compare(SetNode a, SetNode b) const;

  std::size_t size() const;

  std::size_t node_cap() const { return cap_; }
  void set_node_cap(std::size_t cap) { cap_ = cap; }

private:
  struct Node {
    std::vector<SetNode> kids;  // ascending in canonical order, unique
    std::uint32_t rnk = 0;
    mutable std::uint64_t tc = kNoTc;
  };
  static constexpr std::uint64_t kNoTc = ~0ull;

  const Node& at(SetNode n) const;

  std::deque<Node> nodes_;
  std::unordered_map<std::string, std::uint32_t> index_;  // packed child ids -> id
  std::size_t cap_ = 1'000'000;
  mutable std::mutex write_mu_;  // interning is the only mutation
};

// A set presented as an explicit graph: numeric vertices, edges running
// from each vertex down to its elements. Valid when the root is the only
// vertex without a parent, every edge (a,b) has a > b, and every vertex
// is mentioned in the vertex list.
struct ExplicitDag {
  std::vector<std::uint64_t> vertices;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::uint64_t root = 0;
};

enum class DagFault {
  Malformed,          // unparsable text form
  EdgeEndpointUnknown,
  EdgeNotDescending,  // covers cycles as well
  RootMissing,
  RootHasParent,
  OrphanVertex,       // a second parentless vertex
  Unreachable,
  SingletonRoot,      // choose_max on a root-only graph
};

struct dag_error : std::runtime_error {
  DagFault fault;
  dag_error(DagFault f, const std::string& msg)
      : std::runtime_error(msg), fault(f) {}
};

const char* dag_fault_name(DagFault f);

// Throws dag_error naming the first violated condition.
void validate_dag(const ExplicitDag& g);

// Validates, then folds g into the store bottom-up (ranks ascending),
// merging vertices that encode the same set along the way.
SetNode import_dag(SetStore& store, const ExplicitDag& g);

// True iff the two graphs encode the same set. Memoized pairwise vertex
// tests; at most |V_g| * |V_h| of them. Independent of any SetStore.
bool bisimilar(const ExplicitDag& g, const ExplicitDag& h);

// Compact graph for n: vertices 0..k relabeled in canonical order, so
// children always precede parents and the root carries the top label.
ExplicitDag export_dag(const SetStore& store, SetNode n);

// Sub-graph hanging off the largest non-root vertex. Deliberately
// label-sensitive: bisimilar inputs may yield non-bisimilar outputs.
ExplicitDag choose_max(const ExplicitDag& g);

// Text form: one "id: child child ..." line per vertex plus a final
// "root: id" line. '#' starts a comment, blank lines are skipped, and
// every id used as a child needs its own vertex line.
ExplicitDag parse_dag_text(const std::string& text);
std::string dag_to_text(const ExplicitDag& g);

std::string dag_to_dot(const ExplicitDag& g);
std::string to_dot(const SetStore& store, SetNode n);

// von Neumann numeral: n = {0, 1, ..., n-1}.
SetNode numeral(SetStore& store, unsigned n);

// Kuratowski pair {{a}, {a,b}}.
SetNode kpair(SetStore& store, SetNode a, SetNode b);

}  // namespace pcsf
