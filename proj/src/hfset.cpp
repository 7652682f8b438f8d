#include "pcsf/hfset.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pcsf {

namespace {

std::string pack_ids(const std::vector<SetNode>& kids) {
  std::string key;
  key.resize(kids.size() * sizeof(std::uint32_t));
  for (std::size_t i = 0; i < kids.size(); ++i)
    std::memcpy(key.data() + i * sizeof(std::uint32_t), &kids[i].id,
                sizeof(std::uint32_t));
  return key;
}

}  // namespace

SetStore::SetStore() {
  nodes_.push_back(Node{});  // id 0 is the empty set
  nodes_[0].tc = 0;
  index_.emplace(std::string(), 0);
}

const SetStore::Node& SetStore::at(SetNode n) const {
  if (n.id >= nodes_.size())
    throw std::invalid_argument("set node id " + std::to_string(n.id) +
                                " is not in this store");
  return nodes_[n.id];
}

std::span<const SetNode> SetStore::children(SetNode n) const {
  const Node& nd = at(n);
  return {nd.kids.data(), nd.kids.size()};
}

std::uint32_t SetStore::rank(SetNode n) const { return at(n).rnk; }

int SetStore::compare(SetNode a, SetNode b) const {
  if (a == b) return 0;
  const Node& na = at(a);
  const Node& nb = at(b);
  if (na.rnk != nb.rnk) return na.rnk < nb.rnk ? -1 : 1;
  if (na.kids.size() != nb.kids.size())
    return na.kids.size() < nb.kids.size() ? -1 : 1;
  // Same rank and cardinality: compare child sequences largest-first.
  for (std::size_t i = na.kids.size(); i-- > 0;) {
    int c = compare(na.kids[i], nb.kids[i]);
    if (c != 0) return c;
  }
  return 0;  // not reached: equal children would have been interned once
}

SetNode SetStore::intern(std::vector<SetNode> children) {
  for (SetNode c : children) (void)at(c);
  std::sort(children.begin(), children.end(),
            [this](SetNode x, SetNode y) { return compare(x, y) < 0; });
  children.erase(std::unique(children.begin(), children.end()),
                 children.end());

  std::string key = pack_ids(children);
  std::lock_guard<std::mutex> lock(write_mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return SetNode{it->second};

  if (nodes_.size() >= cap_)
    throw capacity_error("set store is full (" + std::to_string(cap_) +
                         " nodes)");
  Node nd;
  std::uint32_t r = 0;
  for (SetNode c : children) r = std::max(r, nodes_[c.id].rnk + 1);
  nd.kids = std::move(children);
  nd.rnk = r;
  std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(std::move(nd));
  index_.emplace(std::move(key), id);
  return SetNode{id};
}

std::uint64_t SetStore::tc_size(SetNode n) const {
  const Node& nd = at(n);
  if (nd.tc != kNoTc) return nd.tc;
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{n.id};
  seen.insert(n.id);
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (SetNode c : nodes_[v].kids)
      if (seen.insert(c.id).second) stack.push_back(c.id);
  }
  nd.tc = seen.size() - 1;
  return nd.tc;
}

bool SetStore::member(SetNode x, SetNode s) const {
  for (SetNode c : children(s))
    if (c == x) return true;
  return false;
}

SetNode SetStore::union_of(SetNode a) {
  std::vector<SetNode> out;
  for (SetNode c : children(a))
    for (SetNode cc : children(c)) out.push_back(cc);
  return intern(std::move(out));
}

SetNode SetStore::difference(SetNode a, SetNode b) {
  std::vector<SetNode> out;
  for (SetNode c : children(a))
    if (!member(c, b)) out.push_back(c);
  return intern(std::move(out));
}

std::size_t SetStore::size() const {
  std::lock_guard<std::mutex> lock(write_mu_);
  return nodes_.size();
}

const char* dag_fault_name(DagFault f) {
  switch (f) {
    case DagFault::Malformed: return "Malformed";
    case DagFault::EdgeEndpointUnknown: return "EdgeEndpointUnknown";
    case DagFault::EdgeNotDescending: return "EdgeNotDescending";
    case DagFault::RootMissing: return "RootMissing";
    case DagFault::RootHasParent: return "RootHasParent";
    case DagFault::OrphanVertex: return "OrphanVertex";
    case DagFault::Unreachable: return "Unreachable";
    case DagFault::SingletonRoot: return "SingletonRoot";
  }
  return "?";
}

namespace {

[[noreturn]] void fail_dag(DagFault f, const std::string& msg) {
  throw dag_error(f, std::string(dag_fault_name(f)) + ": " + msg);
}

using Adjacency = std::map<std::uint64_t, std::vector<std::uint64_t>>;

// Children per vertex with duplicate edges collapsed.
Adjacency adjacency(const ExplicitDag& g) {
  Adjacency adj;
  for (std::uint64_t v : g.vertices) adj[v];
  for (auto [a, b] : g.edges) adj[a].push_back(b);
  for (auto& [v, kids] : adj) {
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  }
  return adj;
}

}  // namespace

void validate_dag(const ExplicitDag& g) {
  if (g.vertices.empty()) fail_dag(DagFault::RootMissing, "no vertices");
  std::set<std::uint64_t> verts(g.vertices.begin(), g.vertices.end());
  if (verts.size() != g.vertices.size())
    fail_dag(DagFault::Malformed, "duplicate vertex label");
  if (!verts.count(g.root))
    fail_dag(DagFault::RootMissing,
             "root " + std::to_string(g.root) + " is not a vertex");
  for (auto [a, b] : g.edges) {
    if (!verts.count(a) || !verts.count(b))
      fail_dag(DagFault::EdgeEndpointUnknown,
               "edge (" + std::to_string(a) + "," + std::to_string(b) +
                   ") leaves the vertex set");
    if (a <= b)
      fail_dag(DagFault::EdgeNotDescending,
               "edge (" + std::to_string(a) + "," + std::to_string(b) +
                   ") does not descend");
  }
  std::set<std::uint64_t> with_parent;
  for (auto [a, b] : g.edges) {
    if (b == g.root)
      fail_dag(DagFault::RootHasParent,
               "root has incoming edge from " + std::to_string(a));
    with_parent.insert(b);
  }
  for (std::uint64_t v : g.vertices)
    if (v != g.root && !with_parent.count(v))
      fail_dag(DagFault::OrphanVertex,
               "vertex " + std::to_string(v) + " has no parent");
  // Descending edges plus a single parentless vertex already force
  // reachability; this is a belt-and-braces pass.
  Adjacency adj = adjacency(g);
  std::set<std::uint64_t> seen{g.root};
  std::vector<std::uint64_t> stack{g.root};
  while (!stack.empty()) {
    std::uint64_t v = stack.back();
    stack.pop_back();
    for (std::uint64_t c : adj[v])
      if (seen.insert(c).second) stack.push_back(c);
  }
  for (std::uint64_t v : g.vertices)
    if (!seen.count(v))
      fail_dag(DagFault::Unreachable,
               "vertex " + std::to_string(v) + " unreachable from root");
}

SetNode import_dag(SetStore& store, const ExplicitDag& g) {
  validate_dag(g);
  Adjacency adj = adjacency(g);

  std::map<std::uint64_t, std::uint32_t> rk;
  for (auto& [v, kids] : adj) {  // ascending labels: children come first
    std::uint32_t r = 0;
    for (std::uint64_t c : kids) r = std::max(r, rk[c] + 1);
    rk[v] = r;
  }
  std::vector<std::uint64_t> order(g.vertices.begin(), g.vertices.end());
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return rk[a] != rk[b] ? rk[a] < rk[b] : a < b;
  });

  std::map<std::uint64_t, SetNode> node;
  for (std::uint64_t v : order) {
    std::vector<SetNode> kids;
    kids.reserve(adj[v].size());
    for (std::uint64_t c : adj[v]) kids.push_back(node.at(c));
    node[v] = store.intern(std::move(kids));
  }
  return node.at(g.root);
}

bool bisimilar(const ExplicitDag& g, const ExplicitDag& h) {
  validate_dag(g);
  validate_dag(h);
  Adjacency ag = adjacency(g);
  Adjacency ah = adjacency(h);

  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p)
        const noexcept {
      return std::hash<std::uint64_t>()(p.first * 0x9e3779b97f4a7c15ull ^
                                        p.second);
    }
  };
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, bool, PairHash>
      memo;

  std::function<bool(std::uint64_t, std::uint64_t)> same =
      [&](std::uint64_t a, std::uint64_t b) -> bool {
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const auto& ka = ag.at(a);
    const auto& kb = ah.at(b);
    bool ok = true;
    for (std::uint64_t ca : ka) {
      bool hit = false;
      for (std::uint64_t cb : kb)
        if (same(ca, cb)) {
          hit = true;
          break;
        }
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok)
      for (std::uint64_t cb : kb) {
        bool hit = false;
        for (std::uint64_t ca : ka)
          if (same(ca, cb)) {
            hit = true;
            break;
          }
        if (!hit) {
          ok = false;
          break;
        }
      }
    memo.emplace(key, ok);
    return ok;
  };
  return same(g.root, h.root);
}

ExplicitDag export_dag(const SetStore& store, SetNode n) {
  std::unordered_set<std::uint32_t> seen{n.id};
  std::vector<SetNode> reach{n};
  std::vector<SetNode> stack{n};
  while (!stack.empty()) {
    SetNode v = stack.back();
    stack.pop_back();
    for (SetNode c : store.children(v))
      if (seen.insert(c.id).second) {
        reach.push_back(c);
        stack.push_back(c);
      }
  }
  std::sort(reach.begin(), reach.end(),
            [&](SetNode a, SetNode b) { return store.compare(a, b) < 0; });

  std::unordered_map<std::uint32_t, std::uint64_t> label;
  for (std::size_t i = 0; i < reach.size(); ++i) label[reach[i].id] = i;

  ExplicitDag g;
  for (std::size_t i = 0; i < reach.size(); ++i) {
    g.vertices.push_back(i);
    for (SetNode c : store.children(reach[i]))
      g.edges.emplace_back(i, label.at(c.id));
  }
  g.root = label.at(n.id);  // always the top label: members rank below n
  return g;
}

ExplicitDag choose_max(const ExplicitDag& g) {
  validate_dag(g);
  if (g.vertices.size() == 1)
    fail_dag(DagFault::SingletonRoot, "no non-root vertex to pick");
  std::uint64_t pick = 0;
  bool found = false;
  for (std::uint64_t v : g.vertices)
    if (v != g.root && (!found || v > pick)) {
      pick = v;
      found = true;
    }
  Adjacency adj = adjacency(g);
  std::set<std::uint64_t> seen{pick};
  std::vector<std::uint64_t> stack{pick};
  while (!stack.empty()) {
    std::uint64_t v = stack.back();
    stack.pop_back();
    for (std::uint64_t c : adj[v])
      if (seen.insert(c).second) stack.push_back(c);
  }
  ExplicitDag out;
  out.root = pick;
  out.vertices.assign(seen.begin(), seen.end());
  for (auto [a, b] : g.edges)
    if (seen.count(a)) out.edges.emplace_back(a, b);
  return out;
}

ExplicitDag parse_dag_text(const std::string& text) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> lines;
  std::uint64_t root = 0;
  bool have_root = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;  // blank
    auto ctx = [&] { return " (line " + std::to_string(lineno) + ")"; };
    if (head == "root:") {
      std::uint64_t r;
      if (!(ls >> r)) fail_dag(DagFault::Malformed, "root line needs an id" + ctx());
      if (have_root) fail_dag(DagFault::Malformed, "second root line" + ctx());
      root = r;
      have_root = true;
      std::string extra;
      if (ls >> extra) fail_dag(DagFault::Malformed, "trailing tokens after root" + ctx());
      continue;
    }
    if (head.empty() || head.back() != ':')
      fail_dag(DagFault::Malformed, "expected 'id:' but saw '" + head + "'" + ctx());
    head.pop_back();
    std::uint64_t v;
    try {
      std::size_t used = 0;
      v = std::stoull(head, &used);
      if (used != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
      fail_dag(DagFault::Malformed, "bad vertex id '" + head + "'" + ctx());
    }
    if (lines.count(v))
      fail_dag(DagFault::Malformed,
               "vertex " + std::to_string(v) + " declared twice" + ctx());
    std::vector<std::uint64_t> kids;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        kids.push_back(std::stoull(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        fail_dag(DagFault::Malformed, "bad child id '" + tok + "'" + ctx());
      }
    }
    lines.emplace(v, std::move(kids));
  }
  if (!have_root) fail_dag(DagFault::Malformed, "missing root line");
  ExplicitDag g;
  g.root = root;
  for (auto& [v, kids] : lines) {
    g.vertices.push_back(v);
    for (std::uint64_t c : kids) {
      if (!lines.count(c))
        fail_dag(DagFault::EdgeEndpointUnknown,
                 "vertex " + std::to_string(c) +
                     " is used as a child but never declared");
      g.edges.emplace_back(v, c);
    }
  }
  return g;
}

std::string dag_to_text(const ExplicitDag& g) {
  Adjacency adj = adjacency(g);
  std::ostringstream out;
  for (auto it = adj.rbegin(); it != adj.rend(); ++it) {
    out << it->first << ":";
    for (std::uint64_t c : it->second) out << ' ' << c;
    out << '\n';
  }
  out << "root: " << g.root << '\n';
  return out.str();
}

std::string dag_to_dot(const ExplicitDag& g) {
  std::ostringstream out;
  out << "digraph hfs {\n";
  for (std::uint64_t v : g.vertices) {
    out << "  n" << v << " [label=\"" << v << "\"";
    if (v == g.root) out << " shape=doublecircle";
    out << "];\n";
  }
  for (auto [a, b] : g.edges) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const SetStore& store, SetNode n) {
  return dag_to_dot(export_dag(store, n));
}

SetNode numeral(SetStore& store, unsigned n) {
  std::vector<SetNode> below;
  SetNode cur = store.empty();
  for (unsigned i = 0; i < n; ++i) {
    below.push_back(cur);
    cur = store.intern(below);
  }
  return cur;
}

SetNode kpair(SetStore& store, SetNode a, SetNode b) {
  SetNode fst = store.intern({a});
  SetNode snd = store.intern({a, b});
  return store.intern({fst, snd});
}

}  // namespace pcsf
