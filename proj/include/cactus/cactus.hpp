#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cactus/digraph.hpp"

namespace cactus {

/// Bipartite tree encoding a cactus's block structure: one node per simple
/// cycle, one node per connecting point, an edge whenever the cycle contains
/// the connecting point. Cycle nodes are 0..cycle_count-1; connecting-point
/// nodes follow in ascending vertex-id order.
struct CactusTree {
  int cycle_count = 0;
  std::vector<int> connecting_points;  // sorted vertex ids
  std::vector<std::vector<int>> adjacency;

  int node_count() const { return cycle_count + static_cast<int>(connecting_points.size()); }
  bool is_cycle_node(int node) const { return node < cycle_count; }

  int cp_vertex(int node) const { return connecting_points.at(node - cycle_count); }

  std::optional<int> cp_node(int vertex) const {
    const auto it =
        std::lower_bound(connecting_points.begin(), connecting_points.end(), vertex);
    if (it == connecting_points.end() || *it != vertex) return std::nullopt;
    return cycle_count + static_cast<int>(it - connecting_points.begin());
  }

  friend bool operator==(const CactusTree&, const CactusTree&) = default;
};

/// Full structure of a cactus digraph: its simple cycles (which partition
/// the arc set), the cycle owning each arc, the connecting points, and the
/// cactus tree.
struct CactusDecomposition {
  Digraph graph;
  std::vector<Path> cycles;  // canonical rotation, discovery order
  std::vector<int> cycle_of_arc;  // aligned with graph.arcs()
  std::vector<std::vector<int>> cycles_of_vertex;
  std::vector<int> connecting_points;  // sorted vertex ids
  CactusTree tree;

  int cycle_containing(Arc a) const {
    const auto idx = graph.arc_index(a);
    if (!idx) throw std::invalid_argument("arc does not belong to the decomposed digraph");
    return cycle_of_arc[*idx];
  }

  bool is_connecting_point(int v) const {
    return std::binary_search(connecting_points.begin(), connecting_points.end(), v);
  }

  friend bool operator==(const CactusDecomposition&, const CactusDecomposition&) = default;
};

struct NotCactus {
  enum class Reason { NotStronglyConnected, ArcInNoCycle, ArcInTwoCycles };
  Reason reason{};
  std::optional<Arc> witness_arc;
  std::optional<std::pair<Path, Path>> witness_cycles;
};

using CactusCheck = std::variant<CactusDecomposition, NotCactus>;

/// Cactus test: strongly connected and every arc in exactly one simple
/// cycle. On success returns the full decomposition; on failure a reason
/// with witnesses. Enumeration aborts the moment an arc is covered twice,
/// so the total work stays polynomial even on dense inputs.
inline CactusCheck is_cactus(const Digraph& g) {
  if (!is_strongly_connected(g))
    return NotCactus{NotCactus::Reason::NotStronglyConnected, std::nullopt, std::nullopt};

  // Balance is a necessary condition (each cycle pairs one in- with one
  // out-arc at every vertex it visits), so an unbalanced graph is already
  // known to fail; the enumeration below still runs to recover the
  // doubly-covered-arc witness, which it reaches within |A| cycles.
  std::vector<int> cover(g.arc_count(), 0);
  std::vector<int> owner(g.arc_count(), -1);
  std::vector<Path> cycles;
  std::optional<NotCactus> failure;

  detail::for_each_simple_cycle(g, [&](std::span<const int> cyc) {
    const int index = static_cast<int>(cycles.size());
    std::vector<int> closed(cyc.begin(), cyc.end());
    closed.push_back(cyc.front());
    cycles.emplace_back(g, closed);
    for (std::size_t i = 1; i < closed.size(); ++i) {
      const Arc a{closed[i - 1], closed[i]};
      const int ai = *g.arc_index(a);
      if (++cover[ai] == 2) {
        failure = NotCactus{NotCactus::Reason::ArcInTwoCycles, a,
                            std::pair<Path, Path>{cycles[owner[ai]], cycles[index]}};
        return false;
      }
      owner[ai] = index;
    }
    assert(static_cast<int>(cycles.size()) <= std::max(1, g.arc_count()));
    return true;
  });
  if (failure) return *failure;

  for (int ai = 0; ai < g.arc_count(); ++ai)
    if (cover[ai] == 0)
      return NotCactus{NotCactus::Reason::ArcInNoCycle, g.arcs()[ai], std::nullopt};

  CactusDecomposition d;
  d.graph = g;
  d.cycles = std::move(cycles);
  d.cycle_of_arc = std::move(owner);
  d.cycles_of_vertex.resize(g.vertex_count());
  for (int ci = 0; ci < static_cast<int>(d.cycles.size()); ++ci) {
    const auto vs = d.cycles[ci].vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) d.cycles_of_vertex[vs[i]].push_back(ci);
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (d.cycles_of_vertex[v].size() >= 2) d.connecting_points.push_back(v);

#ifndef NDEBUG
  for (int v = 0; v < g.vertex_count(); ++v) {
    assert(g.indegree(v) == g.outdegree(v));  // cacti are balanced
    assert((g.indegree(v) >= 2) == (d.cycles_of_vertex[v].size() >= 2));
  }
#endif

  CactusTree& t = d.tree;
  t.cycle_count = static_cast<int>(d.cycles.size());
  t.connecting_points = d.connecting_points;
  t.adjacency.resize(t.node_count());
  for (int ci = 0; ci < t.cycle_count; ++ci) {
    const auto vs = d.cycles[ci].vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (const auto node = t.cp_node(vs[i])) {
        t.adjacency[ci].push_back(*node);
        t.adjacency[*node].push_back(ci);
      }
    }
  }
  for (auto& adj : t.adjacency) std::sort(adj.begin(), adj.end());
  return d;
}

namespace detail {

/// All simple cycles by subset-and-arrangement brute force: the oracle route
/// behind brute_force_is_cactus, sharing nothing with the Johnson-style
/// enumerator. Open sequences, minimal vertex first.
inline std::vector<std::vector<int>> naive_all_simple_cycles(const Digraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> cycles;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    if (members.size() < 2) continue;
    std::vector<int> rest(members.begin() + 1, members.end());
    do {
      int prev = members.front();
      bool ok = true;
      for (int v : rest) {
        if (!g.has_arc(prev, v)) {
          ok = false;
          break;
        }
        prev = v;
      }
      if (ok && g.has_arc(prev, members.front())) {
        std::vector<int> cyc{members.front()};
        cyc.insert(cyc.end(), rest.begin(), rest.end());
        cycles.push_back(std::move(cyc));
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return cycles;
}

}  // namespace detail

/// Oracle-scale cactus test through the cycle-sharing characterization:
/// strongly connected (checked by transitive closure) and no two distinct
/// simple cycles share more than one vertex.
inline bool brute_force_is_cactus(const Digraph& g) {
  const int n = g.vertex_count();
  if (n > 8) throw std::invalid_argument("brute_force_is_cactus is capped at 8 vertices");
  if (n == 0) return false;

  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) reach[v][v] = 1;
  for (const Arc& a : g.arcs()) reach[a.from][a.to] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  for (const auto& row : reach)
    for (char c : row)
      if (!c) return false;

  const auto cycles = detail::naive_all_simple_cycles(g);
  std::vector<unsigned> masks;
  masks.reserve(cycles.size());
  for (const auto& cyc : cycles) {
    unsigned m = 0;
    for (int v : cyc) m |= 1u << v;
    masks.push_back(m);
  }
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if (std::popcount(masks[i] & masks[j]) > 1) return false;
  return true;
}

enum class PreorderRelation { StrictlyLess, StrictlyGreater, Equivalent, Incomparable };

inline PreorderRelation flip(PreorderRelation r) {
  switch (r) {
    case PreorderRelation::StrictlyLess: return PreorderRelation::StrictlyGreater;
    case PreorderRelation::StrictlyGreater: return PreorderRelation::StrictlyLess;
    default: return r;
  }
}

/// The preorder of a rooted cactus digraph: v is below w when the minimal
/// sub-cactus C(v) spanned by {root, v} is contained in C(w). C(v) is
/// computed as the set of cycles on the cactus-tree path from the root's
/// node to v's node; C(root) is empty, standing for the single vertex.
class RootedPreorder {
 public:
  RootedPreorder(CactusDecomposition deco, int root)
      : deco_(std::move(deco)), root_(root) {
    const Digraph& g = deco_.graph;
    g.check_vertex(root_);
    const CactusTree& t = deco_.tree;
    const int nodes = t.node_count();

    anchor_.assign(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (const auto cp = t.cp_node(v)) {
        anchor_[v] = *cp;
      } else if (!deco_.cycles_of_vertex[v].empty()) {
        anchor_[v] = deco_.cycles_of_vertex[v].front();
      }
    }

    parent_.assign(nodes, -1);
    depth_.assign(nodes, -1);
    last_cycle_.assign(g.vertex_count(), -1);
    if (nodes == 0) return;  // single-vertex cactus

    root_node_ = anchor_[root_];
    depth_[root_node_] = 0;
    std::vector<int> queue{root_node_};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int node = queue[head];
      for (int next : t.adjacency[node]) {
        if (depth_[next] >= 0) continue;
        depth_[next] = depth_[node] + 1;
        parent_[next] = node;
        queue.push_back(next);
      }
    }
    assert(static_cast<int>(queue.size()) == nodes);  // the cactus tree is connected

    for (int v = 0; v < g.vertex_count(); ++v) {
      if (v == root_) continue;
      const int a = anchor_[v];
      last_cycle_[v] = t.is_cycle_node(a) ? a : parent_[a];
      assert(last_cycle_[v] >= 0 && t.is_cycle_node(last_cycle_[v]));
    }
  }

  const CactusDecomposition& decomposition() const { return deco_; }
  int root() const { return root_; }

  /// C(v) as a sorted set of cycle indices; empty for the root itself.
  std::vector<int> minimal_subcactus(int v) const {
    deco_.graph.check_vertex(v);
    std::vector<int> out;
    if (v == root_) return out;
    for (int node = last_cycle_[v]; node >= 0; node = parent_[node])
      if (deco_.tree.is_cycle_node(node)) out.push_back(node);
    std::sort(out.begin(), out.end());
    return out;
  }

  PreorderRelation compare(int v, int w) const {
    deco_.graph.check_vertex(v);
    deco_.graph.check_vertex(w);
    if (v == w) return PreorderRelation::Equivalent;
    if (v == root_) return PreorderRelation::StrictlyLess;
    if (w == root_) return PreorderRelation::StrictlyGreater;
    const int a = last_cycle_[v], b = last_cycle_[w];
    if (a == b) return PreorderRelation::Equivalent;
    if (is_ancestor(a, b)) return PreorderRelation::StrictlyLess;
    if (is_ancestor(b, a)) return PreorderRelation::StrictlyGreater;
    return PreorderRelation::Incomparable;
  }

  bool less_equal(int v, int w) const {
    const auto r = compare(v, w);
    return r == PreorderRelation::StrictlyLess || r == PreorderRelation::Equivalent;
  }

  /// The strongly minimum vertex of a cycle: the root if the cycle contains
  /// it, otherwise the cycle's connecting point nearest the root.
  int cycle_minimum_point(int cycle_index) const {
    if (cycle_index < 0 || cycle_index >= deco_.tree.cycle_count)
      throw std::invalid_argument("cycle index out of range");
    const int vs = cycle_index == root_node_
                       ? root_
                       : deco_.tree.cp_vertex(parent_[cycle_index]);
#ifndef NDEBUG
    const auto verts = deco_.cycles[cycle_index].vertices();
    for (std::size_t i = 0; i + 1 < verts.size(); ++i)
      assert(verts[i] == vs || compare(vs, verts[i]) == PreorderRelation::StrictlyLess);
#endif
    return vs;
  }

 private:
  bool is_ancestor(int up, int down) const {
    while (down >= 0 && depth_[down] > depth_[up]) down = parent_[down];
    return down == up;
  }

  CactusDecomposition deco_;
  int root_ = 0;
  int root_node_ = -1;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> anchor_;      // tree node holding each vertex
  std::vector<int> last_cycle_;  // deepest cycle on the root path, -1 at the root
};

struct ClaimCheck {
  bool ok = false;
  std::string diagnostic;
};

/// At a non-root connecting point c, exactly one in-neighbor and one
/// out-neighbor lie inside C(c) and sit at or below c; every other neighbor
/// is strictly above c. Always true on a cactus; the diagnostic names the
/// violated clause if it ever is not.
inline ClaimCheck check_connecting_point_claim(const RootedPreorder& p, int c) {
  const CactusDecomposition& deco = p.decomposition();
  const Digraph& g = deco.graph;
  g.check_vertex(c);
  if (c == p.root())
    throw std::invalid_argument("the connecting-point claim concerns non-root vertices");
  if (!deco.is_connecting_point(c))
    throw std::invalid_argument("vertex is not a connecting point");

  std::vector<char> in_sub(g.vertex_count(), 0);
  for (int ci : p.minimal_subcactus(c)) {
    const auto vs = deco.cycles[ci].vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) in_sub[vs[i]] = 1;
  }

  auto split = [&](std::span<const int> neighbors) {
    std::pair<std::vector<int>, std::vector<int>> r;  // inside C(c), outside
    for (int u : neighbors) (in_sub[u] ? r.first : r.second).push_back(u);
    return r;
  };
  const auto [in_inside, in_outside] = split(g.in_neighbors(c));
  const auto [out_inside, out_outside] = split(g.out_neighbors(c));

  if (in_inside.size() != 1)
    return {false, "expected exactly one in-neighbor inside C(c), found " +
                       std::to_string(in_inside.size())};
  if (out_inside.size() != 1)
    return {false, "expected exactly one out-neighbor inside C(c), found " +
                       std::to_string(out_inside.size())};
  if (!p.less_equal(in_inside.front(), c))
    return {false, "the in-neighbor inside C(c) is not below c"};
  if (!p.less_equal(out_inside.front(), c))
    return {false, "the out-neighbor inside C(c) is not below c"};
  for (int u : in_outside)
    if (p.compare(c, u) != PreorderRelation::StrictlyLess)
      return {false, "in-neighbor " + g.label(u) + " is not strictly above c"};
  for (int u : out_outside)
    if (p.compare(c, u) != PreorderRelation::StrictlyLess)
      return {false, "out-neighbor " + g.label(u) + " is not strictly above c"};
  return {true, ""};
}

struct DipCheck {
  bool single_dipped = false;
  std::optional<int> dip_index;  // smallest valid k
};

/// A vertex sequence is single dipped when it descends (allowing
/// equivalence) to some index k and ascends afterwards. Incomparable
/// consecutive vertices fail the check. Every simple path of a cactus must
/// pass; the smallest valid k is returned.
inline DipCheck verify_single_dipped(const RootedPreorder& p, const Path& path) {
  const Digraph& g = p.decomposition().graph;
  const auto vs = path.vertices();
  for (int v : vs) g.check_vertex(v);
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (!g.has_arc(vs[i - 1], vs[i]))
      throw std::invalid_argument("path does not lie in the host cactus");
  if (!path.is_simple_path()) throw std::invalid_argument("path must be simple");

  const int n = path.length();
  std::vector<PreorderRelation> rel(n);
  for (int i = 0; i < n; ++i) rel[i] = p.compare(vs[i], vs[i + 1]);

  auto down_ok = [](PreorderRelation r) {
    return r == PreorderRelation::StrictlyGreater || r == PreorderRelation::Equivalent;
  };
  auto up_ok = [](PreorderRelation r) {
    return r == PreorderRelation::StrictlyLess || r == PreorderRelation::Equivalent;
  };

  std::vector<char> suffix_up(n + 1, 1);
  for (int i = n - 1; i >= 0; --i) suffix_up[i] = suffix_up[i + 1] && up_ok(rel[i]);

  bool prefix_down = true;
  for (int k = 0; k <= n; ++k) {
    if (prefix_down && suffix_up[k]) return {true, k};
    if (k < n) prefix_down = prefix_down && down_ok(rel[k]);
  }
  return {false, std::nullopt};
}

}  // namespace cactus
