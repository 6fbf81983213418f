#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cactus/digraph.hpp"

namespace cactus {

/// Certificate that (p, q) is a doubly bidirectionally connected pair: two
/// simple paths each way, the two in each direction having distinct
/// preterminal vertices.
struct DbcpWitness {
  int p = 0;
  int q = 0;
  std::array<Path, 2> forward;   // p -> q
  std::array<Path, 2> backward;  // q -> p
};

/// Vertices realizable as the preterminal vertex of a simple path p -> q:
/// exactly the in-neighbors of q reachable from p without touching q (any
/// walk avoiding q shortens to a simple path and extends by the final arc;
/// p itself qualifies through the length-0 path). Sorted ascending.
inline std::vector<int> preterminal_candidates(const Digraph& g, int p, int q) {
  g.check_vertex(p);
  g.check_vertex(q);
  if (p == q) throw std::invalid_argument("preterminal candidates require distinct endpoints");
  std::vector<char> reachable(g.vertex_count(), 0);
  const std::vector<int> avoid{q};
  for (int v : reachable_from(g, p, avoid)) reachable[v] = 1;
  std::vector<int> out;
  for (int u : g.in_neighbors(q))
    if (reachable[u]) out.push_back(u);
  return out;
}

namespace detail {

/// Shortest path from `from` to `goal` avoiding `forbidden`, by BFS with
/// ascending neighbor order; deterministic. Expects the goal reachable.
inline std::vector<int> shortest_path_avoiding(const Digraph& g, int from, int goal,
                                               int forbidden) {
  std::vector<int> parent(g.vertex_count(), -2);
  parent[from] = -1;
  std::vector<int> queue{from};
  for (std::size_t head = 0; head < queue.size() && parent[goal] == -2; ++head) {
    for (int w : g.out_neighbors(queue[head])) {
      if (w == forbidden || parent[w] != -2) continue;
      parent[w] = queue[head];
      queue.push_back(w);
    }
  }
  if (parent[goal] == -2) throw std::logic_error("expected the goal to be reachable");
  std::vector<int> path;
  for (int v = goal; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Dbcp test by the reachability reduction: a witness exists iff both
/// directions admit at least two preterminal candidates. Witness paths pick
/// the two smallest candidates and shortest paths, so the result is
/// deterministic.
inline std::optional<DbcpWitness> is_dbcp(const Digraph& g, int p, int q) {
  const std::vector<int> fwd = preterminal_candidates(g, p, q);
  const std::vector<int> bwd = preterminal_candidates(g, q, p);
  if (fwd.size() < 2 || bwd.size() < 2) return std::nullopt;

  auto path_via = [&](int from, int to, int pre) {
    std::vector<int> verts = detail::shortest_path_avoiding(g, from, pre, to);
    verts.push_back(to);
    return Path(g, std::move(verts));
  };
  return DbcpWitness{p, q,
                     {path_via(p, q, fwd[0]), path_via(p, q, fwd[1])},
                     {path_via(q, p, bwd[0]), path_via(q, p, bwd[1])}};
}

/// Literal transcription of the definition, as the oracle: enumerate every
/// simple path both ways and look for two distinct preterminal vertices.
inline bool brute_force_is_dbcp(const Digraph& g, int p, int q) {
  if (g.vertex_count() > 8)
    throw std::invalid_argument("brute_force_is_dbcp is capped at 8 vertices");
  g.check_vertex(p);
  g.check_vertex(q);
  if (p == q) throw std::invalid_argument("dbcp test requires distinct endpoints");

  auto two_preterminals = [&](int from, int to) {
    int first = -1;
    bool found = false;
    detail::for_each_simple_path(g, from, to, [&](std::span<const int> path) {
      const int pre = path[path.size() - 2];
      if (first == -1) {
        first = pre;
      } else if (pre != first) {
        found = true;
        return false;
      }
      return true;
    });
    return found;
  };
  return two_preterminals(p, q) && two_preterminals(q, p);
}

/// First dbcp in id-lexicographic pair order, if any. Pairs where either
/// vertex has indegree < 2 cannot qualify and are skipped.
inline std::optional<DbcpWitness> find_dbcp(const Digraph& g) {
  const int n = g.vertex_count();
  for (int p = 0; p < n; ++p) {
    if (g.indegree(p) < 2) continue;
    for (int q = 0; q < n; ++q) {
      if (q == p || g.indegree(q) < 2) continue;
      if (auto witness = is_dbcp(g, p, q)) return witness;
    }
  }
  return std::nullopt;
}

/// Independent re-validation of a witness against its digraph.
inline bool dbcp_witness_valid(const Digraph& g, const DbcpWitness& w) {
  if (w.p == w.q) return false;
  if (!g.contains(w.p) || !g.contains(w.q)) return false;
  auto path_ok = [&](const Path& path, int from, int to) {
    const auto vs = path.vertices();
    if (vs.front() != from || vs.back() != to) return false;
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (!g.has_arc(vs[i - 1], vs[i])) return false;
    return path.is_simple_path();
  };
  for (const Path& path : w.forward)
    if (!path_ok(path, w.p, w.q)) return false;
  for (const Path& path : w.backward)
    if (!path_ok(path, w.q, w.p)) return false;
  return w.forward[0].preterminal() != w.forward[1].preterminal() &&
         w.backward[0].preterminal() != w.backward[1].preterminal();
}

}  // namespace cactus
