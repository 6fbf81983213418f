#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cactus {

/// Ordered pair of vertex ids; `from` is the source, `to` the target.
struct Arc {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Finite loop-free directed graph on dense vertex ids 0..n-1.
///
/// Arcs form a set (no loops, no duplicates) and are kept sorted, so
/// iteration order is deterministic. Every vertex carries a string label;
/// labels default to the decimal id. Instances are cheap values: build
/// them once, then treat them as immutable.
class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(int vertex_count) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    n_ = vertex_count;
    labels_.reserve(n_);
    for (int v = 0; v < n_; ++v) labels_.push_back(std::to_string(v));
    out_.resize(n_);
    in_.resize(n_);
  }

  Digraph(int vertex_count, std::span<const Arc> arcs) : Digraph(vertex_count) {
    for (const Arc& a : arcs) add_arc(a.from, a.to);
  }

  Digraph(std::vector<std::string> labels, std::span<const Arc> arcs)
      : Digraph(static_cast<int>(labels.size())) {
    labels_ = std::move(labels);
    for (const Arc& a : arcs) add_arc(a.from, a.to);
  }

  void add_arc(int from, int to) {
    check_vertex(from);
    check_vertex(to);
    if (from == to) throw std::invalid_argument("loop arcs are not allowed");
    const Arc a{from, to};
    const auto pos = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (pos != arcs_.end() && *pos == a) throw std::invalid_argument("duplicate arc");
    arcs_.insert(pos, a);
    insert_sorted(out_[from], to);
    insert_sorted(in_[to], from);
  }

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  std::span<const Arc> arcs() const { return arcs_; }

  bool contains(int v) const { return v >= 0 && v < n_; }

  void check_vertex(int v) const {
    if (!contains(v)) throw std::invalid_argument("vertex id out of range");
  }

  bool has_arc(int from, int to) const {
    return arc_index({from, to}).has_value();
  }

  /// Position of an arc in the sorted arc list, if present.
  std::optional<int> arc_index(Arc a) const {
    const auto pos = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (pos == arcs_.end() || *pos != a) return std::nullopt;
    return static_cast<int>(pos - arcs_.begin());
  }

  std::span<const int> out_neighbors(int v) const {
    check_vertex(v);
    return out_[v];
  }

  std::span<const int> in_neighbors(int v) const {
    check_vertex(v);
    return in_[v];
  }

  int indegree(int v) const { return static_cast<int>(in_neighbors(v).size()); }
  int outdegree(int v) const { return static_cast<int>(out_neighbors(v).size()); }

  const std::string& label(int v) const {
    check_vertex(v);
    return labels_[v];
  }

  const std::vector<std::string>& labels() const { return labels_; }

  void set_label(int v, std::string label) {
    check_vertex(v);
    labels_[v] = std::move(label);
  }

  std::optional<int> find_vertex(std::string_view label) const {
    for (int v = 0; v < n_; ++v)
      if (labels_[v] == label) return v;
    return std::nullopt;
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  static void insert_sorted(std::vector<int>& xs, int v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;  // sorted
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Vertex sequence x0..xn whose consecutive pairs are arcs of a host
/// digraph; validated against the host on construction. A length-0 path is
/// a single vertex. A cycle repeats its first vertex at the end.
class Path {
 public:
  Path(const Digraph& g, std::vector<int> vertices) : verts_(std::move(vertices)) {
    if (verts_.empty()) throw std::invalid_argument("a path has at least one vertex");
    for (int v : verts_) g.check_vertex(v);
    for (std::size_t i = 1; i < verts_.size(); ++i)
      if (!g.has_arc(verts_[i - 1], verts_[i]))
        throw std::invalid_argument("consecutive path vertices must be joined by an arc");
  }

  std::span<const int> vertices() const { return verts_; }
  int length() const { return static_cast<int>(verts_.size()) - 1; }
  int source() const { return verts_.front(); }
  int target() const { return verts_.back(); }

  /// The next-to-last vertex x_{n-1}; requires length >= 1.
  int preterminal() const {
    if (length() < 1) throw std::logic_error("a length-0 path has no preterminal vertex");
    return verts_[verts_.size() - 2];
  }

  bool is_cycle() const { return length() >= 1 && verts_.front() == verts_.back(); }

  bool is_simple_path() const {
    auto sorted = std::vector<int>(verts_.begin(), verts_.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  bool is_simple_cycle() const {
    if (!is_cycle()) return false;
    auto sorted = std::vector<int>(verts_.begin(), verts_.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<int> verts_;
};

struct Degrees {
  int in = 0;
  int out = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// Per-vertex (indegree, outdegree), indexed by vertex id.
inline std::vector<Degrees> degrees(const Digraph& g) {
  std::vector<Degrees> d(g.vertex_count());
  for (const Arc& a : g.arcs()) {
    ++d[a.from].out;
    ++d[a.to].in;
  }
  return d;
}

struct SccResult {
  std::vector<int> component_of;  // per vertex, 0-based component id
  int count = 0;
};

namespace detail {

/// Tarjan over the subgraph induced on vertices >= min_vertex. Vertices
/// below min_vertex get component id -1.
inline SccResult scc_suffix(const Digraph& g, int min_vertex) {
  const int n = g.vertex_count();
  SccResult res;
  res.component_of.assign(n, -1);
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;

  auto strongconnect = [&](auto&& self, int v) -> void {
    index[v] = lowlink[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : g.out_neighbors(v)) {
      if (w < min_vertex) continue;
      if (index[w] < 0) {
        self(self, w);
        lowlink[v] = std::min(lowlink[v], lowlink[w]);
      } else if (on_stack[w]) {
        lowlink[v] = std::min(lowlink[v], index[w]);
      }
    }
    if (lowlink[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        res.component_of[w] = res.count;
      } while (w != v);
      ++res.count;
    }
  };

  for (int v = min_vertex; v < n; ++v)
    if (index[v] < 0) strongconnect(strongconnect, v);
  return res;
}

}  // namespace detail

inline SccResult strongly_connected_components(const Digraph& g) {
  return detail::scc_suffix(g, 0);
}

/// True iff every ordered vertex pair is joined by a path. A single vertex
/// counts as strongly connected; the empty graph does not.
inline bool is_strongly_connected(const Digraph& g) {
  if (g.vertex_count() == 0) return false;
  return strongly_connected_components(g).count == 1;
}

/// All vertices reachable from `start` along paths that avoid every vertex
/// in `forbidden`; `start` itself is always included. Sorted ascending.
inline std::vector<int> reachable_from(const Digraph& g, int start,
                                       std::span<const int> forbidden = {}) {
  g.check_vertex(start);
  std::vector<char> blocked(g.vertex_count(), 0);
  for (int v : forbidden) {
    g.check_vertex(v);
    blocked[v] = 1;
  }
  if (blocked[start]) throw std::invalid_argument("start vertex is forbidden");

  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> queue{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int w : g.out_neighbors(queue[head])) {
      if (seen[w] || blocked[w]) continue;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

namespace detail {

/// Johnson-style blocked enumeration of simple cycles. `visit` receives each
/// cycle as the vertex stack (minimal vertex first, closing vertex omitted)
/// and returns false to abort the whole enumeration. Returns true iff the
/// enumeration ran to completion.
template <typename Visit>
bool for_each_simple_cycle(const Digraph& g, Visit&& visit) {
  const int n = g.vertex_count();
  std::vector<char> blocked(n, 0);
  std::vector<std::vector<int>> block_list(n);
  std::vector<char> in_comp(n, 0);
  std::vector<int> stack;
  bool aborted = false;

  for (int s = 0; s < n && !aborted; ++s) {
    // Cycles whose minimal vertex is s live in s's strong component of the
    // subgraph induced on {s, ..., n-1}.
    const SccResult comp = scc_suffix(g, s);
    int comp_size = 0;
    for (int v = s; v < n; ++v) {
      in_comp[v] = comp.component_of[v] == comp.component_of[s];
      comp_size += in_comp[v];
    }
    if (comp_size < 2) continue;
    for (int v = s; v < n; ++v) {
      blocked[v] = 0;
      block_list[v].clear();
    }

    auto unblock = [&](auto&& self, int v) -> void {
      blocked[v] = 0;
      for (int w : block_list[v])
        if (blocked[w]) self(self, w);
      block_list[v].clear();
    };

    auto circuit = [&](auto&& self, int v) -> bool {
      bool found = false;
      stack.push_back(v);
      blocked[v] = 1;
      for (int w : g.out_neighbors(v)) {
        if (w < s || !in_comp[w]) continue;
        if (w == s) {
          if (!visit(std::span<const int>(stack))) {
            aborted = true;
            break;
          }
          found = true;
        } else if (!blocked[w]) {
          if (self(self, w)) found = true;
          if (aborted) break;
        }
      }
      if (!aborted) {
        if (found) {
          unblock(unblock, v);
        } else {
          for (int w : g.out_neighbors(v)) {
            if (w < s || !in_comp[w]) continue;
            auto& lst = block_list[w];
            if (std::find(lst.begin(), lst.end(), v) == lst.end()) lst.push_back(v);
          }
        }
      }
      stack.pop_back();
      return found;
    };

    circuit(circuit, s);
    for (int v = s; v < n; ++v) in_comp[v] = 0;
  }
  return !aborted;
}

template <typename Visit>
bool for_each_simple_path(const Digraph& g, int from, int to, Visit&& visit) {
  std::vector<char> used(g.vertex_count(), 0);
  std::vector<int> stack{from};
  used[from] = 1;
  bool aborted = false;

  auto dfs = [&](auto&& self, int v) -> void {
    for (int w : g.out_neighbors(v)) {
      if (aborted) return;
      if (w == to) {
        stack.push_back(w);
        if (!visit(std::span<const int>(stack))) aborted = true;
        stack.pop_back();
      } else if (!used[w]) {
        used[w] = 1;
        stack.push_back(w);
        self(self, w);
        stack.pop_back();
        used[w] = 0;
      }
    }
  };

  dfs(dfs, from);
  return !aborted;
}

}  // namespace detail

struct CycleList {
  std::vector<Path> cycles;
  bool truncated = false;
};

/// Distinct simple cycles in canonical rotation (minimal vertex id first,
/// closing vertex repeated), enumerated with polynomial delay. Stops after
/// `max_cycles`; the flag reports whether anything was cut off.
inline CycleList enumerate_simple_cycles(const Digraph& g, int max_cycles) {
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
  CycleList out;
  detail::for_each_simple_cycle(g, [&](std::span<const int> cyc) {
    if (static_cast<int>(out.cycles.size()) == max_cycles) {
      out.truncated = true;
      return false;
    }
    std::vector<int> closed(cyc.begin(), cyc.end());
    closed.push_back(cyc.front());
    out.cycles.emplace_back(g, std::move(closed));
    return true;
  });
  return out;
}

struct PathList {
  std::vector<Path> paths;
  bool truncated = false;
};

/// All distinct simple paths between two distinct vertices, in lexicographic
/// order of their vertex sequences, capped at `max_paths`.
inline PathList enumerate_simple_paths(const Digraph& g, int from, int to, int max_paths) {
  g.check_vertex(from);
  g.check_vertex(to);
  if (from == to)
    throw std::invalid_argument("simple-path enumeration requires distinct endpoints");
  if (max_paths < 1) throw std::invalid_argument("max_paths must be at least 1");
  PathList out;
  detail::for_each_simple_path(g, from, to, [&](std::span<const int> p) {
    if (static_cast<int>(out.paths.size()) == max_paths) {
      out.truncated = true;
      return false;
    }
    out.paths.emplace_back(g, std::vector<int>(p.begin(), p.end()));
    return true;
  });
  return out;
}

}  // namespace cactus
