#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cactus/cactus.hpp"
#include "cactus/dbcp.hpp"
#include "cactus/digraph.hpp"
#include "cactus/morphism.hpp"

namespace cactus {

struct SearchConfig {
  int fiber_bound = 4;          // max copies per target vertex
  int max_total_vertices = 0;   // cap on the candidate size; 0 = 3 * |V|
  std::uint64_t node_budget = 10'000'000;
  bool symmetry_pruning = true;
};

struct SearchStats {
  std::uint64_t fiber_vectors_tried = 0;
  std::uint64_t candidates_built = 0;
  std::uint64_t cactus_checks = 0;
  std::uint64_t nodes_explored = 0;
  std::uint64_t balance_prunes = 0;         // per-copy outdegree cap
  std::uint64_t vector_balance_prunes = 0;  // whole fiber vector infeasible
  std::uint64_t size_bound_prunes = 0;      // candidate too large/small for a cactus
  std::uint64_t symmetry_prunes = 0;

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

namespace detail {

inline SearchConfig resolve_config(const Digraph& g, SearchConfig cfg) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("expansion search requires a nonempty digraph");
  if (cfg.max_total_vertices == 0) cfg.max_total_vertices = 3 * g.vertex_count();
  if (cfg.fiber_bound < 1) throw std::invalid_argument("fiber_bound must be at least 1");
  if (cfg.max_total_vertices < g.vertex_count())
    throw std::invalid_argument("max_total_vertices must be at least |V|");
  if (cfg.node_budget < 1) throw std::invalid_argument("node_budget must be at least 1");
  return cfg;
}

/// Fiber sizes in [1, bound]^n with a capped sum, ascending by total then
/// lexicographically, so the smallest candidates come first. `fn` returns
/// false to stop.
template <typename Fn>
bool for_each_fiber_vector(int n, int bound, int max_total, Fn&& fn) {
  std::vector<int> sizes(n);
  auto place = [&](auto&& self, int i, int remaining) -> bool {
    const int slots_after = n - i - 1;
    if (i == n) return remaining == 0 ? fn(std::as_const(sizes)) : true;
    const int lo = std::max(1, remaining - slots_after * bound);
    const int hi = std::min(bound, remaining - slots_after);
    for (int k = lo; k <= hi; ++k) {
      sizes[i] = k;
      if (!self(self, i + 1, remaining - k)) return false;
    }
    return true;
  };
  for (int total = n; total <= max_total; ++total)
    if (!place(place, 0, total)) return false;
  return true;
}

/// Copy labels: a lone copy keeps its vertex's label, fibers of size > 1 get
/// a 1-based suffix. If suffixing collides with an existing label, an
/// underscore separator (doubled as needed) restores uniqueness.
inline std::vector<std::string> make_copy_labels(const Digraph& g,
                                                 const std::vector<int>& sizes) {
  std::string sep;
  for (;;) {
    std::vector<std::string> labels;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (sizes[v] == 1) {
        labels.push_back(g.label(v));
      } else {
        for (int i = 0; i < sizes[v]; ++i)
          labels.push_back(g.label(v) + sep + std::to_string(i + 1));
      }
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() == labels.size())
      return labels;
    sep += "_";
  }
}

enum class CandidateAction { Continue, Stop };

struct EngineResult {
  SearchStats stats;
  bool budget_exceeded = false;
  bool stopped = false;
};

/// The enumeration core. Every expansion of g decomposes as (1) a fiber
/// size per vertex and (2) one chosen tail copy per target arc and head
/// copy; the unique-lift axiom then holds by construction and both
/// surjectivity axioms are automatic. With `cactus_prunes`, fiber vectors
/// that cannot carry a balanced candidate (or exceed the cactus arc bound
/// |A'| = |V'| + cycles - 1 <= 2|V'| - 2) are skipped and partial
/// assignments die as soon as a copy's outdegree would exceed its forced
/// indegree. Symmetry pruning only emits choice assignments whose copies
/// first appear in index order, which keeps at least one member of every
/// per-fiber relabeling class.
template <typename OnCandidate>
EngineResult run_enumeration(const Digraph& g, const SearchConfig& raw_cfg,
                             bool cactus_prunes, OnCandidate&& on_candidate) {
  const SearchConfig cfg = resolve_config(g, raw_cfg);
  const int n = g.vertex_count();
  EngineResult res;
  SearchStats& stats = res.stats;

  std::vector<int> indeg(n), outdeg(n);
  for (const Arc& a : g.arcs()) {
    ++outdeg[a.from];
    ++indeg[a.to];
  }

  for_each_fiber_vector(n, cfg.fiber_bound, cfg.max_total_vertices, [&](const std::vector<int>& sizes) {
    ++stats.fiber_vectors_tried;

    int total = 0;
    for (int k : sizes) total += k;
    std::int64_t total_arcs = 0;
    for (const Arc& a : g.arcs()) total_arcs += sizes[a.to];

    if (cactus_prunes) {
      bool balanced_possible = true;
      for (int x = 0; x < n && balanced_possible; ++x) {
        std::int64_t fiber_out = 0;
        for (int y : g.out_neighbors(x)) fiber_out += sizes[y];
        balanced_possible = fiber_out == static_cast<std::int64_t>(sizes[x]) * indeg[x];
      }
      if (!balanced_possible) {
        ++stats.vector_balance_prunes;
        return true;
      }
      if (total >= 2 && (total_arcs < total || total_arcs > 2 * total - 2)) {
        ++stats.size_bound_prunes;
        return true;
      }
    }

    std::vector<int> offset(n, 0);
    for (int v = 1; v < n; ++v) offset[v] = offset[v - 1] + sizes[v - 1];

    // decision slots: (arc, head copy), arc-major
    std::vector<int> slot_arc;
    slot_arc.reserve(static_cast<std::size_t>(total_arcs));
    for (int ai = 0; ai < g.arc_count(); ++ai)
      for (int j = 0; j < sizes[g.arcs()[ai].to]; ++j) slot_arc.push_back(ai);
    std::vector<int> slot_copy(slot_arc.size());
    for (std::size_t s = 0, j = 0; s < slot_arc.size(); ++s) {
      j = (s > 0 && slot_arc[s] == slot_arc[s - 1]) ? j + 1 : 0;
      slot_copy[s] = static_cast<int>(j);
    }

    std::vector<int> choice(slot_arc.size(), -1);
    std::vector<int> out_load(total, 0);
    std::vector<int> appeared(n, 0);

    auto emit = [&]() -> bool {
      ++stats.candidates_built;
      std::vector<Arc> arcs;
      arcs.reserve(choice.size());
      for (std::size_t s = 0; s < choice.size(); ++s) {
        const Arc a = g.arcs()[slot_arc[s]];
        arcs.push_back({offset[a.from] + choice[s], offset[a.to] + slot_copy[s]});
      }
      Digraph source(make_copy_labels(g, sizes), arcs);
      std::vector<int> vertex_map(total);
      for (int v = 0; v < n; ++v)
        for (int i = 0; i < sizes[v]; ++i) vertex_map[offset[v] + i] = v;
      return on_candidate(Morphism{std::move(source), g, std::move(vertex_map)}) ==
             CandidateAction::Continue;
    };

    auto assign = [&](auto&& self, std::size_t s) -> bool {
      if (s == slot_arc.size()) {
        if (!emit()) {
          res.stopped = true;
          return false;
        }
        return true;
      }
      const Arc a = g.arcs()[slot_arc[s]];
      const int x = a.from, y = a.to;
      bool marked_y = false;
      if (cfg.symmetry_pruning && slot_copy[s] == appeared[y]) {
        ++appeared[y];
        marked_y = true;
      }
      bool keep_going = true;
      for (int i = 0; i < sizes[x]; ++i) {
        if (cfg.symmetry_pruning && i > appeared[x]) {
          stats.symmetry_prunes += static_cast<std::uint64_t>(sizes[x] - i);
          break;
        }
        if (stats.nodes_explored >= cfg.node_budget) {
          res.budget_exceeded = true;
          keep_going = false;
          break;
        }
        ++stats.nodes_explored;
        if (cactus_prunes && out_load[offset[x] + i] == indeg[x]) {
          ++stats.balance_prunes;
          continue;
        }
        bool marked_x = false;
        if (cfg.symmetry_pruning && i == appeared[x]) {
          ++appeared[x];
          marked_x = true;
        }
        ++out_load[offset[x] + i];
        choice[s] = i;
        keep_going = self(self, s + 1);
        --out_load[offset[x] + i];
        if (marked_x) --appeared[x];
        if (!keep_going) break;
      }
      if (marked_y) --appeared[y];
      return keep_going;
    };

    return assign(assign, 0);
  });

  return res;
}

}  // namespace detail

struct EnumerationResult {
  SearchStats stats;
  bool completed = false;        // ran out of fiber vectors naturally
  bool budget_exceeded = false;
};

/// Streams every expansion of g within the configured bounds, smallest
/// first, to `visit` (signature: CandidateAction(const Morphism&)). With
/// symmetry pruning, assignments differing only by relabeling copies within
/// fibers are mostly deduplicated; without it the stream is the complete
/// parameterization.
template <typename Visitor>
EnumerationResult enumerate_expansions(const Digraph& g, const SearchConfig& cfg,
                                       Visitor&& visit) {
  auto res = detail::run_enumeration(g, cfg, /*cactus_prunes=*/false,
                                     std::forward<Visitor>(visit));
  return {res.stats, !res.budget_exceeded && !res.stopped, res.budget_exceeded};
}

using detail::CandidateAction;

struct Found {
  Morphism morphism;  // morphism.source is the cactus expansion
  SearchStats stats;
};

struct ExhaustedBounds {
  SearchStats stats;
  /// Set only by the fast path for non-strongly-connected targets, the one
  /// case where nonexistence is proven rather than bounds running out:
  /// strong connectivity is inherited through surjective morphisms, and a
  /// cactus is strongly connected.
  bool proven_impossible = false;
};

struct BudgetExceeded {
  SearchStats stats;
};

using SearchOutcome = std::variant<Found, ExhaustedBounds, BudgetExceeded>;

inline const SearchStats& outcome_stats(const SearchOutcome& o) {
  if (const auto* f = std::get_if<Found>(&o)) return f->stats;
  if (const auto* e = std::get_if<ExhaustedBounds>(&o)) return e->stats;
  return std::get<BudgetExceeded>(o).stats;
}

/// Bounded search for an expansion whose source is a cactus digraph.
/// Deterministic: the first hit in (fiber vector, choice) order is
/// returned, re-verified through verify_expansion and is_cactus before it
/// leaves the function.
inline SearchOutcome find_cactus_expansion(const Digraph& g, const SearchConfig& raw_cfg) {
  const SearchConfig cfg = detail::resolve_config(g, raw_cfg);
  if (!is_strongly_connected(g)) return ExhaustedBounds{SearchStats{}, true};

  std::optional<Morphism> found;
  std::uint64_t cactus_checks = 0;
  auto res = detail::run_enumeration(g, cfg, /*cactus_prunes=*/true, [&](Morphism&& m) {
    ++cactus_checks;
    if (std::holds_alternative<CactusDecomposition>(is_cactus(m.source))) {
      found = std::move(m);
      return detail::CandidateAction::Stop;
    }
    return detail::CandidateAction::Continue;
  });
  res.stats.cactus_checks = cactus_checks;

  if (found) {
    const bool sound = verify_expansion(*found).is_expansion &&
                       std::holds_alternative<CactusDecomposition>(is_cactus(found->source));
    if (!sound) throw std::logic_error("search produced a candidate that fails re-verification");
    return Found{std::move(*found), res.stats};
  }
  if (res.budget_exceeded) return BudgetExceeded{res.stats};
  return ExhaustedBounds{res.stats, false};
}

struct CorpusRow {
  std::string id;
  bool has_dbcp = false;
  bool strongly_connected = false;
  SearchOutcome outcome;
  bool consistent = false;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  bool all_consistent = true;
  bool any_budget_exceeded = false;
};

/// Runs dbcp detection and the cactus-expansion search over a corpus. Each
/// row is checked for consistency: a graph with a dbcp must never yield a
/// cactus expansion, nor may a non-strongly-connected one, and the
/// impossibility marker may come only from the fast path. A violation would
/// contradict the underlying theory and is surfaced, not repaired.
inline CorpusReport validate_theorem_on_corpus(
    const std::vector<std::pair<std::string, Digraph>>& corpus, const SearchConfig& cfg) {
  CorpusReport report;
  for (const auto& [id, g] : corpus) {
    CorpusRow row;
    row.id = id;
    row.has_dbcp = find_dbcp(g).has_value();
    row.strongly_connected = is_strongly_connected(g);
    row.outcome = find_cactus_expansion(g, cfg);

    const bool found = std::holds_alternative<Found>(row.outcome);
    const auto* exhausted = std::get_if<ExhaustedBounds>(&row.outcome);
    row.consistent = !(row.has_dbcp && found) && !(!row.strongly_connected && found) &&
                     (!exhausted || !exhausted->proven_impossible || !row.strongly_connected);
    report.all_consistent = report.all_consistent && row.consistent;
    report.any_budget_exceeded =
        report.any_budget_exceeded || std::holds_alternative<BudgetExceeded>(row.outcome);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cactus
