#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cactus/digraph.hpp"

namespace cactus {

/// Digraph morphism given by its vertex map alone; the arc map is induced
/// (arc (v',w') goes to (map(v'), map(w'))), which compatibility forces for
/// graphs without parallel arcs.
struct Morphism {
  Digraph source;  // G'
  Digraph target;  // G
  std::vector<int> vertex_map;  // source id -> target id, total

  int map(int source_vertex) const { return vertex_map.at(source_vertex); }
  Arc map(Arc a) const { return {vertex_map.at(a.from), vertex_map.at(a.to)}; }

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

inline void check_vertex_map(const Morphism& m) {
  if (static_cast<int>(m.vertex_map.size()) != m.source.vertex_count())
    throw std::invalid_argument("vertex map must be total on the source vertices");
  for (int image : m.vertex_map)
    if (!m.target.contains(image))
      throw std::invalid_argument("vertex map image out of range");
}

struct MorphismCheck {
  bool compatible = false;
  std::optional<Arc> violating_arc;  // first source arc whose image is missing
};

/// Compatibility check: every source arc must map onto a target arc.
inline MorphismCheck verify_morphism(const Morphism& m) {
  check_vertex_map(m);
  for (const Arc& a : m.source.arcs())
    if (!m.target.has_arc(m.vertex_map[a.from], m.vertex_map[a.to])) return {false, a};
  return {true, std::nullopt};
}

/// Thrown when an operation requiring a morphism receives an incompatible
/// vertex map.
class NotAMorphismError : public std::invalid_argument {
 public:
  explicit NotAMorphismError(Arc witness)
      : std::invalid_argument("vertex map is not arc-compatible"), witness_(witness) {}
  Arc witness() const { return witness_; }

 private:
  Arc witness_;
};

struct LiftWitness {
  Arc target_arc;
  int source_vertex;  // the copy y' whose lift is not unique
  int lift_count;     // number of arcs (x', y') with x' over the arc's source
};

/// Expansion verdict: all three axioms reported independently, each failure
/// with a concrete witness.
struct ExpansionReport {
  bool vertex_surjective = false;
  std::optional<int> unhit_vertex;
  bool arc_surjective = false;
  std::optional<Arc> unhit_arc;
  bool unique_lift = false;
  std::optional<LiftWitness> lift_witness;
  bool is_expansion = false;
};

/// Checks the expansion axioms: the vertex map is surjective, the induced
/// arc map is surjective, and every target arc lifts uniquely to every copy
/// of its head. Throws NotAMorphismError if the map is not even a morphism.
inline ExpansionReport verify_expansion(const Morphism& m) {
  const MorphismCheck mc = verify_morphism(m);
  if (!mc.compatible) throw NotAMorphismError(*mc.violating_arc);

  ExpansionReport r;

  std::vector<char> vertex_hit(m.target.vertex_count(), 0);
  for (int image : m.vertex_map) vertex_hit[image] = 1;
  r.vertex_surjective = true;
  for (int v = 0; v < m.target.vertex_count(); ++v)
    if (!vertex_hit[v]) {
      r.vertex_surjective = false;
      r.unhit_vertex = v;
      break;
    }

  std::vector<char> arc_hit(m.target.arc_count(), 0);
  for (const Arc& a : m.source.arcs()) arc_hit[*m.target.arc_index(m.map(a))] = 1;
  r.arc_surjective = true;
  for (int i = 0; i < m.target.arc_count(); ++i)
    if (!arc_hit[i]) {
      r.arc_surjective = false;
      r.unhit_arc = m.target.arcs()[i];
      break;
    }

  r.unique_lift = true;
  for (const Arc& a : m.target.arcs()) {
    if (!r.unique_lift) break;
    for (int yprime = 0; yprime < m.source.vertex_count(); ++yprime) {
      if (m.vertex_map[yprime] != a.to) continue;
      int lifts = 0;
      for (int xprime : m.source.in_neighbors(yprime))
        if (m.vertex_map[xprime] == a.from) ++lifts;
      if (lifts != 1) {
        r.unique_lift = false;
        r.lift_witness = LiftWitness{a, yprime, lifts};
        break;
      }
    }
  }

  r.is_expansion = r.vertex_surjective && r.arc_surjective && r.unique_lift;
  return r;
}

struct IndegreeCheck {
  bool preserved = false;
  std::optional<int> witness_vertex;  // source vertex whose indegree differs
};

/// For a genuine expansion this always passes: each copy inherits the
/// indegree of its image. Reports the first differing vertex otherwise.
/// Outdegrees are not preserved in general.
inline IndegreeCheck check_indegree_preservation(const Morphism& m) {
  check_vertex_map(m);
  for (int v = 0; v < m.source.vertex_count(); ++v)
    if (m.source.indegree(v) != m.target.indegree(m.vertex_map[v])) return {false, v};
  return {true, std::nullopt};
}

}  // namespace cactus
