#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cactus/digraph.hpp"

namespace cactus {

namespace rng {

// std::uniform_int_distribution and friends are implementation-defined, so
// generated graphs would differ across standard libraries. These helpers pin
// the exact stream for a given seed.

/// Unbiased integer in [lo, hi] via rejection sampling.
inline int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t limit = span * (UINT64_MAX / span);
  for (;;) {
    const std::uint64_t u = gen();
    if (u < limit) return lo + static_cast<int>(u % span);
  }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace rng

struct FixtureExpectations {
  bool strongly_connected = false;
  bool is_cactus = false;
  bool has_dbcp = false;
};

/// A named graph together with its known properties; the test suites
/// recompute the properties and compare.
struct Fixture {
  std::string name;
  Digraph graph;
  FixtureExpectations expected;
};

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"C2",  "C3",  "FIG8",  "THETA",
                                                 "K3S", "E5",  "SHARE2"};
  return names;
}

inline Fixture fixture(std::string_view name) {
  auto make = [](std::vector<std::string> labels, std::vector<Arc> arcs) {
    return Digraph(std::move(labels), arcs);
  };
  if (name == "C2") {
    // p <-> q
    return {"C2", make({"p", "q"}, {{0, 1}, {1, 0}}), {true, true, false}};
  }
  if (name == "C3") {
    // directed triangle a -> b -> c -> a
    return {"C3", make({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}}), {true, true, false}};
  }
  if (name == "FIG8") {
    // two directed triangles sharing vertex a
    return {"FIG8",
            make({"a", "b", "c", "d", "e"},
                 {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}),
            {true, true, false}};
  }
  if (name == "THETA") {
    // a -> x -> b, a -> y -> b, b -> a
    return {"THETA",
            make({"a", "x", "b", "y"}, {{0, 1}, {1, 2}, {0, 3}, {3, 2}, {2, 0}}),
            {true, false, false}};
  }
  if (name == "K3S") {
    // complete symmetric digraph on three vertices
    return {"K3S",
            make({"p", "q", "r"}, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}),
            {true, false, true}};
  }
  if (name == "E5") {
    // two triangles through b: b -> a1 -> x -> b and b -> a2 -> y -> b
    return {"E5",
            make({"b", "a1", "x", "a2", "y"},
                 {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}),
            {true, true, false}};
  }
  if (name == "SHARE2") {
    // cycles (a,b) and (a,b,c) share the arc a -> b
    return {"SHARE2", make({"a", "b", "c"}, {{0, 1}, {1, 0}, {1, 2}, {2, 0}}),
            {true, false, false}};
  }
  throw std::invalid_argument("unknown fixture: " + std::string(name));
}

/// Erdos-Renyi style digraph: every ordered non-loop pair is included
/// independently with the given probability. Seed-deterministic.
inline Digraph random_digraph(int n, double arc_probability, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_digraph requires n >= 1");
  std::mt19937_64 gen(seed);
  Digraph g(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      if (rng::uniform01(gen) < arc_probability) g.add_arc(x, y);
    }
  return g;
}

/// Random cactus digraph: a tree of directed simple cycles, each new cycle
/// attached at a uniformly chosen existing vertex. Cycle lengths are uniform
/// in [2, max_cycle_len]. Seed-deterministic.
inline Digraph random_cactus(int num_cycles, int max_cycle_len, std::uint64_t seed) {
  if (num_cycles < 1) throw std::invalid_argument("random_cactus requires num_cycles >= 1");
  if (max_cycle_len < 2) throw std::invalid_argument("random_cactus requires max_cycle_len >= 2");
  std::mt19937_64 gen(seed);
  std::vector<Arc> arcs;
  int total = 0;

  auto add_cycle = [&](int attach) {
    const int len = rng::uniform_int(gen, 2, max_cycle_len);
    int prev = attach;
    for (int i = 0; i < len - 1; ++i) {
      arcs.push_back({prev, total});
      prev = total++;
    }
    arcs.push_back({prev, attach});
  };

  // First cycle starts at a fresh vertex; later cycles attach anywhere.
  ++total;
  add_cycle(0);
  for (int c = 1; c < num_cycles; ++c) add_cycle(rng::uniform_int(gen, 0, total - 1));
  return Digraph(total, arcs);
}

}  // namespace cactus
