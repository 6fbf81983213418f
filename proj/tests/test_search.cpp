#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <variant>
#include <vector>

#include "cactus/expansion_search.hpp"
#include "cactus/generators.hpp"
#include "support/corpus.hpp"

using cactus::CandidateAction;
using cactus::Digraph;
using cactus::Morphism;
using cactus::SearchConfig;
using cactus::SearchOutcome;

namespace {

std::vector<Morphism> collect(const Digraph& g, const SearchConfig& cfg) {
  std::vector<Morphism> out;
  const auto res = cactus::enumerate_expansions(g, cfg, [&](const Morphism& m) {
    out.push_back(m);
    return CandidateAction::Continue;
  });
  REQUIRE(res.completed);
  return out;
}

/// Independent count: sum over fiber vectors of prod over arcs (x,y) of
/// k_x^k_y, with fiber sizes in [1, bound]^n and no total cap in play.
std::uint64_t closed_form_count(const Digraph& g, int bound) {
  const int n = g.vertex_count();
  std::vector<int> sizes(n, 1);
  std::uint64_t total = 0;
  for (;;) {
    std::uint64_t product = 1;
    for (const cactus::Arc& a : g.arcs()) {
      std::uint64_t power = 1;
      for (int j = 0; j < sizes[a.to]; ++j) power *= static_cast<std::uint64_t>(sizes[a.from]);
      product *= power;
    }
    total += product;
    int i = n - 1;
    while (i >= 0 && sizes[i] == bound) sizes[i--] = 1;
    if (i < 0) return total;
    ++sizes[i];
  }
}

}  // namespace

TEST_CASE("fiber bound 1 forces the identity expansion", "[search]") {
  for (const auto& name : {"C2", "C3", "THETA", "K3S"}) {
    const Digraph g = cactus::fixture(name).graph;
    SearchConfig cfg;
    cfg.fiber_bound = 1;
    const auto all = collect(g, cfg);
    INFO(name);
    REQUIRE(all.size() == 1);
    CHECK(all[0].source == g);
    CHECK(cactus::verify_expansion(all[0]).is_expansion);
  }
}

TEST_CASE("every streamed candidate is a verified expansion", "[search][property]") {
  SearchConfig cfg;
  cfg.fiber_bound = 2;
  for (const auto& name : {"C2", "C3", "THETA"}) {
    const Digraph g = cactus::fixture(name).graph;
    cfg.max_total_vertices = 2 * g.vertex_count();
    for (const bool symmetry : {false, true}) {
      cfg.symmetry_pruning = symmetry;
      for (const Morphism& m : collect(g, cfg)) {
        const auto report = cactus::verify_expansion(m);
        CHECK(report.is_expansion);
        CHECK(cactus::check_indegree_preservation(m).preserved);
      }
    }
  }
}

TEST_CASE("unpruned candidate count matches the closed form", "[search][property]") {
  SearchConfig cfg;
  cfg.fiber_bound = 2;
  cfg.symmetry_pruning = false;
  for (int n = 1; n <= 2; ++n)
    for (const Digraph& g : testsupport::all_digraphs(n)) {
      cfg.max_total_vertices = 2 * n;
      CHECK(collect(g, cfg).size() == closed_form_count(g, 2));
    }
  // spot-check a 3-vertex graph with a nontrivial arc set
  const Digraph k3s = cactus::fixture("K3S").graph;
  cfg.max_total_vertices = 6;
  CHECK(collect(k3s, cfg).size() == closed_form_count(k3s, 2));
}

TEST_CASE("THETA's expansions include the double triangle", "[search]") {
  const Digraph theta = cactus::fixture("THETA").graph;
  const std::string e5_key = testsupport::canonical_form(cactus::fixture("E5").graph);
  SearchConfig cfg;
  cfg.fiber_bound = 2;
  cfg.max_total_vertices = 8;
  bool seen_e5 = false;
  cactus::enumerate_expansions(theta, cfg, [&](const Morphism& m) {
    if (m.source.vertex_count() == 5 && testsupport::canonical_form(m.source) == e5_key)
      seen_e5 = true;
    return CandidateAction::Continue;
  });
  CHECK(seen_e5);
}

TEST_CASE("search finds the double triangle over THETA", "[search]") {
  const Digraph theta = cactus::fixture("THETA").graph;
  SearchConfig cfg;
  cfg.fiber_bound = 2;
  const auto outcome = cactus::find_cactus_expansion(theta, cfg);
  REQUIRE(std::holds_alternative<cactus::Found>(outcome));
  const auto& found = std::get<cactus::Found>(outcome);
  CHECK(found.morphism.source.vertex_count() == 5);
  CHECK(testsupport::canonical_form(found.morphism.source) ==
        testsupport::canonical_form(cactus::fixture("E5").graph));
  // both copies of a map onto a
  const int a = *theta.find_vertex("a");
  int copies_of_a = 0;
  for (int image : found.morphism.vertex_map) copies_of_a += image == a;
  CHECK(copies_of_a == 2);
  CHECK(found.morphism.source.find_vertex("a1").has_value());
  CHECK(found.morphism.source.find_vertex("a2").has_value());
}

TEST_CASE("graphs that are already cacti return the identity", "[search]") {
  const Digraph c3 = cactus::fixture("C3").graph;
  const auto outcome = cactus::find_cactus_expansion(c3, SearchConfig{});
  REQUIRE(std::holds_alternative<cactus::Found>(outcome));
  CHECK(std::get<cactus::Found>(outcome).morphism.source == c3);
}

TEST_CASE("K3S exhausts its bounds without a cactus expansion", "[search]") {
  SearchConfig cfg;
  cfg.fiber_bound = 3;
  cfg.max_total_vertices = 12;
  const auto outcome = cactus::find_cactus_expansion(cactus::fixture("K3S").graph, cfg);
  REQUIRE(std::holds_alternative<cactus::ExhaustedBounds>(outcome));
  CHECK_FALSE(std::get<cactus::ExhaustedBounds>(outcome).proven_impossible);
}

TEST_CASE("non-strongly-connected targets are rejected outright", "[search]") {
  const Digraph broken(3, std::vector<cactus::Arc>{{0, 1}, {1, 2}});
  const auto outcome = cactus::find_cactus_expansion(broken, SearchConfig{});
  REQUIRE(std::holds_alternative<cactus::ExhaustedBounds>(outcome));
  CHECK(std::get<cactus::ExhaustedBounds>(outcome).proven_impossible);
}

TEST_CASE("a tiny node budget trips", "[search]") {
  SearchConfig cfg;
  cfg.fiber_bound = 2;
  cfg.node_budget = 3;
  const auto outcome = cactus::find_cactus_expansion(cactus::fixture("THETA").graph, cfg);
  REQUIRE(std::holds_alternative<cactus::BudgetExceeded>(outcome));
  CHECK(cactus::outcome_stats(outcome).nodes_explored == 3);

  // K3S never explores a node: every fiber vector dies at the vector-level
  // feasibility checks, so even a tiny budget is not touched.
  cfg.fiber_bound = 3;
  const auto k3s = cactus::find_cactus_expansion(cactus::fixture("K3S").graph, cfg);
  CHECK(std::holds_alternative<cactus::ExhaustedBounds>(k3s));
  CHECK(cactus::outcome_stats(k3s).nodes_explored == 0);
}

TEST_CASE("config validation", "[search]") {
  const Digraph c3 = cactus::fixture("C3").graph;
  SearchConfig bad;
  bad.fiber_bound = 0;
  CHECK_THROWS_AS(cactus::find_cactus_expansion(c3, bad), std::invalid_argument);
  bad = SearchConfig{};
  bad.max_total_vertices = 2;
  CHECK_THROWS_AS(cactus::find_cactus_expansion(c3, bad), std::invalid_argument);
  CHECK_THROWS_AS(cactus::find_cactus_expansion(Digraph(0), SearchConfig{}),
                  std::invalid_argument);
}

TEST_CASE("pruned searches reach the same verdicts as the unpruned scan",
          "[search][property]") {
  // Reference: enumerate everything (no pruning at all) and test each
  // candidate; compare against the pruned search in both symmetry modes.
  for (int n = 1; n <= 3; ++n)
    for (const Digraph& g : testsupport::all_digraphs(n)) {
      if (!cactus::is_strongly_connected(g)) continue;
      SearchConfig cfg;
      cfg.fiber_bound = 2;
      cfg.max_total_vertices = 2 * n;
      cfg.symmetry_pruning = false;
      bool reference_found = false;
      cactus::enumerate_expansions(g, cfg, [&](const Morphism& m) {
        if (std::holds_alternative<cactus::CactusDecomposition>(cactus::is_cactus(m.source))) {
          reference_found = true;
          return CandidateAction::Stop;
        }
        return CandidateAction::Continue;
      });
      for (const bool symmetry : {false, true}) {
        cfg.symmetry_pruning = symmetry;
        const auto outcome = cactus::find_cactus_expansion(g, cfg);
        INFO("n=" << n << " arcs=" << g.arc_count() << " symmetry=" << symmetry);
        CHECK(std::holds_alternative<cactus::Found>(outcome) == reference_found);
      }
    }
}

TEST_CASE("search outcomes are deterministic", "[search]") {
  SearchConfig cfg;
  cfg.fiber_bound = 2;
  const Digraph theta = cactus::fixture("THETA").graph;
  const auto a = cactus::find_cactus_expansion(theta, cfg);
  const auto b = cactus::find_cactus_expansion(theta, cfg);
  REQUIRE(std::holds_alternative<cactus::Found>(a));
  REQUIRE(std::holds_alternative<cactus::Found>(b));
  CHECK(std::get<cactus::Found>(a).morphism == std::get<cactus::Found>(b).morphism);
  CHECK(std::get<cactus::Found>(a).stats == std::get<cactus::Found>(b).stats);
}

TEST_CASE("corpus validation rows", "[search]") {
  SearchConfig cfg;
  cfg.fiber_bound = 3;
  cfg.max_total_vertices = 12;
  const Digraph c3_minus(3, std::vector<cactus::Arc>{{0, 1}, {1, 2}});
  const auto report = cactus::validate_theorem_on_corpus(
      {{"K3S", cactus::fixture("K3S").graph},
       {"THETA", cactus::fixture("THETA").graph},
       {"C3", cactus::fixture("C3").graph},
       {"FIG8", cactus::fixture("FIG8").graph},
       {"C3-minus-arc", c3_minus}},
      cfg);
  REQUIRE(report.rows.size() == 5);
  CHECK(report.all_consistent);
  CHECK_FALSE(report.any_budget_exceeded);

  const auto& k3s = report.rows[0];
  CHECK(k3s.has_dbcp);
  CHECK(std::holds_alternative<cactus::ExhaustedBounds>(k3s.outcome));

  for (int i : {1, 2, 3}) {
    CHECK_FALSE(report.rows[i].has_dbcp);
    CHECK(std::holds_alternative<cactus::Found>(report.rows[i].outcome));
  }

  const auto& broken = report.rows[4];
  CHECK_FALSE(broken.strongly_connected);
  REQUIRE(std::holds_alternative<cactus::ExhaustedBounds>(broken.outcome));
  CHECK(std::get<cactus::ExhaustedBounds>(broken.outcome).proven_impossible);
}
