#include <catch2/catch_amalgamated.hpp>
#include <iostream>

#include <variant>

#include "cactus/cactus.hpp"
#include "cactus/dbcp.hpp"
#include "cactus/generators.hpp"

using cactus::Digraph;

TEST_CASE("fixture expectations are re-validated by the library", "[generators]") {
  for (const auto& name : cactus::fixture_names()) {
    const auto f = cactus::fixture(name);
    INFO(name);
    CHECK(cactus::is_strongly_connected(f.graph) == f.expected.strongly_connected);
    CHECK(std::holds_alternative<cactus::CactusDecomposition>(cactus::is_cactus(f.graph)) ==
          f.expected.is_cactus);
    CHECK(cactus::find_dbcp(f.graph).has_value() == f.expected.has_dbcp);
  }
  CHECK_THROWS_AS(cactus::fixture("NOPE"), std::invalid_argument);
}

TEST_CASE("random digraphs are seed-deterministic", "[generators]") {
  const Digraph a = cactus::random_digraph(5, 0.4, 7);
  const Digraph b = cactus::random_digraph(5, 0.4, 7);
  CHECK(a == b);
  CHECK(cactus::random_digraph(5, 0.4, 8) != a);

  CHECK(cactus::random_digraph(3, 1.0, 3).arc_count() == 6);
  CHECK(cactus::random_digraph(3, 0.0, 3).arc_count() == 0);
  CHECK_THROWS_AS(cactus::random_digraph(0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("random cacti decompose as built", "[generators]") {
  const Digraph triangle = cactus::random_cactus(1, 3, 11);
  CHECK(triangle.vertex_count() <= 3);
  CHECK(std::holds_alternative<cactus::CactusDecomposition>(cactus::is_cactus(triangle)));

  const Digraph two = cactus::random_cactus(2, 3, 11);
  auto check = cactus::is_cactus(two);
  REQUIRE(std::holds_alternative<cactus::CactusDecomposition>(check));
  const auto& d = std::get<cactus::CactusDecomposition>(check);
  CHECK(d.cycles.size() == 2);
  CHECK(d.connecting_points.size() == 1);

  CHECK(cactus::random_cactus(4, 5, 9) == cactus::random_cactus(4, 5, 9));
  CHECK_THROWS_AS(cactus::random_cactus(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(cactus::random_cactus(2, 1, 1), std::invalid_argument);
}

TEST_CASE("generator soundness over a corpus", "[generators][property]") {
  int high_order_connecting_points = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Digraph g = cactus::random_cactus(1 + seed % 7, 2 + seed % 5, seed);
    auto check = cactus::is_cactus(g);
    REQUIRE(std::holds_alternative<cactus::CactusDecomposition>(check));
    const auto deg = cactus::degrees(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
      CHECK(deg[v].in == deg[v].out);
      if (deg[v].in >= 3) ++high_order_connecting_points;
    }
  }
  // Claim 3's n > 2 case needs connecting points on three or more cycles.
  std::cout << "cactus corpus coverage: " << high_order_connecting_points
            << " connecting points of order >= 3\n";
  CHECK(high_order_connecting_points > 0);
}
