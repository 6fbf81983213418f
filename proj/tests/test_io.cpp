#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "cactus/generators.hpp"
#include "cactus/io.hpp"

using cactus::Digraph;
using cactus::GraphFormat;
using cactus::ParseError;

TEST_CASE("edge-list parsing", "[io]") {
  const Digraph c2 = cactus::parse_graph("p q\nq p\n");
  CHECK(c2.vertex_count() == 2);
  CHECK(c2.label(0) == "p");
  CHECK(c2.label(1) == "q");
  CHECK(c2.has_arc(0, 1));
  CHECK(c2.has_arc(1, 0));

  const Digraph with_isolated = cactus::parse_graph("vertex z\na b\n# comment\nb a\n");
  CHECK(with_isolated.vertex_count() == 3);
  CHECK(with_isolated.label(0) == "z");
  CHECK(with_isolated.outdegree(0) == 0);
}

TEST_CASE("edge-list parse errors carry line numbers", "[io]") {
  auto line_of = [](const std::string& text) {
    try {
      cactus::parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("a a\n") == 1);                  // loop
  CHECK(line_of("a b\nb c\na b\n") == 3);        // duplicate arc
  CHECK(line_of("a b\nx y z\n") == 2);           // malformed
  CHECK(line_of("vertex\n") == 1);               // malformed declaration
  CHECK(line_of("vertex a\nvertex a\n") == 2);   // duplicate vertex
  CHECK(line_of("a b\nc d$\n") == 2);            // bad label
  CHECK(line_of("") == 0);                       // empty graph
  CHECK(line_of("# only a comment\n") == 1);
}

TEST_CASE("JSON graph parsing", "[io]") {
  const Digraph c3 = cactus::parse_graph(
      R"({"vertices":["a","b","c"],"arcs":[["a","b"],["b","c"],["c","a"]]})");
  CHECK(c3 == cactus::fixture("C3").graph);

  // vertices may be omitted; labels then appear in arc order
  const Digraph implied = cactus::parse_graph(R"({"arcs":[["q","p"],["p","q"]]})");
  CHECK(implied.label(0) == "q");

  CHECK_THROWS_AS(cactus::parse_graph(R"({"arcs":[["a","a"]]})"), ParseError);
  CHECK_THROWS_AS(cactus::parse_graph(R"({"vertices":["a"],"arcs":[["a","b"]]})"),
                  ParseError);
  CHECK_THROWS_AS(cactus::parse_graph(R"({"vertices":["a","a"]})"), ParseError);
  CHECK_THROWS_AS(cactus::parse_graph(R"({"vertices":[]})"), ParseError);
  CHECK_THROWS_AS(cactus::parse_graph("{broken"), ParseError);
}

TEST_CASE("round trips through both formats", "[io][property]") {
  for (const auto& name : cactus::fixture_names()) {
    const Digraph g = cactus::fixture(name).graph;
    INFO(name);
    CHECK(cactus::parse_graph(cactus::serialize_graph(g, GraphFormat::EdgeList)) == g);
    CHECK(cactus::parse_graph(cactus::serialize_graph(g, GraphFormat::Json)) == g);
  }
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Digraph g = cactus::random_digraph(1 + seed % 7, 0.3, seed);
    CHECK(cactus::parse_graph(cactus::serialize_graph(g, GraphFormat::EdgeList)) == g);
    CHECK(cactus::parse_graph(cactus::serialize_graph(g, GraphFormat::Json)) == g);
  }
}

TEST_CASE("morphism documents load and re-serialize", "[io]") {
  const std::string doc = R"({
    "source": {"vertices":["b","a1","x","a2","y"],
               "arcs":[["b","a1"],["a1","x"],["x","b"],["b","a2"],["a2","y"],["y","b"]]},
    "target": {"vertices":["a","x","b","y"],
               "arcs":[["a","x"],["x","b"],["a","y"],["y","b"],["b","a"]]},
    "vertex_map": {"a1":"a","a2":"a","x":"x","y":"y","b":"b"}
  })";
  const cactus::Morphism m = cactus::parse_morphism(doc);
  CHECK(m.source == cactus::fixture("E5").graph);
  CHECK(m.target == cactus::fixture("THETA").graph);
  CHECK(cactus::verify_expansion(m).is_expansion);

  const cactus::Morphism again = cactus::parse_morphism(cactus::serialize_morphism(m));
  CHECK(again == m);
}

TEST_CASE("morphism loader rejects incompatible maps", "[io]") {
  // b -> a collapses the arc (a,b) onto the missing loop (a,a).
  const std::string doc = R"({
    "source": {"arcs":[["a","b"],["b","c"],["c","a"]]},
    "target": {"arcs":[["a","b"],["b","c"],["c","a"]]},
    "vertex_map": {"a":"a","b":"a","c":"c"}
  })";
  CHECK_THROWS_AS(cactus::parse_morphism(doc), ParseError);

  const std::string partial = R"({
    "source": {"arcs":[["a","b"],["b","a"]]},
    "target": {"arcs":[["a","b"],["b","a"]]},
    "vertex_map": {"a":"a"}
  })";
  CHECK_THROWS_AS(cactus::parse_morphism(partial), ParseError);
}

TEST_CASE("morphism documents may reference graph files", "[io]") {
  const auto dir = std::filesystem::temp_directory_path() / "cactus_io_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "c3.txt") << cactus::serialize_graph(cactus::fixture("C3").graph,
                                                           GraphFormat::EdgeList);
  const std::string doc = R"({
    "source_file": "c3.txt",
    "target_file": "c3.txt",
    "vertex_map": {"a":"a","b":"b","c":"c"}
  })";
  const cactus::Morphism m = cactus::parse_morphism(doc, dir);
  CHECK(m.source == cactus::fixture("C3").graph);
  CHECK_THROWS_AS(cactus::parse_morphism(R"({"source_file":"missing.txt",
    "target_file":"missing.txt","vertex_map":{}})",
                                         dir),
                  ParseError);
}

TEST_CASE("DOT export", "[io]") {
  const Digraph c3 = cactus::fixture("C3").graph;
  const std::string dot = cactus::export_dot(c3);
  CHECK(dot ==
        "digraph {\n"
        "  \"a\";\n  \"b\";\n  \"c\";\n"
        "  \"a\" -> \"b\";\n  \"b\" -> \"c\";\n  \"c\" -> \"a\";\n"
        "}\n");
  CHECK(cactus::export_dot(c3) == dot);  // byte-deterministic

  const Digraph fig8 = cactus::fixture("FIG8").graph;
  auto check = cactus::is_cactus(fig8);
  const auto& deco = std::get<cactus::CactusDecomposition>(check);
  const std::string colored = cactus::export_dot(fig8, deco);
  CHECK(colored.find("\"a\" [shape=doublecircle];") != std::string::npos);
  CHECK(colored.find("color=crimson") != std::string::npos);
  CHECK(colored.find("color=royalblue") != std::string::npos);

  CHECK_THROWS_AS(cactus::export_dot(c3, deco), std::invalid_argument);
}
