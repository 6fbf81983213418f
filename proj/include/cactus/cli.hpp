#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cactus/cactus.hpp"
#include "cactus/dbcp.hpp"
#include "cactus/digraph.hpp"
#include "cactus/expansion_search.hpp"
#include "cactus/generators.hpp"
#include "cactus/io.hpp"
#include "cactus/morphism.hpp"

namespace cactus {

// Exit codes: 0 property holds / object found, 1 property fails / proven
// absent, 2 usage or parse error, 3 bounds or budget exhausted
// (inconclusive).
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

namespace cli_detail {

using nlohmann::json;

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool json_mode = false;

  void emit(const json& record, const std::string& text) const {
    if (json_mode)
      out << record.dump() << "\n";
    else
      out << text;
  }
};

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Digraph load_graph(const std::string& path) { return parse_graph(read_input(path)); }

inline json labels_of(const Digraph& g, std::span<const int> vertices) {
  json arr = json::array();
  for (int v : vertices) arr.push_back(g.label(v));
  return arr;
}

inline std::string joined_labels(const Digraph& g, std::span<const int> vertices) {
  std::string out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i > 0) out += " ";
    out += g.label(vertices[i]);
  }
  return out;
}

inline json arc_json(const Digraph& g, Arc a) {
  return json::array({g.label(a.from), g.label(a.to)});
}

inline json stats_json(const SearchStats& s) {
  return json{{"fiber_vectors", s.fiber_vectors_tried},
              {"candidates", s.candidates_built},
              {"cactus_checks", s.cactus_checks},
              {"nodes", s.nodes_explored},
              {"balance_prunes", s.balance_prunes},
              {"vector_balance_prunes", s.vector_balance_prunes},
              {"size_bound_prunes", s.size_bound_prunes},
              {"symmetry_prunes", s.symmetry_prunes}};
}

inline std::string stats_text(const SearchStats& s) {
  return "stats: fiber-vectors=" + std::to_string(s.fiber_vectors_tried) +
         " candidates=" + std::to_string(s.candidates_built) +
         " cactus-checks=" + std::to_string(s.cactus_checks) +
         " nodes=" + std::to_string(s.nodes_explored) +
         " balance-prunes=" + std::to_string(s.balance_prunes) +
         " vector-balance-prunes=" + std::to_string(s.vector_balance_prunes) +
         " size-bound-prunes=" + std::to_string(s.size_bound_prunes) +
         " symmetry-prunes=" + std::to_string(s.symmetry_prunes) + "\n";
}

inline const char* reason_word(NotCactus::Reason r) {
  switch (r) {
    case NotCactus::Reason::NotStronglyConnected: return "not-strongly-connected";
    case NotCactus::Reason::ArcInNoCycle: return "arc-in-no-cycle";
    case NotCactus::Reason::ArcInTwoCycles: return "arc-in-two-cycles";
  }
  return "?";
}

inline const char* relation_word(PreorderRelation r) {
  switch (r) {
    case PreorderRelation::StrictlyLess: return "less";
    case PreorderRelation::StrictlyGreater: return "greater";
    case PreorderRelation::Equivalent: return "equivalent";
    case PreorderRelation::Incomparable: return "incomparable";
  }
  return "?";
}

inline int check_sc(const Ctx& ctx, const Digraph& g) {
  const bool sc = is_strongly_connected(g);
  ctx.emit({{"command", "check-sc"}, {"strongly_connected", sc}},
           std::string("strongly connected: ") + (sc ? "yes" : "no") + "\n");
  return sc ? kExitHolds : kExitFails;
}

inline int check_cactus(const Ctx& ctx, const Digraph& g) {
  const CactusCheck check = is_cactus(g);
  if (const auto* d = std::get_if<CactusDecomposition>(&check)) {
    json record{{"command", "check-cactus"}, {"is_cactus", true}};
    record["cycles"] = json::array();
    std::string text = "cactus: yes\n";
    for (std::size_t ci = 0; ci < d->cycles.size(); ++ci) {
      record["cycles"].push_back(labels_of(g, d->cycles[ci].vertices()));
      text += "cycle " + std::to_string(ci) + ": " +
              joined_labels(g, d->cycles[ci].vertices()) + "\n";
    }
    record["connecting_points"] = labels_of(g, d->connecting_points);
    text += "connecting points: " +
            (d->connecting_points.empty() ? std::string("(none)")
                                          : joined_labels(g, d->connecting_points)) +
            "\n";
    ctx.emit(record, text);
    return kExitHolds;
  }
  const auto& f = std::get<NotCactus>(check);
  json record{{"command", "check-cactus"}, {"is_cactus", false},
              {"reason", reason_word(f.reason)}};
  std::string text = "cactus: no\nreason: ";
  text += reason_word(f.reason);
  text += "\n";
  if (f.witness_arc) {
    record["witness_arc"] = arc_json(g, *f.witness_arc);
    text += "arc: " + g.label(f.witness_arc->from) + " " + g.label(f.witness_arc->to) + "\n";
  }
  if (f.witness_cycles) {
    record["witness_cycles"] = json::array({labels_of(g, f.witness_cycles->first.vertices()),
                                            labels_of(g, f.witness_cycles->second.vertices())});
    text += "cycle: " + joined_labels(g, f.witness_cycles->first.vertices()) + "\n";
    text += "cycle: " + joined_labels(g, f.witness_cycles->second.vertices()) + "\n";
  }
  ctx.emit(record, text);
  return kExitFails;
}

inline int report_dbcp(const Ctx& ctx, const char* command, const Digraph& g,
                       const std::optional<DbcpWitness>& witness) {
  if (!witness) {
    ctx.emit({{"command", command}, {"found", false}}, "dbcp: none\n");
    return kExitFails;
  }
  json record{{"command", command},
              {"found", true},
              {"pair", json::array({g.label(witness->p), g.label(witness->q)})}};
  record["forward"] = json::array({labels_of(g, witness->forward[0].vertices()),
                                   labels_of(g, witness->forward[1].vertices())});
  record["backward"] = json::array({labels_of(g, witness->backward[0].vertices()),
                                    labels_of(g, witness->backward[1].vertices())});
  std::string text = "dbcp: " + g.label(witness->p) + " " + g.label(witness->q) + "\n";
  for (const Path& p : witness->forward)
    text += "forward: " + joined_labels(g, p.vertices()) + "\n";
  for (const Path& p : witness->backward)
    text += "backward: " + joined_labels(g, p.vertices()) + "\n";
  ctx.emit(record, text);
  return kExitHolds;
}

inline int verify_expansion_cmd(const Ctx& ctx, const Morphism& m) {
  const ExpansionReport r = verify_expansion(m);
  json record{{"command", "verify-expansion"},
              {"vertex_surjective", r.vertex_surjective},
              {"arc_surjective", r.arc_surjective},
              {"unique_lift", r.unique_lift},
              {"is_expansion", r.is_expansion}};
  std::string text;
  text += std::string("vertex-surjective: ") + (r.vertex_surjective ? "yes" : "no");
  if (r.unhit_vertex) {
    record["unhit_vertex"] = m.target.label(*r.unhit_vertex);
    text += " (vertex " + m.target.label(*r.unhit_vertex) + " unhit)";
  }
  text += "\narc-surjective: " + std::string(r.arc_surjective ? "yes" : "no");
  if (r.unhit_arc) {
    record["unhit_arc"] = arc_json(m.target, *r.unhit_arc);
    text += " (arc " + m.target.label(r.unhit_arc->from) + " " +
            m.target.label(r.unhit_arc->to) + " unhit)";
  }
  text += "\nunique-lift: " + std::string(r.unique_lift ? "yes" : "no");
  if (r.lift_witness) {
    record["lift_witness"] = json{{"target_arc", arc_json(m.target, r.lift_witness->target_arc)},
                                  {"source_vertex", m.source.label(r.lift_witness->source_vertex)},
                                  {"lift_count", r.lift_witness->lift_count}};
    text += " (arc " + m.target.label(r.lift_witness->target_arc.from) + " " +
            m.target.label(r.lift_witness->target_arc.to) + ", vertex " +
            m.source.label(r.lift_witness->source_vertex) + ", " +
            std::to_string(r.lift_witness->lift_count) + " lifts)";
  }
  text += "\nexpansion: " + std::string(r.is_expansion ? "yes" : "no") + "\n";
  ctx.emit(record, text);
  return r.is_expansion ? kExitHolds : kExitFails;
}

inline int find_expansion_cmd(const Ctx& ctx, const Digraph& g, const SearchConfig& cfg) {
  const SearchOutcome outcome = find_cactus_expansion(g, cfg);
  if (const auto* found = std::get_if<Found>(&outcome)) {
    const Morphism& m = found->morphism;
    json map = json::object();
    for (int v = 0; v < m.source.vertex_count(); ++v)
      map[m.source.label(v)] = m.target.label(m.vertex_map[v]);
    json record{{"command", "find-expansion"},
                {"outcome", "found"},
                {"source", graph_to_json(m.source)},
                {"vertex_map", std::move(map)},
                {"stats", stats_json(found->stats)}};
    std::string text = "outcome: found\nsource:\n";
    text += serialize_graph(m.source, GraphFormat::EdgeList);
    for (int v = 0; v < m.source.vertex_count(); ++v)
      text += "map: " + m.source.label(v) + " -> " + m.target.label(m.vertex_map[v]) + "\n";
    text += stats_text(found->stats);
    ctx.emit(record, text);
    return kExitHolds;
  }
  if (const auto* exhausted = std::get_if<ExhaustedBounds>(&outcome)) {
    if (exhausted->proven_impossible) {
      ctx.emit({{"command", "find-expansion"},
                {"outcome", "impossible"},
                {"proven_impossible", true},
                {"stats", stats_json(exhausted->stats)}},
               "outcome: impossible (target is not strongly connected)\n");
      return kExitFails;
    }
    ctx.emit({{"command", "find-expansion"},
              {"outcome", "exhausted"},
              {"proven_impossible", false},
              {"stats", stats_json(exhausted->stats)}},
             "outcome: exhausted (no cactus expansion within bounds; inconclusive)\n" +
                 stats_text(exhausted->stats));
    return kExitInconclusive;
  }
  const auto& budget = std::get<BudgetExceeded>(outcome);
  ctx.emit({{"command", "find-expansion"},
            {"outcome", "budget-exceeded"},
            {"stats", stats_json(budget.stats)}},
           "outcome: budget-exceeded (inconclusive)\n" + stats_text(budget.stats));
  return kExitInconclusive;
}

inline int preorder_cmd(const Ctx& ctx, const Digraph& g, const std::string& root_label) {
  const auto root = g.find_vertex(root_label);
  if (!root) throw ParseError(0, "unknown root vertex '" + root_label + "'");
  CactusCheck check = is_cactus(g);
  if (const auto* f = std::get_if<NotCactus>(&check)) {
    ctx.emit({{"command", "preorder"}, {"is_cactus", false}, {"reason", reason_word(f->reason)}},
             std::string("cactus: no\nreason: ") + reason_word(f->reason) + "\n");
    return kExitFails;
  }
  const RootedPreorder p(std::get<CactusDecomposition>(std::move(check)), *root);
  const auto& d = p.decomposition();

  json record{{"command", "preorder"}, {"is_cactus", true}, {"root", root_label}};
  std::string text = "root: " + root_label + "\n";
  record["cycles"] = json::array();
  for (std::size_t ci = 0; ci < d.cycles.size(); ++ci) {
    const int min_point = p.cycle_minimum_point(static_cast<int>(ci));
    record["cycles"].push_back(json{{"index", ci},
                                    {"vertices", labels_of(g, d.cycles[ci].vertices())},
                                    {"minimum_point", g.label(min_point)}});
    text += "cycle " + std::to_string(ci) + ": " + joined_labels(g, d.cycles[ci].vertices()) +
            " (minimum point " + g.label(min_point) + ")\n";
  }
  json subcactus = json::object();
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto cycles = p.minimal_subcactus(v);
    subcactus[g.label(v)] = cycles;
    text += "C(" + g.label(v) + ") = {";
    for (std::size_t i = 0; i < cycles.size(); ++i)
      text += (i ? " " : "") + std::to_string(cycles[i]);
    text += "}\n";
  }
  record["subcactus"] = std::move(subcactus);
  record["relations"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int w = v + 1; w < g.vertex_count(); ++w) {
      const char* rel = relation_word(p.compare(v, w));
      record["relations"].push_back(
          json{{"v", g.label(v)}, {"w", g.label(w)}, {"relation", rel}});
      text += "rel " + g.label(v) + " " + g.label(w) + ": " + rel + "\n";
    }
  ctx.emit(record, text);
  return kExitHolds;
}

inline int corpus_validate_cmd(const Ctx& ctx, const std::vector<std::string>& files,
                               const SearchConfig& cfg) {
  std::vector<std::pair<std::string, Digraph>> corpus;
  for (const std::string& file : files) corpus.emplace_back(file, load_graph(file));
  const CorpusReport report = validate_theorem_on_corpus(corpus, cfg);
  for (const CorpusRow& row : report.rows) {
    const char* outcome = "exhausted";
    if (std::holds_alternative<Found>(row.outcome)) outcome = "found";
    else if (std::holds_alternative<BudgetExceeded>(row.outcome)) outcome = "budget-exceeded";
    else if (std::get<ExhaustedBounds>(row.outcome).proven_impossible) outcome = "impossible";
    ctx.emit({{"command", "corpus-validate"},
              {"graph", row.id},
              {"has_dbcp", row.has_dbcp},
              {"strongly_connected", row.strongly_connected},
              {"outcome", outcome},
              {"stats", stats_json(outcome_stats(row.outcome))},
              {"consistent", row.consistent}},
             row.id + ": dbcp=" + (row.has_dbcp ? "yes" : "no") +
                 " sc=" + (row.strongly_connected ? "yes" : "no") + " outcome=" + outcome +
                 " consistent=" + (row.consistent ? "yes" : "no") + "\n");
  }
  ctx.emit({{"command", "corpus-validate"},
            {"summary", true},
            {"rows", report.rows.size()},
            {"all_consistent", report.all_consistent},
            {"any_budget_exceeded", report.any_budget_exceeded}},
           "summary: rows=" + std::to_string(report.rows.size()) +
               " all-consistent=" + (report.all_consistent ? "yes" : "no") +
               " budget-exceeded=" + (report.any_budget_exceeded ? "yes" : "no") + "\n");
  if (!report.all_consistent) return kExitFails;
  if (report.any_budget_exceeded) return kExitInconclusive;
  return kExitHolds;
}

inline int print_graph(const Ctx& ctx, const Digraph& g) {
  ctx.out << serialize_graph(g, ctx.json_mode ? GraphFormat::Json : GraphFormat::EdgeList);
  return kExitHolds;
}

inline int export_dot_cmd(const Ctx& ctx, const Digraph& g, bool color_cycles) {
  std::string dot;
  if (color_cycles) {
    CactusCheck check = is_cactus(g);
    if (const auto* f = std::get_if<NotCactus>(&check)) {
      ctx.emit({{"command", "export-dot"}, {"is_cactus", false}, {"reason", reason_word(f->reason)}},
               std::string("cactus: no\nreason: ") + reason_word(f->reason) + "\n");
      return kExitFails;
    }
    dot = export_dot(g, std::get<CactusDecomposition>(check));
  } else {
    dot = export_dot(g);
  }
  ctx.emit({{"command", "export-dot"}, {"dot", dot}}, dot);
  return kExitHolds;
}

}  // namespace cli_detail

/// Command-line driver; `args` excludes the program name. All regular
/// output goes to `out`, diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  namespace cd = cli_detail;

  CLI::App app{"digraph expansions, cactus analysis and dbcp detection"};
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string graph_path = "-";
  std::string morphism_path = "-";
  std::string p_label, q_label, root_label, fixture_name;
  std::vector<std::string> corpus_files;
  bool color_cycles = false;

  SearchConfig cfg;
  std::string gen_kind = "digraph";
  int gen_nodes = 5;
  double gen_arc_prob = 0.3;
  int gen_cycles = 3;
  int gen_max_cycle_len = 4;
  std::uint64_t seed = 1;

  auto add_graph_arg = [&](CLI::App* sub) {
    sub->add_option("graph", graph_path, "graph file, or - for stdin");
  };
  auto add_search_flags = [&](CLI::App* sub) {
    sub->add_option("--fiber-bound", cfg.fiber_bound, "max copies per vertex");
    sub->add_option("--max-vertices", cfg.max_total_vertices,
                    "cap on expansion size (0 = 3|V|)");
    sub->add_option("--budget", cfg.node_budget, "search node budget");
  };

  auto* sc = app.add_subcommand("check-sc", "test strong connectivity");
  add_graph_arg(sc);
  auto* cac = app.add_subcommand("check-cactus", "test the cactus property");
  add_graph_arg(cac);
  auto* fdb = app.add_subcommand("find-dbcp", "find a doubly bidirectionally connected pair");
  add_graph_arg(fdb);
  auto* cdb = app.add_subcommand("check-dbcp", "test a specific pair");
  add_graph_arg(cdb);
  cdb->add_option("p", p_label)->required();
  cdb->add_option("q", q_label)->required();
  auto* vex = app.add_subcommand("verify-expansion", "check the expansion axioms of a morphism");
  vex->add_option("morphism", morphism_path, "morphism JSON file, or - for stdin");
  auto* fex = app.add_subcommand("find-expansion", "search for a cactus expansion");
  add_graph_arg(fex);
  add_search_flags(fex);
  auto* pre = app.add_subcommand("preorder", "rooted preorder of a cactus");
  add_graph_arg(pre);
  pre->add_option("--root", root_label, "root vertex label")->required();
  auto* cor = app.add_subcommand("corpus-validate", "dbcp/expansion consistency over a corpus");
  cor->add_option("graphs", corpus_files, "graph files")->required();
  add_search_flags(cor);
  auto* gen = app.add_subcommand("gen", "generate a random graph");
  gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"digraph", "cactus"}));
  gen->add_option("--nodes", gen_nodes);
  gen->add_option("--arc-prob", gen_arc_prob);
  gen->add_option("--cycles", gen_cycles);
  gen->add_option("--max-cycle-len", gen_max_cycle_len);
  gen->add_option("--seed", seed);
  auto* fix = app.add_subcommand("fixture", "print a named fixture graph");
  fix->add_option("name", fixture_name)->required();
  auto* dot = app.add_subcommand("export-dot", "render a graph as DOT");
  add_graph_arg(dot);
  dot->add_flag("--color-cycles", color_cycles, "color arcs by cactus cycle");

  app.require_subcommand(1);

  std::vector<const char*> argv{"cactus"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  const cd::Ctx ctx{out, err, format == "json"};
  try {
    if (*sc) return cd::check_sc(ctx, cd::load_graph(graph_path));
    if (*cac) return cd::check_cactus(ctx, cd::load_graph(graph_path));
    if (*fdb) {
      const Digraph g = cd::load_graph(graph_path);
      return cd::report_dbcp(ctx, "find-dbcp", g, find_dbcp(g));
    }
    if (*cdb) {
      const Digraph g = cd::load_graph(graph_path);
      const auto p = g.find_vertex(p_label), q = g.find_vertex(q_label);
      if (!p) throw ParseError(0, "unknown vertex '" + p_label + "'");
      if (!q) throw ParseError(0, "unknown vertex '" + q_label + "'");
      return cd::report_dbcp(ctx, "check-dbcp", g, is_dbcp(g, *p, *q));
    }
    if (*vex) {
      const auto base = morphism_path == "-"
                            ? std::filesystem::current_path()
                            : std::filesystem::absolute(morphism_path).parent_path();
      return cd::verify_expansion_cmd(ctx, parse_morphism(cd::read_input(morphism_path), base));
    }
    if (*fex) return cd::find_expansion_cmd(ctx, cd::load_graph(graph_path), cfg);
    if (*pre) return cd::preorder_cmd(ctx, cd::load_graph(graph_path), root_label);
    if (*cor) return cd::corpus_validate_cmd(ctx, corpus_files, cfg);
    if (*gen) {
      const Digraph g = gen_kind == "cactus"
                            ? random_cactus(gen_cycles, gen_max_cycle_len, seed)
                            : random_digraph(gen_nodes, gen_arc_prob, seed);
      return cd::print_graph(ctx, g);
    }
    if (*fix) return cd::print_graph(ctx, fixture(fixture_name).graph);
    if (*dot) return cd::export_dot_cmd(ctx, cd::load_graph(graph_path), color_cycles);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace cactus
