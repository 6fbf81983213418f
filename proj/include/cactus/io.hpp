#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cactus/cactus.hpp"
#include "cactus/digraph.hpp"
#include "cactus/morphism.hpp"

namespace cactus {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  /// 1-based line of the offending input; 0 when no line applies.
  int line() const { return line_; }

 private:
  int line_ = 0;
};

enum class GraphFormat { EdgeList, Json };

namespace detail {

inline bool edge_list_safe(std::string_view label) {
  if (label.empty() || label == "vertex") return false;
  for (char c : label)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-')
      return false;
  return true;
}

class GraphBuilder {
 public:
  int declare(const std::string& label, int line, bool explicit_decl) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) {
        if (explicit_decl) throw ParseError(line, "duplicate vertex '" + label + "'");
        return static_cast<int>(i);
      }
    labels_.push_back(label);
    return static_cast<int>(labels_.size()) - 1;
  }

  bool try_find(const std::string& label) const {
    for (const auto& known : labels_)
      if (known == label) return true;
    return false;
  }

  void arc(const std::string& from, const std::string& to, int line) {
    const int x = declare(from, line, false);
    const int y = declare(to, line, false);
    if (x == y) throw ParseError(line, "loop arc '" + from + " " + to + "'");
    for (const Arc& a : arcs_)
      if (a == Arc{x, y}) throw ParseError(line, "duplicate arc '" + from + " " + to + "'");
    arcs_.push_back({x, y});
  }

  Digraph build(int line) const {
    if (labels_.empty()) throw ParseError(line, "empty graph");
    return Digraph(labels_, arcs_);
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;
};

inline Digraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError(0, "graph document must be a JSON object");
  GraphBuilder b;
  const bool explicit_vertices = doc.contains("vertices");
  if (explicit_vertices) {
    if (!doc["vertices"].is_array()) throw ParseError(0, "'vertices' must be an array");
    for (const auto& v : doc["vertices"]) {
      if (!v.is_string() || v.get<std::string>().empty())
        throw ParseError(0, "vertex labels must be nonempty strings");
      b.declare(v.get<std::string>(), 0, true);
    }
  }
  if (doc.contains("arcs")) {
    if (!doc["arcs"].is_array()) throw ParseError(0, "'arcs' must be an array");
    for (const auto& a : doc["arcs"]) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
        throw ParseError(0, "each arc must be a [from, to] label pair");
      if (explicit_vertices)
        for (int side : {0, 1})
          if (!b.try_find(a[side].get<std::string>()))
            throw ParseError(0, "arc references undeclared vertex '" +
                                    a[side].get<std::string>() + "'");
      b.arc(a[0].get<std::string>(), a[1].get<std::string>(), 0);
    }
  }
  return b.build(0);
}

inline int line_of_byte(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_of_byte(text, e.byte), std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

/// Parses either the edge-list format (`vertex <label>` declarations,
/// `<from> <to>` arc lines, `#` comments) or the JSON document form,
/// auto-detected by a leading '{'. Labels map to dense ids in
/// first-appearance order.
inline Digraph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{')
    return detail::graph_from_json(detail::parse_json(text));

  detail::GraphBuilder b;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    for (std::size_t i = tok[0] == "vertex" ? 1 : 0; i < tok.size(); ++i)
      if (!detail::edge_list_safe(tok[i]))
        throw ParseError(line_no, "bad label '" + tok[i] + "'");
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'vertex <label>'");
      b.declare(tok[1], line_no, true);
    } else if (tok.size() == 2) {
      b.arc(tok[0], tok[1], line_no);
    } else {
      throw ParseError(line_no, "expected '<from> <to>' or 'vertex <label>'");
    }
  }
  return b.build(line_no);
}

inline nlohmann::json graph_to_json(const Digraph& g) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (int v = 0; v < g.vertex_count(); ++v) doc["vertices"].push_back(g.label(v));
  doc["arcs"] = nlohmann::json::array();
  for (const Arc& a : g.arcs())
    doc["arcs"].push_back(nlohmann::json::array({g.label(a.from), g.label(a.to)}));
  return doc;
}

/// Serialization that parses back to an identical digraph (same ids, labels
/// and arcs). The edge-list form declares every vertex to pin the id order
/// and requires edge-list-safe labels.
inline std::string serialize_graph(const Digraph& g, GraphFormat format) {
  if (g.vertex_count() == 0) throw std::invalid_argument("cannot serialize an empty graph");
  if (format == GraphFormat::Json) return graph_to_json(g).dump() + "\n";
  std::string out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!detail::edge_list_safe(g.label(v)))
      throw std::invalid_argument("label '" + g.label(v) +
                                  "' is not representable in the edge-list format");
    out += "vertex " + g.label(v) + "\n";
  }
  for (const Arc& a : g.arcs()) out += g.label(a.from) + " " + g.label(a.to) + "\n";
  return out;
}

/// Morphism document: JSON with `source`/`target` graphs (inline documents
/// or `source_file`/`target_file` paths relative to `base_dir`) and a
/// `vertex_map` of source label to target label. The map must be total and
/// arc-compatible; incompatible maps are rejected at load.
inline Morphism parse_morphism(std::string_view text,
                               const std::filesystem::path& base_dir = ".") {
  const nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ParseError(0, "morphism document must be a JSON object");

  auto load_side = [&](const char* inline_key, const char* file_key) {
    if (doc.contains(inline_key)) return detail::graph_from_json(doc[inline_key]);
    if (doc.contains(file_key)) {
      const auto path = base_dir / doc[file_key].get<std::string>();
      std::ifstream in(path);
      if (!in) throw ParseError(0, "cannot open graph file '" + path.string() + "'");
      std::stringstream buffer;
      buffer << in.rdbuf();
      return parse_graph(buffer.str());
    }
    throw ParseError(0, std::string("missing '") + inline_key + "' or '" + file_key + "'");
  };
  Morphism m;
  m.source = load_side("source", "source_file");
  m.target = load_side("target", "target_file");

  if (!doc.contains("vertex_map") || !doc["vertex_map"].is_object())
    throw ParseError(0, "missing 'vertex_map' object");
  m.vertex_map.assign(m.source.vertex_count(), -1);
  for (const auto& [from, to] : doc["vertex_map"].items()) {
    const auto src = m.source.find_vertex(from);
    if (!src) throw ParseError(0, "vertex_map names unknown source vertex '" + from + "'");
    if (!to.is_string()) throw ParseError(0, "vertex_map values must be labels");
    const auto tgt = m.target.find_vertex(to.get<std::string>());
    if (!tgt)
      throw ParseError(0, "vertex_map names unknown target vertex '" +
                              to.get<std::string>() + "'");
    m.vertex_map[*src] = *tgt;
  }
  for (int v = 0; v < m.source.vertex_count(); ++v)
    if (m.vertex_map[v] < 0)
      throw ParseError(0, "vertex_map misses source vertex '" + m.source.label(v) + "'");

  const MorphismCheck check = verify_morphism(m);
  if (!check.compatible)
    throw ParseError(0, "vertex map is not a morphism: arc (" +
                            m.source.label(check.violating_arc->from) + ", " +
                            m.source.label(check.violating_arc->to) +
                            ") has no image arc");
  return m;
}

inline std::string serialize_morphism(const Morphism& m) {
  nlohmann::json doc;
  doc["source"] = graph_to_json(m.source);
  doc["target"] = graph_to_json(m.target);
  nlohmann::json map = nlohmann::json::object();
  for (int v = 0; v < m.source.vertex_count(); ++v)
    map[m.source.label(v)] = m.target.label(m.vertex_map[v]);
  doc["vertex_map"] = std::move(map);
  return doc.dump() + "\n";
}

namespace detail {

inline std::string dot_quote(std::string_view label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline constexpr const char* kDotPalette[] = {
    "crimson", "royalblue", "forestgreen", "darkorange",
    "purple",  "teal",      "goldenrod",   "deeppink",
};

}  // namespace detail

/// Plain DOT rendering; byte-deterministic for a given graph.
inline std::string export_dot(const Digraph& g) {
  std::string out = "digraph {\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    out += "  " + detail::dot_quote(g.label(v)) + ";\n";
  for (const Arc& a : g.arcs())
    out += "  " + detail::dot_quote(g.label(a.from)) + " -> " +
           detail::dot_quote(g.label(a.to)) + ";\n";
  out += "}\n";
  return out;
}

/// DOT rendering with each cycle's arcs colored by cycle index and
/// connecting points drawn as double circles. The decomposition must belong
/// to the rendered digraph.
inline std::string export_dot(const Digraph& g, const CactusDecomposition& deco) {
  if (deco.graph != g)
    throw std::invalid_argument("decomposition does not belong to this digraph");
  constexpr int palette_size = std::size(detail::kDotPalette);
  std::string out = "digraph {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out += "  " + detail::dot_quote(g.label(v));
    if (deco.is_connecting_point(v)) out += " [shape=doublecircle]";
    out += ";\n";
  }
  for (int ai = 0; ai < g.arc_count(); ++ai) {
    const Arc a = g.arcs()[ai];
    out += "  " + detail::dot_quote(g.label(a.from)) + " -> " +
           detail::dot_quote(g.label(a.to)) + " [color=" +
           detail::kDotPalette[deco.cycle_of_arc[ai] % palette_size] + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cactus
