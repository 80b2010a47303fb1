#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "artin/graph.hpp"

namespace artin {

/// Line-oriented graph format: `vertex <id>` and `edge <id> <id> <label>`
/// records, one per line; blank lines and `#` comments are skipped;
/// duplicate records and undeclared endpoints are parse errors. Label
/// values are checked later by validate() (odd labels are a precondition
/// failure, not a parse failure).
inline CoxeterGraph parse_graph_text(const std::string& text) {
  CoxeterGraph g;
  std::set<std::string> declared;
  std::set<std::pair<std::string, std::string>> edges;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::pair<std::string, int>> tokens;  // token, 1-based column
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
    }
    if (tokens.empty() || tokens[0].first[0] == '#') continue;

    const auto& [kind, kindcol] = tokens[0];
    if (kind == "vertex") {
      if (tokens.size() != 2) throw parse_error("vertex record needs exactly one identifier", lineno, kindcol);
      const auto& [id, col] = tokens[1];
      if (!valid_identifier(id)) throw parse_error("bad identifier '" + id + "'", lineno, col);
      if (!declared.insert(id).second) throw parse_error("duplicate vertex record '" + id + "'", lineno, col);
      g.add_vertex(id);
    } else if (kind == "edge") {
      if (tokens.size() != 4) throw parse_error("edge record needs two identifiers and a label", lineno, kindcol);
      const auto& [u, ucol] = tokens[1];
      const auto& [v, vcol] = tokens[2];
      const auto& [ms, mcol] = tokens[3];
      if (!valid_identifier(u)) throw parse_error("bad identifier '" + u + "'", lineno, ucol);
      if (!valid_identifier(v)) throw parse_error("bad identifier '" + v + "'", lineno, vcol);
      if (!declared.count(u)) throw parse_error("undeclared vertex '" + u + "' in edge", lineno, ucol);
      if (!declared.count(v)) throw parse_error("undeclared vertex '" + v + "' in edge", lineno, vcol);
      auto key = std::minmax(u, v);
      if (!edges.insert(key).second) throw parse_error("duplicate edge record " + u + " " + v, lineno, ucol);
      std::size_t used = 0;
      std::int64_t m = 0;
      try {
        m = std::stoll(ms, &used);
      } catch (const std::exception&) {
        throw parse_error("bad label '" + ms + "'", lineno, mcol);
      }
      if (used != ms.size()) throw parse_error("bad label '" + ms + "'", lineno, mcol);
      g.add_edge(u, v, m);
    } else {
      throw parse_error("unknown record '" + kind + "'", lineno, kindcol);
    }
  }
  return g;
}

/// Structured form: {"vertices": ["a", ...], "edges": [["a","b",2], ...]}.
inline CoxeterGraph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("json: ") + e.what(), 1, static_cast<int>(e.byte));
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw parse_error("json: expected an object with a 'vertices' array", 1, 1);

  CoxeterGraph g;
  std::set<std::string> declared;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw parse_error("json: vertex ids must be strings", 1, 1);
    std::string id = v.get<std::string>();
    if (!valid_identifier(id)) throw parse_error("json: bad identifier '" + id + "'", 1, 1);
    if (!declared.insert(id).second) throw parse_error("json: duplicate vertex '" + id + "'", 1, 1);
    g.add_vertex(id);
  }
  std::set<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw parse_error("json: 'edges' must be an array", 1, 1);
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() || !e[2].is_number_integer())
        throw parse_error("json: each edge must be [id, id, label]", 1, 1);
      std::string u = e[0].get<std::string>(), v = e[1].get<std::string>();
      if (!declared.count(u)) throw parse_error("json: undeclared vertex '" + u + "' in edge", 1, 1);
      if (!declared.count(v)) throw parse_error("json: undeclared vertex '" + v + "' in edge", 1, 1);
      auto key = std::minmax(u, v);
      if (!edges.insert(key).second) throw parse_error("json: duplicate edge " + u + " " + v, 1, 1);
      g.add_edge(u, v, e[2].get<std::int64_t>());
    }
  }
  return g;
}

inline CoxeterGraph parse_graph(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_graph_json(text) : parse_graph_text(text);
  }
  return CoxeterGraph{};
}

inline CoxeterGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace artin
