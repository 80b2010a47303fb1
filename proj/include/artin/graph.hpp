#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace artin {

using VertexId = std::uint32_t;

/// Thrown when an operation's precondition fails (invalid graph, non-FC
/// input, unknown generator, exceeded bound). CLI maps this to exit 3.
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the text parsers. CLI maps this to exit 2.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Process-wide interning of generator identifiers. Words and graphs over
/// different (sub)graphs share one id space, so no translation is ever
/// needed when passing words down a subgraph chain.
namespace symbols {

struct Table {
  std::mutex mu;
  std::vector<std::string> names;
  std::map<std::string, VertexId> ids;
};

inline Table& table() {
  static Table t;
  return t;
}

inline VertexId intern(const std::string& name) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  VertexId id = static_cast<VertexId>(t.names.size());
  t.names.push_back(name);
  t.ids.emplace(name, id);
  return id;
}

inline std::string name(VertexId id) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(id);
}

}  // namespace symbols

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

/// Labelled graph of a Coxeter matrix: vertices are generators, an edge
/// s--t with label m means m_{s,t} = m, an absent edge means m = infinity.
/// The vertex order is the declaration order; it is the total order used
/// everywhere ("least vertex", HNN letter order, serialization).
class CoxeterGraph {
public:
  struct Edge {
    VertexId u, v;
    std::int64_t m;
  };

  CoxeterGraph() = default;

  void add_vertex(const std::string& name) { add_vertex(symbols::intern(name)); }
  void add_vertex(VertexId v) { verts_.push_back(v); }

  void add_edge(const std::string& u, const std::string& v, std::int64_t m) {
    add_edge(symbols::intern(u), symbols::intern(v), m);
  }
  void add_edge(VertexId u, VertexId v, std::int64_t m) {
    edges_.push_back(Edge{u, v, m});
    labels_.emplace(key(u, v), m);  // first declaration wins; duplicates are flagged by validate()
  }

  /// Convenience builder: make({"a","b"}, {{"a","b",2}}).
  static CoxeterGraph make(const std::vector<std::string>& vertices,
                           const std::vector<std::tuple<std::string, std::string, std::int64_t>>& edges = {}) {
    CoxeterGraph g;
    for (const auto& v : vertices) g.add_vertex(v);
    for (const auto& [u, v, m] : edges) g.add_edge(u, v, m);
    return g;
  }

  const std::vector<VertexId>& vertices() const { return verts_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool contains(VertexId v) const {
    return std::find(verts_.begin(), verts_.end(), v) != verts_.end();
  }

  /// Label m_{u,v}; nullopt encodes infinity (absent edge).
  std::optional<std::int64_t> label(VertexId u, VertexId v) const {
    auto it = labels_.find(key(u, v));
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  bool linked(VertexId u, VertexId v) const { return labels_.count(key(u, v)) != 0; }

  /// Neighbors of v in vertex order.
  std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (VertexId s : verts_)
      if (s != v && linked(s, v)) out.push_back(s);
    return out;
  }

  /// First structural problem, or nullopt when the graph is a valid even
  /// Coxeter graph: unique ids, declared endpoints, no self-edges, every
  /// label an even integer >= 2.
  std::optional<std::string> validate() const {
    std::set<VertexId> seen;
    for (VertexId v : verts_) {
      if (!seen.insert(v).second)
        return "duplicate id '" + symbols::name(v) + "'";
    }
    std::set<std::pair<VertexId, VertexId>> pairs;
    for (const Edge& e : edges_) {
      std::string uv = symbols::name(e.u) + " " + symbols::name(e.v);
      if (e.u == e.v) return "self-edge at '" + symbols::name(e.u) + "'";
      if (!seen.count(e.u)) return "unknown vertex '" + symbols::name(e.u) + "' in edge " + uv;
      if (!seen.count(e.v)) return "unknown vertex '" + symbols::name(e.v) + "' in edge " + uv;
      if (!pairs.insert(key(e.u, e.v)).second) return "duplicate edge " + uv;
      if (e.m < 2) return "label < 2 on edge " + uv;
      if (e.m % 2 != 0) return "odd label on edge " + uv;
    }
    return std::nullopt;
  }

  bool is_valid() const { return !validate().has_value(); }

  void require_valid() const {
    if (auto issue = validate()) throw precondition_error(*issue);
  }

  void require_vertex(VertexId v) const {
    if (!contains(v)) throw precondition_error("unknown vertex '" + symbols::name(v) + "'");
  }

  /// First triangle with fewer than two edges labelled 2, if any. Every
  /// triangle carrying two 2s is the FC criterion for even graphs.
  std::optional<std::string> fc_violation() const {
    require_valid();
    for (std::size_t i = 0; i < verts_.size(); ++i)
      for (std::size_t j = i + 1; j < verts_.size(); ++j) {
        auto mij = label(verts_[i], verts_[j]);
        if (!mij) continue;
        for (std::size_t k = j + 1; k < verts_.size(); ++k) {
          auto mik = label(verts_[i], verts_[k]);
          auto mjk = label(verts_[j], verts_[k]);
          if (!mik || !mjk) continue;
          int twos = (*mij == 2) + (*mik == 2) + (*mjk == 2);
          if (twos < 2)
            return "triangle " + symbols::name(verts_[i]) + " " + symbols::name(verts_[j]) + " " +
                   symbols::name(verts_[k]) + " has fewer than two edges labelled 2";
        }
      }
    return std::nullopt;
  }

  bool is_fc_type() const { return !fc_violation().has_value(); }

  /// Spherical classification for even graphs: complete, and each vertex
  /// meets at most one edge with label > 2.
  bool is_spherical_even() const {
    require_valid();
    for (std::size_t i = 0; i < verts_.size(); ++i)
      for (std::size_t j = i + 1; j < verts_.size(); ++j)
        if (!linked(verts_[i], verts_[j])) return false;
    for (VertexId v : verts_) {
      int big = 0;
      for (VertexId s : verts_)
        if (s != v) {
          auto m = label(v, s);
          if (m && *m > 2) ++big;
        }
      if (big > 1) return false;
    }
    return true;
  }

  /// Induced subgraph on T, labels and relative vertex order inherited.
  CoxeterGraph full_subgraph(const std::set<VertexId>& T) const {
    for (VertexId v : T) require_vertex(v);
    CoxeterGraph out;
    for (VertexId v : verts_)
      if (T.count(v)) out.add_vertex(v);
    for (const Edge& e : edges_)
      if (T.count(e.u) && T.count(e.v)) out.add_edge(e.u, e.v, e.m);
    return out;
  }

  /// lk(z): induced subgraph on the neighbors of z.
  CoxeterGraph link(VertexId z) const {
    require_vertex(z);
    auto nb = neighbors(z);
    return full_subgraph(std::set<VertexId>(nb.begin(), nb.end()));
  }

  /// Deterministic fingerprint; equal text <=> equal graph (as declared).
  std::string canonical_text() const {
    std::ostringstream os;
    for (VertexId v : verts_) os << "vertex " << symbols::name(v) << "\n";
    for (std::size_t i = 0; i < verts_.size(); ++i)
      for (std::size_t j = i + 1; j < verts_.size(); ++j)
        if (auto m = label(verts_[i], verts_[j]))
          os << "edge " << symbols::name(verts_[i]) << " " << symbols::name(verts_[j]) << " " << *m << "\n";
    return os.str();
  }

  friend bool operator==(const CoxeterGraph& a, const CoxeterGraph& b) {
    return a.canonical_text() == b.canonical_text();
  }

private:
  static std::pair<VertexId, VertexId> key(VertexId u, VertexId v) {
    return {std::min(u, v), std::max(u, v)};
  }

  std::vector<VertexId> verts_;
  std::vector<Edge> edges_;
  std::map<std::pair<VertexId, VertexId>, std::int64_t> labels_;
};

/// Everything the splitting at z needs: the link L, Gamma_1 = Gamma - z,
/// the subgraph L1 of L where k_s = 1, the HNN letters x_i (vertices of
/// L - L1 in vertex order), their stars S_i = lk(x_i, L), and the
/// half-labels k_s with m_{z,s} = 2 k_s.
struct DecompositionData {
  VertexId z = 0;
  CoxeterGraph link_L;
  CoxeterGraph gamma1;
  CoxeterGraph L1;
  std::vector<VertexId> hnn_letters;
  std::map<VertexId, CoxeterGraph> star;
  std::map<VertexId, std::int64_t> half_labels;

  std::int64_t k(VertexId s) const {
    auto it = half_labels.find(s);
    if (it == half_labels.end()) throw precondition_error("vertex '" + symbols::name(s) + "' not in link");
    return it->second;
  }
  bool is_hnn_letter(VertexId s) const {
    return std::find(hnn_letters.begin(), hnn_letters.end(), s) != hnn_letters.end();
  }
};

inline DecompositionData decompose_at(const CoxeterGraph& g, VertexId z) {
  g.require_valid();
  g.require_vertex(z);
  if (auto issue = g.fc_violation())
    throw precondition_error("graph is not of FC type: " + *issue);

  DecompositionData dd;
  dd.z = z;
  std::set<VertexId> rest(g.vertices().begin(), g.vertices().end());
  rest.erase(z);
  dd.gamma1 = g.full_subgraph(rest);
  dd.link_L = g.link(z);

  std::set<VertexId> l1;
  for (VertexId s : dd.link_L.vertices()) {
    std::int64_t m = *g.label(z, s);
    dd.half_labels[s] = m / 2;
    if (m == 2) l1.insert(s);
  }
  dd.L1 = dd.link_L.full_subgraph(l1);
  for (VertexId s : dd.link_L.vertices())
    if (!l1.count(s)) dd.hnn_letters.push_back(s);

  // Lemma 3.3 safety: for linked s,t in L, k_s = 1 or k_t = 1, and
  // k_s > 1 forces m_{s,t} = 2. Guaranteed on FC input, verified anyway.
  const auto& lv = dd.link_L.vertices();
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (std::size_t j = i + 1; j < lv.size(); ++j) {
      auto m = dd.link_L.label(lv[i], lv[j]);
      if (!m) continue;
      std::int64_t ki = dd.half_labels[lv[i]], kj = dd.half_labels[lv[j]];
      if (ki > 1 && kj > 1)
        throw precondition_error("link of '" + symbols::name(z) + "' violates the FC link condition at edge " +
                                 symbols::name(lv[i]) + " " + symbols::name(lv[j]));
      if ((ki > 1 || kj > 1) && *m != 2)
        throw precondition_error("link of '" + symbols::name(z) + "' violates the FC link condition at edge " +
                                 symbols::name(lv[i]) + " " + symbols::name(lv[j]));
    }

  for (VertexId x : dd.hnn_letters) dd.star.emplace(x, dd.link_L.link(x));
  return dd;
}

/// X_i of the tower: the subgraph of L spanned by V(L1) and x_1..x_i.
inline CoxeterGraph tower_stage_subgraph(const DecompositionData& dd, std::size_t i) {
  std::set<VertexId> verts(dd.L1.vertices().begin(), dd.L1.vertices().end());
  for (std::size_t j = 0; j < i && j < dd.hnn_letters.size(); ++j) verts.insert(dd.hnn_letters[j]);
  return dd.link_L.full_subgraph(verts);
}

}  // namespace artin
