#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "artin/engine.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Small permutations (one-line notation on 0..d-1).
// ---------------------------------------------------------------------------

using Perm = std::vector<std::uint8_t>;

inline Perm identity_perm(int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

/// (p * q)(i) = p(q(i)); words evaluate left-to-right via eval_word below.
inline Perm compose(const Perm& p, const Perm& q) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[q[i]];
  return out;
}

inline Perm inverse_perm(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint8_t>(i);
  return out;
}

/// Cycle notation on 1-based points, fixed points omitted; "id" when trivial.
inline std::string cycle_string(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

/// Sorted cycle lengths, fixed points included.
inline std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      ++len;
      j = p[j];
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All permutations of degree d in lexicographic one-line order.
inline std::vector<Perm> all_perms(int degree) {
  std::vector<Perm> out;
  Perm p = identity_perm(degree);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// First permutation of each cycle type, in lexicographic order; conjugating
/// a representation moves the first generator's image inside its type, so
/// restricting the first generator to these is a pure symmetry reduction.
inline std::vector<Perm> cycle_type_reps(int degree) {
  std::vector<Perm> out;
  std::vector<std::vector<int>> seen;
  for (const Perm& p : all_perms(degree)) {
    auto t = cycle_type(p);
    if (std::find(seen.begin(), seen.end(), t) == seen.end()) {
      seen.push_back(t);
      out.push_back(p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The amalgam splitting at a non-edge.
// ---------------------------------------------------------------------------

/// X = S - {s}, Y = S - {t}, Z = S - {s,t} for the least pair with
/// m_{s,t} = infinity.
struct AmalgamSplit {
  VertexId s, t;
  std::vector<VertexId> X, Y, Z;
};

/// nullopt means the graph is complete (spherical even case; no splitting).
inline std::optional<AmalgamSplit> amalgam_split(const CoxeterGraph& g) {
  g.require_valid();
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (g.linked(vs[i], vs[j])) continue;
      AmalgamSplit out;
      out.s = vs[i];
      out.t = vs[j];
      for (VertexId v : vs) {
        if (v != out.s) out.X.push_back(v);
        if (v != out.t) out.Y.push_back(v);
        if (v != out.s && v != out.t) out.Z.push_back(v);
      }
      return out;
    }
  return std::nullopt;
}

/// Samples words to confirm that pi_Z restricted to A_X (and A_Y) is a
/// retraction fixing A_Z, i.e. the semidirect hypotheses of the splitting.
/// Returns the first violation found, nullopt when all samples pass.
inline std::optional<std::string> check_split_retractions(const CoxeterGraph& g,
                                                          const AmalgamSplit& split,
                                                          int samples = 100) {
  std::set<VertexId> Z(split.Z.begin(), split.Z.end());
  CoxeterGraph gz = g.full_subgraph(Z);
  auto zctx = ArtinContext::get(gz);
  std::mt19937 rng(0xA51u);

  auto random_word = [&](const std::vector<VertexId>& alphabet, int len) {
    Word w;
    for (int i = 0; i < len; ++i) {
      VertexId v = alphabet[rng() % alphabet.size()];
      w.push_back(Letter{v, rng() % 2 ? +1 : -1});
    }
    return w;
  };

  for (const auto& side : {split.X, split.Y}) {
    if (side.empty()) continue;
    for (int n = 0; n < samples; ++n) {
      Word w = random_word(side, 1 + static_cast<int>(rng() % 8));
      Word r = retract(g, Z, w);
      if (retract(g, Z, r) != r)
        return "retraction is not idempotent on " + to_string(w);
      if (!Z.empty()) {
        Word zw = random_word(split.Z, 1 + static_cast<int>(rng() % 8));
        if (!zctx->words_equal(retract(g, Z, zw), zw))
          return "retraction moves the Z-word " + to_string(zw);
        // homomorphism sample: pi_Z(zw . w) = zw . pi_Z(w)
        if (!zctx->words_equal(retract(g, Z, concat(zw, w)), concat(zw, r)))
          return "retraction is not multiplicative at " + to_string(concat(zw, w));
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite-quotient separation search.
// ---------------------------------------------------------------------------

struct FiniteWitness {
  enum class Kind { cyclic, permutation };
  Kind kind = Kind::cyclic;

  // cyclic Z/n on exponent sums
  std::int64_t modulus = 0;
  std::vector<std::pair<VertexId, std::int64_t>> cyclic_assignment;
  std::int64_t cyclic_image = 0;

  // permutation representation
  int degree = 0;
  std::vector<std::pair<VertexId, Perm>> perm_assignment;
  Perm perm_image;

  std::string to_text() const {
    std::ostringstream os;
    if (kind == Kind::cyclic) {
      os << "target: Z/" << modulus << "\n";
      for (const auto& [v, r] : cyclic_assignment) os << "gen " << symbols::name(v) << " -> " << r << "\n";
      os << "image -> " << cyclic_image << "\n";
    } else {
      os << "target: S" << degree << "\n";
      for (const auto& [v, p] : perm_assignment) os << "gen " << symbols::name(v) << " -> " << cycle_string(p) << "\n";
      os << "image -> " << cycle_string(perm_image) << "\n";
    }
    return os.str();
  }
};

enum class SeparateStatus { witness, not_found, trivial_input };

struct SeparateResult {
  SeparateStatus status;
  std::optional<FiniteWitness> witness;
};

inline Perm eval_word_perm(const Word& w, const std::vector<VertexId>& gens,
                           const std::vector<Perm>& images, int degree) {
  Perm acc = identity_perm(degree);
  for (const Letter& l : w) {
    std::size_t idx = std::find(gens.begin(), gens.end(), l.gen) - gens.begin();
    const Perm& g = images[idx];
    acc = compose(acc, l.sign > 0 ? g : inverse_perm(g));
  }
  return acc;
}

/// Every defining relator maps to the identity and w maps away from it.
inline bool witness_sound(const CoxeterGraph& g, const Word& w, const FiniteWitness& fw) {
  if (fw.kind == FiniteWitness::Kind::cyclic) {
    auto residue = [&](const Word& v) {
      std::int64_t r = 0;
      for (const Letter& l : v)
        for (const auto& [gen, val] : fw.cyclic_assignment)
          if (gen == l.gen) r += l.sign * val;
      return ((r % fw.modulus) + fw.modulus) % fw.modulus;
    };
    for (const Word& rel : defining_relators(g))
      if (residue(rel) != 0) return false;
    return residue(w) != 0;
  }
  std::vector<VertexId> gens = g.vertices();
  std::vector<Perm> images(gens.size());
  for (const auto& [gen, p] : fw.perm_assignment) {
    std::size_t idx = std::find(gens.begin(), gens.end(), gen) - gens.begin();
    images[idx] = p;
  }
  for (const Word& rel : defining_relators(g))
    if (!is_identity(eval_word_perm(rel, gens, images, fw.degree))) return false;
  return !is_identity(eval_word_perm(w, gens, images, fw.degree));
}

namespace detail {

struct PermSearch {
  const CoxeterGraph& graph;
  const Word& word;
  std::vector<VertexId> gens;
  std::vector<Word> relators;
  std::vector<std::size_t> relator_level;  // largest generator index in the relator
  std::uint64_t budget;

  PermSearch(const CoxeterGraph& g, const Word& w, std::uint64_t node_budget)
      : graph(g), word(w), gens(g.vertices()), budget(node_budget) {
    for (const Word& r : defining_relators(g)) {
      std::size_t level = 0;
      for (const Letter& l : r)
        level = std::max(level, static_cast<std::size_t>(std::find(gens.begin(), gens.end(), l.gen) - gens.begin()));
      relators.push_back(r);
      relator_level.push_back(level);
    }
  }

  std::optional<FiniteWitness> run(int degree) {
    std::vector<Perm> images(gens.size());
    std::vector<Perm> everything = all_perms(degree);
    std::vector<Perm> first = cycle_type_reps(degree);
    return descend(0, degree, images, first, everything);
  }

  std::optional<FiniteWitness> descend(std::size_t level, int degree, std::vector<Perm>& images,
                                       const std::vector<Perm>& first, const std::vector<Perm>& everything) {
    if (level == gens.size()) {
      Perm img = eval_word_perm(word, gens, images, degree);
      if (is_identity(img)) return std::nullopt;
      FiniteWitness w;
      w.kind = FiniteWitness::Kind::permutation;
      w.degree = degree;
      for (std::size_t i = 0; i < gens.size(); ++i) w.perm_assignment.emplace_back(gens[i], images[i]);
      w.perm_image = img;
      return w;
    }
    const std::vector<Perm>& candidates = level == 0 ? first : everything;
    for (const Perm& p : candidates) {
      if (budget == 0) return std::nullopt;
      --budget;
      images[level] = p;
      bool ok = true;
      for (std::size_t r = 0; r < relators.size(); ++r)
        if (relator_level[r] == level &&
            !is_identity(eval_word_perm(relators[r], gens, images, degree))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (auto found = descend(level + 1, degree, images, first, everything)) return found;
      if (budget == 0) return std::nullopt;
    }
    return std::nullopt;
  }
};

}  // namespace detail

/// Desk-scale separation: a nontrivial word is first tried against the
/// abelianization (some exponent sum nonzero gives an immediate Z/n
/// witness), then against permutation representations of degree
/// 2..max_degree found by deterministic backtracking. not-found is a
/// regular outcome; the node budget keeps results scheduling-independent.
inline SeparateResult separate(ArtinContext& ctx, const Word& w, int max_degree,
                               std::uint64_t node_budget = 50'000'000ull) {
  constexpr int kHardDegreeCap = 8;
  if (max_degree < 2 || max_degree > kHardDegreeCap)
    throw precondition_error("degree bound exceeded (2 <= max_degree <= " + std::to_string(kHardDegreeCap) + ")");
  ctx.require_even_fc();
  ctx.require_letters(w);
  if (ctx.is_trivial(w)) return SeparateResult{SeparateStatus::trivial_input, std::nullopt};

  const CoxeterGraph& g = ctx.graph();
  auto sums = exponent_sums(w);
  for (VertexId v : g.vertices()) {
    auto it = sums.find(v);
    if (it == sums.end() || it->second == 0) continue;
    FiniteWitness fw;
    fw.kind = FiniteWitness::Kind::cyclic;
    std::int64_t e = it->second;
    fw.modulus = (e < 0 ? -e : e) + 1;
    for (VertexId u : g.vertices()) fw.cyclic_assignment.emplace_back(u, u == v ? 1 : 0);
    fw.cyclic_image = ((e % fw.modulus) + fw.modulus) % fw.modulus;
    return SeparateResult{SeparateStatus::witness, std::move(fw)};
  }

  detail::PermSearch search(g, w, node_budget);
  for (int d = 2; d <= max_degree; ++d) {
    if (auto found = search.run(d)) return SeparateResult{SeparateStatus::witness, std::move(found)};
    if (search.budget == 0) break;
  }
  return SeparateResult{SeparateStatus::not_found, std::nullopt};
}

}  // namespace artin
