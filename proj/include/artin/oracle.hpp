#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "artin/engine.hpp"

namespace artin {

// ---------------------------------------------------------------------------
// Relator-insertion BFS triviality prover. Sound, never complete: a
// proven-trivial verdict is a certificate, inconclusive says nothing.
// ---------------------------------------------------------------------------

struct BfsBudget {
  std::int64_t max_length;
  std::int64_t max_depth;
  std::int64_t max_states;

  void require_valid() const {
    if (max_length <= 0 || max_depth <= 0 || max_states <= 0)
      throw precondition_error("bfs budget components must be positive");
  }
};

inline BfsBudget default_budget(const Word& w) {
  return BfsBudget{2 * static_cast<std::int64_t>(w.size()) + 8, 8, 2'000'000};
}

enum class BfsVerdict { proven_trivial, inconclusive };

/// Move set: every defining relator, closed under inverse and cyclic
/// rotation (deletion of an occurrence is insertion of the inverse next to
/// it followed by free cancellation).
inline std::vector<Word> bfs_move_set(const CoxeterGraph& g) {
  std::set<std::string> seen;
  std::vector<Word> out;
  for (const Word& r : defining_relators(g)) {
    for (const Word& base : {r, inverse(r)}) {
      Word rot = base;
      for (std::size_t i = 0; i < base.size(); ++i) {
        rot.push_back(rot.front());
        rot.erase(rot.begin());
        Word red = free_reduce(rot);
        if (!red.empty() && seen.insert(to_string(red)).second) out.push_back(red);
      }
    }
  }
  return out;
}

inline BfsVerdict bfs_trivial(const CoxeterGraph& g, const Word& w, const BfsBudget& budget) {
  g.require_valid();
  budget.require_valid();
  Word start = free_reduce(w);
  if (start.empty()) return BfsVerdict::proven_trivial;
  std::vector<Word> moves = bfs_move_set(g);

  std::unordered_set<std::string> visited;
  std::deque<std::pair<Word, std::int64_t>> queue;
  visited.insert(to_string(start));
  queue.emplace_back(std::move(start), 0);

  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (depth >= budget.max_depth) continue;
    for (const Word& mv : moves) {
      for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
        Word next;
        next.reserve(cur.size() + mv.size());
        next.insert(next.end(), cur.begin(), cur.begin() + pos);
        next.insert(next.end(), mv.begin(), mv.end());
        next.insert(next.end(), cur.begin() + pos, cur.end());
        next = free_reduce(next);
        if (next.empty()) return BfsVerdict::proven_trivial;
        if (static_cast<std::int64_t>(next.size()) > budget.max_length) continue;
        std::string key = to_string(next);
        if (visited.count(key)) continue;
        if (static_cast<std::int64_t>(visited.size()) >= budget.max_states)
          return BfsVerdict::inconclusive;
        visited.insert(std::move(key));
        queue.emplace_back(std::move(next), depth + 1);
      }
    }
  }
  return BfsVerdict::inconclusive;
}

// ---------------------------------------------------------------------------
// Right-angled shuffle normal form: the leftmost-lexicographic word among
// the commutation-equivalent reduced words. Independent of the recursive
// engine by construction.
// ---------------------------------------------------------------------------

inline Word raag_normal_form(const CoxeterGraph& g, const Word& input) {
  g.require_valid();
  for (const auto& e : g.edges())
    if (e.m != 2) throw precondition_error("raag_normal_form needs all labels in {2, infinity}");

  auto commute = [&](VertexId a, VertexId b) {
    auto m = g.label(a, b);
    return m && *m == 2;
  };

  // shuffle-cancel to a geodesic
  std::vector<Letter> w(input.begin(), input.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < w.size() && !changed; ++j) {
      for (std::size_t back = j; back-- > 0;) {
        if (w[back].gen == w[j].gen) {
          if (w[back].sign == -w[j].sign) {
            bool clear = true;
            for (std::size_t t = back + 1; t < j; ++t)
              if (w[t].gen == w[j].gen || !commute(w[t].gen, w[j].gen)) {
                clear = false;
                break;
              }
            if (clear) {
              w.erase(w.begin() + j);
              w.erase(w.begin() + back);
              changed = true;
            }
          }
          break;  // nearest same-generator letter blocks anything further left
        }
        if (!commute(w[back].gen, w[j].gen)) break;
      }
    }
  }

  // greedy leftmost-lexicographic pile: repeatedly emit the least letter
  // that can be moved to the front
  auto vertex_index = [&](VertexId v) {
    const auto& vs = g.vertices();
    return static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
  };
  auto letter_less = [&](const Letter& a, const Letter& b) {
    auto ka = std::make_pair(vertex_index(a.gen), a.sign < 0);
    auto kb = std::make_pair(vertex_index(b.gen), b.sign < 0);
    return ka < kb;
  };

  Word out;
  std::vector<Letter> pool(w.begin(), w.end());
  while (!pool.empty()) {
    std::size_t best = pool.size();
    for (std::size_t p = 0; p < pool.size(); ++p) {
      bool movable = true;
      for (std::size_t t = 0; t < p; ++t)
        if (pool[t].gen == pool[p].gen || !commute(pool[t].gen, pool[p].gen)) {
          movable = false;
          break;
        }
      if (movable && (best == pool.size() || letter_less(pool[p], pool[best]))) best = p;
    }
    out.push_back(pool[best]);
    pool.erase(pool.begin() + best);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive small-scale congruence check of the engine's equality.
// ---------------------------------------------------------------------------

struct EqReport {
  std::uint64_t words = 0;
  std::uint64_t classes = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Partitions all words up to length_bound by normal form and verifies the
/// partition is a left/right congruence; members of the trivial class must
/// be provable by bfs_trivial within the default budget.
inline EqReport exhaustive_equality(ArtinContext& ctx, int length_bound) {
  const CoxeterGraph& g = ctx.graph();
  if (g.vertices().size() > 3) throw precondition_error("exhaustive_equality is capped at 3 vertices");
  if (length_bound > 6) throw precondition_error("exhaustive_equality is capped at length 6");
  ctx.require_even_fc();

  std::vector<Letter> alphabet;
  for (VertexId v : g.vertices()) {
    alphabet.push_back(pos(v));
    alphabet.push_back(neg(v));
  }

  std::vector<Word> all;
  all.push_back({});
  std::size_t layer_start = 0;
  for (int len = 1; len <= length_bound; ++len) {
    std::size_t layer_end = all.size();
    for (std::size_t i = layer_start; i < layer_end; ++i)
      for (const Letter& l : alphabet) {
        Word w = all[i];
        w.push_back(l);
        all.push_back(std::move(w));
      }
    layer_start = layer_end;
  }

  EqReport report;
  report.words = all.size();
  std::map<std::string, std::vector<const Word*>> classes;
  for (const Word& w : all) classes[to_string(ctx.canonical_word(w))].push_back(&w);
  report.classes = classes.size();

  for (const auto& [key, members] : classes) {
    const Word& rep = *members.front();
    for (const Word* m : members) {
      if (m == members.front()) continue;
      for (const Letter& l : alphabet) {
        Word a = rep, b = *m;
        a.push_back(l);
        b.push_back(l);
        if (ctx.canonical_word(a) != ctx.canonical_word(b)) {
          report.violations.push_back("right congruence fails: " + to_string(*m) + " with " + to_string(Word{l}));
          break;
        }
        Word la{l}, lb{l};
        append(la, rep);
        append(lb, *m);
        if (ctx.canonical_word(la) != ctx.canonical_word(lb)) {
          report.violations.push_back("left congruence fails: " + to_string(*m) + " with " + to_string(Word{l}));
          break;
        }
      }
    }
    if (key.empty()) {
      for (const Word* m : members)
        if (bfs_trivial(g, *m, default_budget(*m)) != BfsVerdict::proven_trivial)
          report.violations.push_back("bfs cannot certify the trivial word " + to_string(*m));
    }
  }
  return report;
}

}  // namespace artin
