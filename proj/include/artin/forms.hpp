#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "artin/word.hpp"

namespace artin {

inline std::string display_word(const Word& w) {
  std::string s = to_string(w);
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// Normal forms in A_L (iterated HNN tower over A_{L1}).
// ---------------------------------------------------------------------------

struct ALEntry {
  Letter x;      // HNN letter occurrence x_alpha^{eps}
  Word residue;  // canonical word of an element of A_{L1} in Ker(pi_{S_alpha})

  friend bool operator==(const ALEntry& a, const ALEntry& b) {
    return a.x == b.x && a.residue == b.residue;
  }
};

/// Flattened tower form w0 x_{a1}^{e1} w1 ... x_{am}^{em} wm. Serialization
/// (the flat word in the word grammar) is the identity key: bit-exact
/// equality of serializations is equality in A_L.
struct ALNormalForm {
  Word leading;
  std::vector<ALEntry> tail;

  bool empty() const { return leading.empty() && tail.empty(); }
  std::size_t segment_length() const { return tail.size(); }

  Word flat_word() const {
    Word out = leading;
    for (const ALEntry& e : tail) {
      out.push_back(e.x);
      append(out, e.residue);
    }
    return out;
  }

  std::string str() const { return to_string(flat_word()); }

  friend bool operator==(const ALNormalForm& a, const ALNormalForm& b) {
    return a.leading == b.leading && a.tail == b.tail;
  }
  friend bool operator!=(const ALNormalForm& a, const ALNormalForm& b) { return !(a == b); }
};

/// Splits a flat word at the letters classified as HNN letters.
inline ALNormalForm parse_flat_form(const Word& w, const std::function<bool(VertexId)>& is_hnn) {
  ALNormalForm f;
  bool in_lead = true;
  for (const Letter& l : w) {
    if (is_hnn(l.gen)) {
      f.tail.push_back(ALEntry{l, {}});
      in_lead = false;
    } else if (in_lead) {
      f.leading.push_back(l);
    } else {
      f.tail.back().residue.push_back(l);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// The free group F on the basis {b_h : h in T}, T = T0 . Ker(pi_L).
// ---------------------------------------------------------------------------

/// Index of a basis element: the unique factorization h = h0 u with
/// h0 in T0 (stored as the flat word of its A_L normal form) and
/// u in Ker(pi_L) (stored as its canonical word over Gamma_1).
struct BasisKey {
  Word h0;
  Word u;
  std::string repr;  // "<h0>|<u>", the interning key

  static BasisKey of(Word h0_word, Word u_word) {
    BasisKey k;
    k.h0 = std::move(h0_word);
    k.u = std::move(u_word);
    k.repr = to_string(k.h0) + "|" + to_string(k.u);
    return k;
  }

  friend bool operator==(const BasisKey& a, const BasisKey& b) { return a.repr == b.repr; }
  friend bool operator!=(const BasisKey& a, const BasisKey& b) { return a.repr != b.repr; }
};

struct FreeFactor {
  BasisKey key;
  int exp;  // +1 or -1

  friend bool operator==(const FreeFactor& a, const FreeFactor& b) {
    return a.exp == b.exp && a.key == b.key;
  }
};

/// Reduced word in F; pushes cancel adjacent inverse pairs eagerly.
struct FreeWord {
  std::vector<FreeFactor> factors;

  bool empty() const { return factors.empty(); }
  std::size_t size() const { return factors.size(); }

  void push(FreeFactor f) {
    if (!factors.empty() && factors.back().key == f.key && factors.back().exp == -f.exp)
      factors.pop_back();
    else
      factors.push_back(std::move(f));
  }

  void push_all(const FreeWord& other) {
    for (const FreeFactor& f : other.factors) push(f);
  }

  FreeWord inverse() const {
    FreeWord out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
      out.push(FreeFactor{it->key, -it->exp});
    return out;
  }

  static FreeWord single(BasisKey key, int exp = +1) {
    FreeWord out;
    out.push(FreeFactor{std::move(key), exp});
    return out;
  }

  /// `b[<h0>|<u>]^1 b[<h0>|<u>]^-1 ...`; empty FreeWord prints as "".
  std::string str() const {
    std::string out;
    for (const FreeFactor& f : factors) {
      if (!out.empty()) out += ' ';
      out += "b[" + f.key.repr + "]^" + (f.exp > 0 ? "1" : "-1");
    }
    return out;
  }
  std::string display() const {
    std::string s = str();
    return s.empty() ? "1" : s;
  }

  friend bool operator==(const FreeWord& a, const FreeWord& b) { return a.factors == b.factors; }
  friend bool operator!=(const FreeWord& a, const FreeWord& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Recursive canonical forms.
// ---------------------------------------------------------------------------

struct CanonicalForm;
using CanonicalFormPtr = std::shared_ptr<const CanonicalForm>;

/// The artifact's unique representative per group element: over the empty
/// graph the base form `()`, otherwise the pair (form of g1 over Gamma_1,
/// reduced FreeWord) at the graph's least vertex. Structural equality is
/// group equality.
struct CanonicalForm {
  CanonicalFormPtr g1;  // nullptr <=> base form over the empty graph
  FreeWord omega;

  bool is_base() const { return g1 == nullptr; }

  bool trivial() const {
    if (is_base()) return true;
    return omega.empty() && g1->trivial();
  }

  /// Nested serialization `(<g1> ; <omega>)`, `()` at the base; the
  /// artifact-wide equality key.
  std::string str() const {
    if (is_base()) return "()";
    return "(" + g1->str() + " ; " + omega.display() + ")";
  }

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.is_base() != b.is_base()) return false;
    if (!a.is_base() && !(*a.g1 == *b.g1)) return false;
    return a.omega == b.omega;
  }
  friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) { return !(a == b); }
};

/// Element of G = A_1 x| F as a pair (canonical form over Gamma_1, reduced
/// FreeWord).
struct SemidirectElement {
  CanonicalFormPtr g1;
  FreeWord omega;

  friend bool operator==(const SemidirectElement& a, const SemidirectElement& b) {
    if ((a.g1 == nullptr) != (b.g1 == nullptr)) return false;
    if (a.g1 && !(*a.g1 == *b.g1)) return false;
    return a.omega == b.omega;
  }
};

// ---------------------------------------------------------------------------
// Poly-free towers.
// ---------------------------------------------------------------------------

struct TowerStage {
  VertexId removed;
  std::optional<std::uint64_t> rank;  // nullopt = countably infinite

  friend bool operator==(const TowerStage& a, const TowerStage& b) {
    return a.removed == b.removed && a.rank == b.rank;
  }
};

struct PolyfreeTower {
  std::vector<TowerStage> stages;
};

}  // namespace artin
