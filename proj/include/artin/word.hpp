#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "artin/graph.hpp"

namespace artin {

/// One signed generator occurrence.
struct Letter {
  VertexId gen;
  int sign;  // +1 or -1

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.sign == b.sign;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

inline Letter pos(VertexId v) { return Letter{v, +1}; }
inline Letter neg(VertexId v) { return Letter{v, -1}; }
inline Letter inverse(Letter l) { return Letter{l.gen, -l.sign}; }

/// Words are plain letter sequences; they are not auto-reduced.
using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline void append(Word& w, const Word& tail) { w.insert(w.end(), tail.begin(), tail.end()); }

/// Removes every s^e s^-e; the result represents the same element.
inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline std::map<VertexId, std::int64_t> exponent_sums(const Word& w) {
  std::map<VertexId, std::int64_t> out;
  for (const Letter& l : w) out[l.gen] += l.sign;
  return out;
}

/// Grammar serialization with maximal power-grouping: `a a a b^-1 b^-1`
/// prints as `a^3 b^-2`. The empty word prints as the empty string.
inline std::string to_string(const Word& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    std::int64_t e = static_cast<std::int64_t>(j - i) * w[i].sign;
    if (!out.empty()) out += ' ';
    out += symbols::name(w[i].gen);
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

/// Parses the word grammar: whitespace-separated `id`, `id^n`, `id^-n`
/// with n a positive decimal integer; the token `1` is the empty word.
inline Word parse_word(const std::string& text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string tok = text.substr(start, i - start);
    int col = static_cast<int>(start) + 1;
    if (tok == "1") continue;

    std::string id = tok;
    std::int64_t e = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      id = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      bool negative = !es.empty() && es[0] == '-';
      std::string digits = negative ? es.substr(1) : es;
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("bad exponent '" + es + "' in token '" + tok + "'", 1, col);
      e = std::strtoll(digits.c_str(), nullptr, 10);
      if (e == 0) throw parse_error("zero exponent in token '" + tok + "'", 1, col);
      if (negative) e = -e;
    }
    if (!valid_identifier(id))
      throw parse_error("bad generator identifier '" + id + "'", 1, col);
    Letter l{symbols::intern(id), e > 0 ? +1 : -1};
    for (std::int64_t n = 0; n < (e > 0 ? e : -e); ++n) out.push_back(l);
  }
  return out;
}

inline Word parse_word(const std::string& text, const CoxeterGraph& g) {
  Word w = parse_word(text);
  for (const Letter& l : w)
    if (!g.contains(l.gen))
      throw precondition_error("unknown generator '" + symbols::name(l.gen) + "'");
  return w;
}

/// Pi(s,t:m) = (st)^{m/2} for even m: the alternating word s t s t ... of
/// length m.
inline Word pi_word(std::int64_t m, VertexId s, VertexId t) {
  if (m < 2 || m % 2 != 0) throw precondition_error("pi_word requires an even label >= 2");
  if (s == t) throw precondition_error("pi_word requires distinct generators");
  Word out;
  for (std::int64_t i = 0; i < m / 2; ++i) {
    out.push_back(pos(s));
    out.push_back(pos(t));
  }
  return out;
}

/// The defining relator Pi(s,t:m) Pi(t,s:m)^-1, freely reduced.
inline Word artin_relator(const CoxeterGraph& g, VertexId s, VertexId t) {
  g.require_vertex(s);
  g.require_vertex(t);
  auto m = g.label(s, t);
  if (!m) throw precondition_error("no relation between '" + symbols::name(s) + "' and '" + symbols::name(t) + "'");
  return free_reduce(concat(pi_word(*m, s, t), inverse(pi_word(*m, t, s))));
}

/// One relator per edge, in vertex-pair order.
inline std::vector<Word> defining_relators(const CoxeterGraph& g) {
  std::vector<Word> out;
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.linked(vs[i], vs[j])) out.push_back(artin_relator(g, vs[i], vs[j]));
  return out;
}

/// The retraction pi_T: deletes letters outside T, then freely reduces.
inline Word retract(const CoxeterGraph& g, const std::set<VertexId>& T, const Word& w) {
  for (VertexId v : T) g.require_vertex(v);
  Word kept;
  for (const Letter& l : w)
    if (T.count(l.gen)) kept.push_back(l);
  return free_reduce(kept);
}

// ---------------------------------------------------------------------------
// Conjugate rewriting of the even relation (st)^k = (ts)^k.
//
// Patterns are abstract words in the symbols t^{s^i}; substituting
// t^{s^i} -> s^-i t s^i must turn both sides into equal group elements.
// ---------------------------------------------------------------------------

struct ConjSym {
  std::int64_t power;  // the i of t^{s^i}
  int sign;            // exponent of the whole symbol, +1 or -1
  friend bool operator==(const ConjSym& a, const ConjSym& b) {
    return a.power == b.power && a.sign == b.sign;
  }
};

using ConjPattern = std::vector<ConjSym>;

enum class ConjSide { negative, power };

/// Both sides of the conjugation identity at half-label k:
///   negative: t^{s^-1} = t^-1 (t^s)^-1 ... (t^{s^{k-2}})^-1 t^{s^{k-1}} t^{s^{k-2}} ... t^s t
///   power:    t^{s^k}  = t^{s^{k-1}} ... t^s t (t^s)^-1 ... (t^{s^{k-1}})^-1
inline std::pair<ConjPattern, ConjPattern> conj_identity(std::int64_t k, ConjSide side) {
  if (k < 1) throw precondition_error("conj_identity requires k >= 1");
  ConjPattern lhs, rhs;
  if (side == ConjSide::negative) {
    lhs.push_back(ConjSym{-1, +1});
    for (std::int64_t i = 0; i <= k - 2; ++i) rhs.push_back(ConjSym{i, -1});
    rhs.push_back(ConjSym{k - 1, +1});
    for (std::int64_t i = k - 2; i >= 0; --i) rhs.push_back(ConjSym{i, +1});
  } else {
    lhs.push_back(ConjSym{k, +1});
    for (std::int64_t i = k - 1; i >= 0; --i) rhs.push_back(ConjSym{i, +1});
    for (std::int64_t i = 1; i <= k - 1; ++i) rhs.push_back(ConjSym{i, -1});
  }
  return {lhs, rhs};
}

/// Substitutes t^{s^i} -> s^-i t s^i and flattens.
inline Word expand_conj(const ConjPattern& p, VertexId s, VertexId t) {
  Word out;
  for (const ConjSym& sym : p) {
    Word conj;
    std::int64_t a = sym.power;
    for (std::int64_t i = 0; i < (a >= 0 ? a : -a); ++i) conj.push_back(a >= 0 ? neg(s) : pos(s));
    append(out, conj);
    out.push_back(Letter{t, sym.sign});
    append(out, inverse(conj));
  }
  return out;
}

}  // namespace artin
