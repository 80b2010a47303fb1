#pragma once

#include <functional>
#include <utility>

#include "artin/word.hpp"

namespace artin {

/// Oracle bundle describing one HNN extension G*_phi over a base group G
/// with associated subgroups A = B <= G and stable letter t.
///
/// Conventions (right cosets, mirroring the normal-form proposition):
/// every base element splits uniquely as g = a . r with a in the subgroup
/// and r in the chosen transversal, which must contain 1. Residues follow
/// their stable letter; migrating a across t^-1 applies phi, across t^+1
/// applies phi_inv. All artifact instances use phi = identity.
struct HnnInstance {
  VertexId stable = 0;
  /// Maps any base word to its unique normal-form word; idempotent.
  std::function<Word(const Word&)> base_normalize;
  /// Decides membership of a base element in the associated subgroup.
  std::function<bool(const Word&)> in_subgroup;
  /// Splits g = a . r; returns (a, r) with r already base-normalized.
  std::function<std::pair<Word, Word>(const Word&)> coset_split;
  /// Isomorphism A -> B and its inverse; identity when unset.
  std::function<Word(const Word&)> phi;
  std::function<Word(const Word&)> phi_inv;

  Word apply_phi(const Word& w) const { return phi ? phi(w) : w; }
  Word apply_phi_inv(const Word& w) const { return phi_inv ? phi_inv(w) : w; }
};

struct BrittonSegment {
  int sign;  // exponent of the stable letter preceding this residue
  Word residue;

  friend bool operator==(const BrittonSegment& a, const BrittonSegment& b) {
    return a.sign == b.sign && a.residue == b.residue;
  }
};

/// Alternating normal form w0 t^{e1} w1 ... t^{em} wm.
struct BrittonForm {
  VertexId stable = 0;
  Word leading;
  std::vector<BrittonSegment> tail;

  bool empty() const { return leading.empty() && tail.empty(); }

  Word flat_word() const {
    Word out = leading;
    for (const BrittonSegment& s : tail) {
      out.push_back(Letter{stable, s.sign});
      append(out, s.residue);
    }
    return out;
  }

  friend bool operator==(const BrittonForm& a, const BrittonForm& b) {
    return a.stable == b.stable && a.leading == b.leading && a.tail == b.tail;
  }
};

/// Single left-to-right pass with a pushdown of pending segments.
///
/// Stable letters either pinch (t^e g t^-e with g in the subgroup) against
/// the pending top or open a new segment; at the end the subgroup parts of
/// the pending residues migrate leftwards through one right-to-left sweep,
/// leaving every residue in the transversal.
inline BrittonForm britton_normalize(const HnnInstance& inst, const Word& w) {
  struct Pending {
    int sign;
    Word word;
  };
  Word lead;
  std::vector<Pending> pend;
  auto cur = [&]() -> Word& { return pend.empty() ? lead : pend.back().word; };

  for (const Letter& l : w) {
    if (l.gen != inst.stable) {
      cur().push_back(l);
      continue;
    }
    if (!pend.empty() && pend.back().sign == -l.sign && inst.in_subgroup(pend.back().word)) {
      Word g = inst.base_normalize(pend.back().word);
      // popped letter t^-1: t^-1 g t = phi(g); popped t^+1: t g t^-1 = phi_inv(g)
      Word image = pend.back().sign == -1 ? inst.apply_phi(g) : inst.apply_phi_inv(g);
      pend.pop_back();
      append(cur(), image);
    } else {
      pend.push_back(Pending{l.sign, {}});
    }
  }

  // Membership of a pending segment in the subgroup is unchanged by the
  // migrations below (they right-multiply by subgroup elements), so the
  // on-line pinch decisions above are final.
  for (std::size_t idx = pend.size(); idx-- > 0;) {
    auto [a, r] = inst.coset_split(pend[idx].word);
    pend[idx].word = r;
    if (!a.empty()) {
      Word image = pend[idx].sign == -1 ? inst.apply_phi(a) : inst.apply_phi_inv(a);
      Word& target = idx == 0 ? lead : pend[idx - 1].word;
      append(target, image);
    }
  }

  BrittonForm out;
  out.stable = inst.stable;
  out.leading = inst.base_normalize(lead);
  for (Pending& p : pend) out.tail.push_back(BrittonSegment{p.sign, std::move(p.word)});
  return out;
}

/// Checks the three normal-form conditions against the oracles; used by
/// tests and assertions, not by the normalizer itself.
inline bool britton_form_valid(const HnnInstance& inst, const BrittonForm& f) {
  if (inst.base_normalize(f.leading) != f.leading) return false;
  for (std::size_t i = 0; i < f.tail.size(); ++i) {
    const Word& r = f.tail[i].residue;
    if (inst.base_normalize(r) != r) return false;
    if (!inst.coset_split(r).first.empty()) return false;
    if (i + 1 < f.tail.size() && r.empty() && f.tail[i + 1].sign == -f.tail[i].sign) return false;
  }
  return true;
}

}  // namespace artin
