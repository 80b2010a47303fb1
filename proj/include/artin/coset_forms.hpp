#pragma once

#include <optional>
#include <string>

#include "artin/engine.hpp"

namespace artin {

/// The T0 component of an element of A_{L1} T0.
inline ALNormalForm u_of(ArtinContext& ctx, const ALNormalForm& f) {
  auto split = ctx.split_L1_T0(f);
  if (!split) throw precondition_error("element is not in A_L1 * T0");
  return split->second;
}

/// Case tags of the one-letter multiplication lemma for h in T0 and a
/// signed link generator s.
enum class MultCase {
  conjugate = 1,        // s in L1 commuting into every star of supp(h): u = s^-e h s^e
  outside_power = 2,    // s = x, h = x^{k_x - 1}, e = +1: h x leaves A_{L1} T0
  outside_inverse = 3,  // s = x, h = 1, e = -1: x^-1 leaves A_{L1} T0
  direct = 4,           // h s^e lands in T0 unchanged
};

struct RightMultResult {
  MultCase tag;
  std::optional<ALNormalForm> u;  // u(h s^e); absent in the two outside cases
};

/// Classifies h . s^e by the lemma's hypotheses and, when defined, computes
/// u(h s^e) through multiply + normalize + split (the classification is a
/// cross-check of that computation, not its implementation).
inline RightMultResult right_multiply(ArtinContext& ctx, const ALNormalForm& h, Letter s) {
  const DecompositionData& d = ctx.dd();
  if (!d.link_L.contains(s.gen)) throw precondition_error("generator is not in the link");
  if (!ctx.in_T0(h)) throw precondition_error("form is not in T0");

  MultCase tag;
  if (d.L1.contains(s.gen)) {
    bool in_every_star = true;
    for (VertexId x : ctx.supp(h))
      if (!d.star.at(x).contains(s.gen)) {
        in_every_star = false;
        break;
      }
    tag = in_every_star ? MultCase::conjugate : MultCase::direct;
  } else {
    std::int64_t k = d.k(s.gen);
    Word power;
    for (std::int64_t i = 0; i + 1 < k; ++i) power.push_back(pos(s.gen));
    if (s.sign > 0)
      tag = h.flat_word() == power ? MultCase::outside_power : MultCase::direct;
    else
      tag = h.empty() ? MultCase::outside_inverse : MultCase::direct;
  }

  if (tag == MultCase::outside_power || tag == MultCase::outside_inverse)
    return RightMultResult{tag, std::nullopt};

  ALNormalForm product = ctx.normalize_AL(concat(h.flat_word(), Word{s}));
  auto split = ctx.split_L1_T0(product);
  if (!split) throw std::logic_error("right_multiply: case analysis disagrees with the split");
  return RightMultResult{tag, std::move(split->second)};
}

/// First violated ALNormalForm invariant, or nullopt. Residues must be
/// canonical L1 words lying in Ker(pi_{S_alpha}), and no x^e x^-e pinch
/// may remain.
inline std::optional<std::string> validate_al_form(ArtinContext& ctx, const ALNormalForm& f) {
  const DecompositionData& d = ctx.dd();
  if (ctx.l1_ctx()->canonical_word(f.leading) != f.leading)
    return "leading segment is not a canonical A_L1 word";
  for (std::size_t i = 0; i < f.tail.size(); ++i) {
    const ALEntry& e = f.tail[i];
    if (!d.is_hnn_letter(e.x.gen)) return "segment letter is not an HNN letter";
    if (ctx.l1_ctx()->canonical_word(e.residue) != e.residue)
      return "residue " + std::to_string(i) + " is not a canonical A_L1 word";
    const CoxeterGraph& star = d.star.at(e.x.gen);
    std::set<VertexId> sv(star.vertices().begin(), star.vertices().end());
    if (!ctx.star_ctx(e.x.gen)->is_trivial(retract(d.L1, sv, e.residue)))
      return "residue " + std::to_string(i) + " is not in Ker(pi_S)";
    if (i + 1 < f.tail.size() && e.residue.empty() && f.tail[i + 1].x.gen == e.x.gen &&
        f.tail[i + 1].x.sign == -e.x.sign)
      return "pinch at segment " + std::to_string(i);
  }
  return std::nullopt;
}

}  // namespace artin
