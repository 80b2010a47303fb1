#pragma once

#include <cassert>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "artin/britton.hpp"
#include "artin/forms.hpp"
#include "artin/graph.hpp"
#include "artin/word.hpp"

namespace artin {

class ArtinContext;
using ContextPtr = std::shared_ptr<ArtinContext>;

/// Per-graph engine for the recursive splitting A_Gamma = F x| A_1 at the
/// graph's least vertex z. One context exists per distinct graph (interned
/// on the graph fingerprint); contexts for Gamma_1, L, L_1 and the stars
/// S_i are subcontexts, so the whole recursion bottoms out at the empty
/// graph. All state is immutable after construction except the memo
/// caches, which are idempotent and guarded by a mutex.
///
/// The method groups below are the three mutually recursive concerns:
/// psi/phi with canonical forms and towers, tower normal forms in A_L,
/// and the right action of A_1 on the free group F.
class ArtinContext : public std::enable_shared_from_this<ArtinContext> {
public:
  static ContextPtr get(const CoxeterGraph& g) {
    static std::mutex mu;
    static std::unordered_map<std::string, ContextPtr> registry;
    std::string key = g.canonical_text();
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    ContextPtr ctx(new ArtinContext(g));
    registry.emplace(std::move(key), ctx);
    return ctx;
  }

  const CoxeterGraph& graph() const { return graph_; }
  bool is_empty_graph() const { return graph_.vertices().empty(); }

  VertexId split_vertex() const {
    if (is_empty_graph()) throw precondition_error("empty graph has no split vertex");
    return graph_.vertices().front();
  }

  void require_even_fc() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!fc_checked_) {
      graph_.require_valid();
      fc_issue_ = graph_.fc_violation();
      fc_checked_ = true;
    }
    if (fc_issue_) throw precondition_error("graph is not of FC type: " + *fc_issue_);
  }

  const DecompositionData& dd() {
    require_even_fc();
    std::lock_guard<std::mutex> lock(mu_);
    if (!dd_) dd_ = decompose_at(graph_, split_vertex());
    return *dd_;
  }

  ContextPtr gamma1() { return sub_context(dd().gamma1, gamma1_); }
  ContextPtr l_ctx() { return sub_context(dd().link_L, lctx_); }
  ContextPtr l1_ctx() { return sub_context(dd().L1, l1ctx_); }

  ContextPtr star_ctx(VertexId x) {
    const DecompositionData& d = dd();
    std::lock_guard<std::mutex> lock(mu_);
    auto it = starctx_.find(x);
    if (it == starctx_.end()) it = starctx_.emplace(x, get(d.star.at(x))).first;
    return it->second;
  }

  void require_letters(const Word& w) const {
    for (const Letter& l : w)
      if (!graph_.contains(l.gen))
        throw precondition_error("unknown generator '" + symbols::name(l.gen) + "'");
  }

  // -------------------------------------------------------------------------
  // Canonical forms, psi and phi.
  // -------------------------------------------------------------------------

  static CanonicalFormPtr base_form() {
    static CanonicalFormPtr f = std::make_shared<CanonicalForm>();
    return f;
  }

  /// Folded prefix of psi: the normal form so far, the canonical word of
  /// its Gamma_1 part, and its own canonical word. States are cached per
  /// prefix and additionally seeded under their canonical word, so
  /// extending an already-canonical word costs one step, not a refold.
  struct SdState {
    CanonicalFormPtr form;
    Word g1_word;
    Word cw;
  };

  /// psi: A_Gamma -> A_1 x| F, folded letter by letter; z^e becomes
  /// b_{(1,1)}^e, every other generator multiplies into the Gamma_1 part
  /// and acts on the accumulated free part.
  SemidirectElement psi(const Word& w) {
    SdState st = psi_state(w);
    return SemidirectElement{st.form->g1, st.form->omega};
  }

  SdState psi_state(const Word& w) {
    require_even_fc();
    if (is_empty_graph()) throw precondition_error("psi needs a nonempty graph");

    // one shared key buffer; prefix i is the first bound[i] characters
    std::string full;
    std::vector<std::size_t> bound(w.size() + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) full += ' ';
      full += letter_token(w[i]);
      bound[i + 1] = full.size();
    }

    const SdState* hit = nullptr;
    std::size_t done = 0;
    for (std::size_t i = w.size(); i >= 1 && !hit; --i) {
      hit = cache_find(sd_cache_, full.substr(0, bound[i]));
      if (hit) done = i;
    }
    SdState state = hit ? *hit : identity_state();
    for (std::size_t i = done; i < w.size(); ++i) {
      if (!graph_.contains(w[i].gen))
        throw precondition_error("unknown generator '" + symbols::name(w[i].gen) + "'");
      state = psi_step(state, w[i]);
      cache_store(sd_cache_, full.substr(0, bound[i + 1]), state);
    }
    return state;
  }

  /// phi: (g, omega) -> g . prod (h_i^-1 z h_i)^{e_i}, freely reduced.
  Word phi(const SemidirectElement& e) {
    require_even_fc();
    if (is_empty_graph()) return {};
    return assemble_word(gamma1()->form_word(*e.g1), e.omega);
  }

  CanonicalFormPtr normal_form(const Word& w) {
    require_letters(w);
    if (is_empty_graph()) return base_form();
    return psi_state(w).form;
  }

  /// The canonical word of a form: g1's canonical word followed by each
  /// free factor expanded as h^-1 z^e h, freely reduced. Reduction keeps
  /// the words from ballooning through the recursion and the map stays
  /// injective: the emitted word still represents the element.
  Word form_word(const CanonicalForm& f) {
    if (is_empty_graph()) return {};
    return assemble_word(gamma1()->form_word(*f.g1), f.omega);
  }

  Word canonical_word(const Word& w) {
    require_letters(w);
    if (is_empty_graph()) return {};
    SdState st = psi_state(w);
    // canonical words fold back to their own state: seed the prefix cache
    cache_store(sd_cache_, plain_key(st.cw), st);
    return st.cw;
  }

  bool words_equal(const Word& a, const Word& b) { return canonical_word(a) == canonical_word(b); }
  bool is_trivial(const Word& w) { return canonical_word(w).empty(); }

  /// (g1, w1)(g2, w2) = (g1 g2, (w1 * g2) w2).
  SemidirectElement sd_multiply(const SemidirectElement& a, const SemidirectElement& b) {
    Word w2 = gamma1()->form_word(*b.g1);
    FreeWord omega = act(a.omega, w2);
    omega.push_all(b.omega);
    Word w1 = gamma1()->form_word(*a.g1);
    return SemidirectElement{gamma1()->normal_form(concat(w1, w2)), std::move(omega)};
  }

  /// `(<canonical word of g1> ; <omega>)`, empty slots printed as `1`.
  std::string sd_display(const SemidirectElement& e) {
    return "(" + display_word(gamma1()->form_word(*e.g1)) + " ; " + e.omega.display() + ")";
  }

  /// Stage ranks: T = T0 . Ker(pi_L) is finite iff T0 is finite (no HNN
  /// letter, or a single one commuting with all of L1) and Ker(pi_L) is
  /// trivial (Gamma_1 = L); then |T| = 1 or k_{x_1}.
  PolyfreeTower polyfree_tower() {
    require_even_fc();
    PolyfreeTower tower;
    ContextPtr c = shared_from_this();
    while (!c->is_empty_graph()) {
      const DecompositionData& d = c->dd();
      bool t0_finite =
          d.hnn_letters.empty() ||
          (d.hnn_letters.size() == 1 &&
           d.star.at(d.hnn_letters.front()).vertices() == d.L1.vertices());
      bool ker_trivial = d.gamma1.vertices() == d.link_L.vertices();
      std::optional<std::uint64_t> rank;
      if (t0_finite && ker_trivial)
        rank = d.hnn_letters.empty() ? 1 : static_cast<std::uint64_t>(d.k(d.hnn_letters.front()));
      tower.stages.push_back(TowerStage{c->split_vertex(), rank});
      c = c->gamma1();
    }
    return tower;
  }

  // -------------------------------------------------------------------------
  // Normal forms in A_L: the iterated HNN tower.
  // -------------------------------------------------------------------------

  bool in_link(VertexId v) { return dd().link_L.contains(v); }

  /// Unique flattened tower form of a word over V(L).
  ALNormalForm normalize_AL(const Word& w) {
    const DecompositionData& d = dd();
    for (const Letter& l : w)
      if (!d.link_L.contains(l.gen))
        throw precondition_error("letter '" + symbols::name(l.gen) + "' is not in the link");
    Word flat = normalize_level(d.hnn_letters.size(), w);
    return parse_flat(flat);
  }

  ALNormalForm parse_flat(const Word& w) {
    const DecompositionData& d = dd();
    return parse_flat_form(w, [&](VertexId v) { return d.is_hnn_letter(v); });
  }

  /// T0: empty form, or w0 = 1, e1 = +1 and the leading x-run shorter
  /// than k_x.
  bool in_T0(const ALNormalForm& f) {
    if (f.empty()) return true;
    if (!f.leading.empty()) return false;
    if (f.tail.front().x.sign != +1) return false;
    VertexId x = f.tail.front().x.gen;
    std::int64_t kx = dd().k(x);
    std::int64_t run = 0;
    for (std::size_t i = 0; i < f.tail.size(); ++i) {
      if (f.tail[i].x.gen != x || f.tail[i].x.sign != +1) break;
      if (i > 0 && !f.tail[i - 1].residue.empty()) break;
      ++run;
    }
    return run < kx;
  }

  /// Unique factorization over A_{L1} T0: the leading segment is the
  /// A_{L1} part, the rest must pass the T0 test.
  std::optional<std::pair<Word, ALNormalForm>> split_L1_T0(const ALNormalForm& f) {
    ALNormalForm h;
    h.tail = f.tail;
    if (!in_T0(h)) return std::nullopt;
    return std::make_pair(f.leading, std::move(h));
  }

  std::set<VertexId> supp(const ALNormalForm& f) const {
    std::set<VertexId> out;
    for (const ALEntry& e : f.tail) out.insert(e.x.gen);
    return out;
  }

  /// Element of Ker(pi_L) <= A_1? Retract to the link and test triviality.
  bool in_ker_piL(const Word& w) {
    const DecompositionData& d = dd();
    for (const Letter& l : w)
      if (!d.gamma1.contains(l.gen))
        throw precondition_error("letter '" + symbols::name(l.gen) + "' is not in Gamma_1");
    std::set<VertexId> lv(d.link_L.vertices().begin(), d.link_L.vertices().end());
    return normalize_AL(retract(d.gamma1, lv, w)).empty();
  }

  // -------------------------------------------------------------------------
  // The right action of A_1 on F.
  // -------------------------------------------------------------------------

  BasisKey basis_key_unchecked(Word h0, Word u) { return BasisKey::of(std::move(h0), std::move(u)); }

  /// Validates both components: h0 the flat word of a T0 form, u a
  /// canonical Gamma_1 word retracting to 1 in A_L.
  BasisKey basis_key(Word h0, Word u) {
    ALNormalForm f = normalize_AL(h0);
    if (f.flat_word() != h0 || !in_T0(f))
      throw precondition_error("h0 is not the normal form of a T0 element");
    if (gamma1()->canonical_word(u) != u)
      throw precondition_error("u is not a canonical word over Gamma_1");
    if (!in_ker_piL(u)) throw precondition_error("u is not in Ker(pi_L)");
    return BasisKey::of(std::move(h0), std::move(u));
  }

  /// omega . u = prod b_{h_i u}^{e_i}.
  FreeWord dot_u(const FreeWord& fw, const Word& u) {
    if (!in_ker_piL(u)) throw precondition_error("dot_u needs u in Ker(pi_L)");
    if (u.empty()) return fw;
    FreeWord out;
    for (const FreeFactor& f : fw.factors)
      out.push(FreeFactor{basis_key_unchecked(f.key.h0, gamma1()->canonical_word(concat(f.key.u, u))), f.exp});
    return out;
  }

  /// The A_L generator action on T0-indexed basis elements: the generic
  /// branch b_h -> b_{u(h s^e)}, and the two conjugating products when
  /// h s^e leaves A_{L1} T0 (s = x with h = x^{k_x - 1}, e = +1, or
  /// h = 1, e = -1).
  FreeWord act_T0_generator(const Word& h0, Letter s) {
    if (!in_link(s.gen)) throw precondition_error("generator is not in the link");
    ALNormalForm f = normalize_AL(concat(h0, Word{s}));
    if (auto sp = split_L1_T0(f))
      return FreeWord::single(basis_key_unchecked(sp->second.flat_word(), {}), +1);

    VertexId x = s.gen;
    std::int64_t kx = dd().k(x);
    assert(kx >= 2);
    assert(s.sign > 0 ? h0 == x_power_word(x, kx - 1) : h0.empty());
    FreeWord out;
    if (s.sign > 0) {
      for (std::int64_t j = kx - 1; j >= 1; --j) out.push(FreeFactor{x_power_key(x, j), +1});
      out.push(FreeFactor{x_power_key(x, 0), +1});
      for (std::int64_t j = 1; j <= kx - 1; ++j) out.push(FreeFactor{x_power_key(x, j), -1});
    } else {
      for (std::int64_t j = 0; j <= kx - 2; ++j) out.push(FreeFactor{x_power_key(x, j), -1});
      out.push(FreeFactor{x_power_key(x, kx - 1), +1});
      for (std::int64_t j = kx - 2; j >= 0; --j) out.push(FreeFactor{x_power_key(x, j), +1});
    }
    return out;
  }

  /// One generator step of the A_1 action on a basis element, per the
  /// extension rule (omega . u) * g = (omega * pi_L(g)) . (pi_L(g)^-1 u g).
  FreeWord act_generator(const BasisKey& key, Letter s) {
    const DecompositionData& d = dd();
    if (!d.gamma1.contains(s.gen))
      throw precondition_error("action letters must lie in Gamma_1");
    std::string memo_key = key.repr + "*" + letter_token(s);
    if (auto hit = cache_find(actgen_cache_, memo_key)) return *hit;

    FreeWord out;
    if (!d.link_L.contains(s.gen)) {
      Word u2 = gamma1()->canonical_word(concat(key.u, Word{s}));
      out = FreeWord::single(basis_key_unchecked(key.h0, std::move(u2)), +1);
    } else {
      Word conj;
      conj.push_back(inverse(s));
      append(conj, key.u);
      conj.push_back(s);
      Word u2 = gamma1()->canonical_word(conj);
      out = dot_u_unchecked(act_T0_generator(key.h0, s), u2);
    }
    cache_store(actgen_cache_, memo_key, out);
    return out;
  }

  FreeWord act_letter(const FreeWord& fw, Letter s) {
    FreeWord out;
    for (const FreeFactor& f : fw.factors) {
      FreeWord img = act_generator(f.key, s);
      if (f.exp < 0) img = img.inverse();
      out.push_all(img);
    }
    return out;
  }

  /// Left-to-right fold of the generator action over the letters of g.
  FreeWord act(FreeWord fw, const Word& g) {
    for (const Letter& l : g) fw = act_letter(fw, l);
    return fw;
  }

private:
  explicit ArtinContext(CoxeterGraph g) : graph_(std::move(g)) {}

  ContextPtr sub_context(const CoxeterGraph& g, ContextPtr& slot) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!slot) slot = get(g);
    return slot;
  }

  static std::string letter_token(Letter l) {
    return symbols::name(l.gen) + (l.sign < 0 ? "^-1" : "");
  }

  static std::string plain_key(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += letter_token(w[i]);
    }
    return out;
  }

  SdState identity_state() {
    CanonicalFormPtr trivial_g1 = gamma1()->normal_form({});
    std::lock_guard<std::mutex> lock(mu_);
    if (!identity_) {
      auto form = std::make_shared<CanonicalForm>();
      form->g1 = std::move(trivial_g1);
      identity_ = SdState{std::move(form), {}, {}};
    }
    return *identity_;
  }

  /// One letter of the fold: z^e pushes b_{(1,1)}^e; any other generator
  /// multiplies into the Gamma_1 part (one child step, thanks to the
  /// child's own prefix cache) and acts on the free part.
  SdState psi_step(const SdState& st, Letter l) {
    SdState out;
    auto form = std::make_shared<CanonicalForm>();
    if (l.gen == split_vertex()) {
      form->g1 = st.form->g1;
      form->omega = st.form->omega;
      form->omega.push(FreeFactor{BasisKey::of({}, {}), l.sign});
      out.g1_word = st.g1_word;
    } else {
      Word extended = st.g1_word;
      extended.push_back(l);
      SdState child = gamma1()->psi_state(extended);
      gamma1()->seed_state(child);
      form->g1 = child.form;
      form->omega = act_letter(st.form->omega, l);
      out.g1_word = child.cw;
    }
    out.cw = assemble_word(out.g1_word, form->omega);
    out.form = std::move(form);
    return out;
  }

  void seed_state(const SdState& st) { cache_store(sd_cache_, plain_key(st.cw), st); }

  Word assemble_word(const Word& g1w, const FreeWord& omega) {
    VertexId z = split_vertex();
    Word out = g1w;
    for (const FreeFactor& fac : omega.factors) {
      Word h = concat(fac.key.h0, fac.key.u);
      append(out, inverse(h));
      out.push_back(Letter{z, fac.exp});
      append(out, h);
    }
    return free_reduce(out);
  }

  static Word x_power_word(VertexId x, std::int64_t j) {
    Word out;
    for (std::int64_t i = 0; i < j; ++i) out.push_back(pos(x));
    return out;
  }

  BasisKey x_power_key(VertexId x, std::int64_t j) {
    return basis_key_unchecked(x_power_word(x, j), {});
  }

  FreeWord dot_u_unchecked(const FreeWord& fw, const Word& u) {
    if (u.empty()) return fw;
    FreeWord out;
    for (const FreeFactor& f : fw.factors)
      out.push(FreeFactor{basis_key_unchecked(f.key.h0, gamma1()->canonical_word(concat(f.key.u, u))), f.exp});
    return out;
  }

  // Tower normalization: level i is the HNN extension by x_i over the
  // level i-1 base; level 0 is A_{L1} with recursive canonical words.
  Word normalize_level(std::size_t level, const Word& w) {
    std::string key = std::to_string(level) + "|" + to_string(w);
    if (auto hit = cache_find(level_cache_, key)) return *hit;

    Word out;
    if (level == 0) {
      out = l1_ctx()->canonical_word(w);
    } else {
      const DecompositionData& d = dd();
      VertexId x = d.hnn_letters[level - 1];
      HnnInstance inst;
      inst.stable = x;
      inst.base_normalize = [this, level](const Word& v) { return normalize_level(level - 1, v); };
      inst.in_subgroup = [this, level, x](const Word& v) {
        ALNormalForm f = parse_flat(normalize_level(level - 1, v));
        if (!f.tail.empty()) return false;
        return star_retract(x, f.leading) == f.leading;
      };
      inst.coset_split = [this, level, x](const Word& v) -> std::pair<Word, Word> {
        ALNormalForm f = parse_flat(normalize_level(level - 1, v));
        Word a = star_retract(x, f.leading);
        if (a.empty()) return {Word{}, f.flat_word()};
        ALNormalForm r = f;
        r.leading = l1_ctx()->canonical_word(concat(inverse(a), f.leading));
        return {a, r.flat_word()};
      };
      out = britton_normalize(inst, w).flat_word();
    }
    cache_store(level_cache_, key, out);
    return out;
  }

  /// pi_{S_i} of an A_{L1} element, as a canonical L1 word.
  Word star_retract(VertexId x, const Word& leading) {
    const DecompositionData& d = dd();
    const CoxeterGraph& s = d.star.at(x);
    std::set<VertexId> sv(s.vertices().begin(), s.vertices().end());
    return l1_ctx()->canonical_word(retract(d.L1, sv, leading));
  }

  // Values are immutable once inserted and the maps are node-based, so a
  // pointer into the map stays valid across later insertions.
  template <typename V>
  const V* cache_find(const std::unordered_map<std::string, V>& cache, const std::string& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache.find(key);
    return it == cache.end() ? nullptr : &it->second;
  }

  template <typename V>
  void cache_store(std::unordered_map<std::string, V>& cache, const std::string& key, const V& value) {
    std::lock_guard<std::mutex> lock(mu_);
    cache.emplace(key, value);
  }

  CoxeterGraph graph_;
  std::mutex mu_;
  bool fc_checked_ = false;
  std::optional<std::string> fc_issue_;
  std::optional<DecompositionData> dd_;
  ContextPtr gamma1_, lctx_, l1ctx_;
  std::map<VertexId, ContextPtr> starctx_;
  std::optional<SdState> identity_;
  std::unordered_map<std::string, SdState> sd_cache_;
  std::unordered_map<std::string, Word> level_cache_;
  std::unordered_map<std::string, FreeWord> actgen_cache_;
};

}  // namespace artin
