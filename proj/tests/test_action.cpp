#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace artin;
using namespace artin::test;

namespace {

Word W(const std::string& s) { return parse_word(s); }

FreeWord b_of(ArtinContext& ctx, const std::string& h0, const std::string& u = "") {
  return FreeWord::single(ctx.basis_key(W(h0), ctx.gamma1()->canonical_word(W(u))));
}

ContextPtr c1() { return ArtinContext::get(g1()); }
ContextPtr c3() { return ArtinContext::get(g3()); }

}  // namespace

TEST_CASE("basis keys validate their parts") {
  auto ctx = c1();
  CHECK_NOTHROW(ctx->basis_key(W("x"), {}));
  CHECK_THROWS_AS(ctx->basis_key(W("x^2"), {}), precondition_error);       // not in T0
  CHECK_THROWS_AS(ctx->basis_key(W("x x^-1 x"), {}), precondition_error);  // not normal
  CHECK_THROWS_AS(ctx->basis_key(W("x"), W("x")), precondition_error);     // x not in Ker(pi_L)

  auto ctx3 = c3();
  CHECK_NOTHROW(ctx3->basis_key(W("x"), ctx3->gamma1()->canonical_word(W("w"))));
}

TEST_CASE("dot_u translates the kernel part of every key") {
  auto ctx = c3();
  Word wword = ctx->gamma1()->canonical_word(W("w"));

  FreeWord start = b_of(*ctx, "x");
  FreeWord moved = ctx->dot_u(start, wword);
  CHECK(moved == b_of(*ctx, "x", "w"));
  CHECK(ctx->dot_u(moved, {}) == moved);
  CHECK(ctx->dot_u(b_of(*ctx, "x", "w^-1"), wword) == b_of(*ctx, "x"));
  CHECK_THROWS_AS(ctx->dot_u(start, W("x")), precondition_error);
}

TEST_CASE("act_T0_generator branches on the worked example") {
  auto ctx = c1();
  VertexId x = symbols::intern("x");

  // generic: b_1 * x = b_x
  CHECK(ctx->act_T0_generator({}, pos(x)) == b_of(*ctx, "x"));
  // exceptional positive: b_x * x = b_x b_1 b_x^-1 (k_x = 2)
  FreeWord expect;
  expect.push(FreeFactor{ctx->basis_key(W("x"), {}), +1});
  expect.push(FreeFactor{ctx->basis_key({}, {}), +1});
  expect.push(FreeFactor{ctx->basis_key(W("x"), {}), -1});
  CHECK(ctx->act_T0_generator(W("x"), pos(x)) == expect);
  // exceptional negative: b_1 * x^-1 = b_1^-1 b_x b_1
  FreeWord expect_neg;
  expect_neg.push(FreeFactor{ctx->basis_key({}, {}), -1});
  expect_neg.push(FreeFactor{ctx->basis_key(W("x"), {}), +1});
  expect_neg.push(FreeFactor{ctx->basis_key({}, {}), +1});
  CHECK(ctx->act_T0_generator({}, neg(x)) == expect_neg);
}

TEST_CASE("act_T0_generator exceptional product length at k = 3") {
  CoxeterGraph g = CoxeterGraph::make({"z", "x"}, {{"z", "x", 6}});
  auto ctx = ArtinContext::get(g);
  VertexId x = symbols::intern("x");
  FreeWord fw = ctx->act_T0_generator(W("x^2"), pos(x));
  REQUIRE(fw.size() == 5);  // b_{x^2} b_x b_1 b_x^-1 b_{x^2}^-1
  CHECK(fw.factors[0].key.repr == "x^2|");
  CHECK(fw.factors[2].key.repr == "|");
  CHECK(fw.factors[4].exp == -1);
}

TEST_CASE("act_generator splits along pi_L") {
  auto ctx = c3();
  VertexId w = symbols::intern("w"), a = symbols::intern("a");

  // s outside the link: only the kernel part moves
  FreeWord out = ctx->act_generator(ctx->basis_key(W("x"), {}), pos(w));
  CHECK(out == b_of(*ctx, "x", "w"));

  // s in the link, commuting with x: the key is fixed
  FreeWord fixed = ctx->act_generator(ctx->basis_key(W("x"), {}), pos(a));
  CHECK(fixed == b_of(*ctx, "x"));

  CHECK_THROWS_AS(ctx->act_generator(ctx->basis_key(W("x"), {}), pos(symbols::intern("z"))),
                  precondition_error);
}

TEST_CASE("act composes the displayed branches: b_1 * xx") {
  auto ctx = c1();
  FreeWord start = b_of(*ctx, "");
  FreeWord result = ctx->act(start, W("x x"));
  FreeWord expect;
  expect.push(FreeFactor{ctx->basis_key(W("x"), {}), +1});
  expect.push(FreeFactor{ctx->basis_key({}, {}), +1});
  expect.push(FreeFactor{ctx->basis_key(W("x"), {}), -1});
  CHECK(result == expect);
  CHECK(ctx->act(start, {}) == start);
}

TEST_CASE("the generator action is an automorphism (inverse round trips)") {
  for (auto ctx : {ArtinContext::get(g1()), ArtinContext::get(g2y()), ArtinContext::get(g5b())}) {
    auto t0 = enumerate_T0(*ctx, 4, 4);
    for (const ALNormalForm& h : t0) {
      FreeWord b = FreeWord::single(ctx->basis_key(h.flat_word(), {}));
      for (VertexId s : ctx->dd().link_L.vertices()) {
        CAPTURE(h.str(), symbols::name(s));
        REQUIRE(ctx->act(ctx->act(b, Word{pos(s)}), Word{neg(s)}) == b);
        REQUIRE(ctx->act(ctx->act(b, Word{neg(s)}), Word{pos(s)}) == b);
      }
    }
  }
}

TEST_CASE("commuting generators act commutatively (m = 2)") {
  for (auto ctx : {ArtinContext::get(g1()), ArtinContext::get(g2y()), ArtinContext::get(g5b())}) {
    const CoxeterGraph& L = ctx->dd().link_L;
    auto t0 = enumerate_T0(*ctx, 4, 4);
    const auto& vs = L.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        auto m = L.label(vs[i], vs[j]);
        if (!m || *m != 2) continue;
        for (const ALNormalForm& h : t0) {
          FreeWord b = FreeWord::single(ctx->basis_key(h.flat_word(), {}));
          for (int si : {+1, -1})
            for (int sj : {+1, -1}) {
              Word ij{Letter{vs[i], si}, Letter{vs[j], sj}};
              Word ji{Letter{vs[j], sj}, Letter{vs[i], si}};
              REQUIRE(ctx->act(b, ij) == ctx->act(b, ji));
            }
        }
      }
  }
}

TEST_CASE("braid-type relations act equally ((st)^k = (ts)^k, m = 2k > 2)") {
  auto ctx = ArtinContext::get(g5b());
  const CoxeterGraph& L = ctx->dd().link_L;
  VertexId s = symbols::intern("s"), t = symbols::intern("t");
  REQUIRE(*L.label(s, t) == 4);
  Word st = pi_word(4, s, t), ts = pi_word(4, t, s);
  for (const ALNormalForm& h : enumerate_T0(*ctx, 4, 4)) {
    FreeWord b = FreeWord::single(ctx->basis_key(h.flat_word(), {}));
    CAPTURE(h.str());
    REQUIRE(ctx->act(b, st) == ctx->act(b, ts));
  }
}

TEST_CASE("defining relators of A_1 act trivially") {
  for (const CoxeterGraph& g : property_corpus()) {
    auto ctx = ArtinContext::get(g);
    std::mt19937 rng(83);
    auto t0 = enumerate_T0(*ctx, 3, 3);
    auto kernel = sample_kernel_piL(*ctx, rng, 4, 4);
    for (int i = 0; i < 12; ++i) {
      FreeWord omega = sample_free_word(*ctx, rng, t0, kernel, 4);
      for (const Word& r : defining_relators(ctx->dd().gamma1)) {
        CAPTURE(g.canonical_text(), omega.str(), to_string(r));
        REQUIRE(ctx->act(omega, r) == omega);
      }
    }
  }
}

TEST_CASE("act is a right action: act(act(w,g1),g2) = act(w, g1 g2)") {
  for (const CoxeterGraph& g : {g1(), g2y(), g3()}) {
    auto ctx = ArtinContext::get(g);
    std::mt19937 rng(89);
    auto t0 = enumerate_T0(*ctx, 3, 3);
    auto kernel = sample_kernel_piL(*ctx, rng, 4, 4);
    for (int i = 0; i < 25; ++i) {
      FreeWord omega = sample_free_word(*ctx, rng, t0, kernel, 3);
      Word a = random_word(rng, ctx->dd().gamma1, 5);
      Word b = random_word(rng, ctx->dd().gamma1, 5);
      REQUIRE(ctx->act(ctx->act(omega, a), b) == ctx->act(omega, concat(a, b)));
    }
  }
}

TEST_CASE("orbit of b_1: act(b_1, g) = b_{u(g)} on A_L1 T0") {
  for (auto ctx : {ArtinContext::get(g1()), ArtinContext::get(g2y())}) {
    FreeWord b1 = FreeWord::single(ctx->basis_key({}, {}));
    int checked = 0;
    for (const Word& w : all_words(ctx->dd().link_L, 4)) {
      ALNormalForm f = ctx->normalize_AL(w);
      auto split = ctx->split_L1_T0(f);
      if (!split || f.segment_length() > 6) continue;
      ++checked;
      FreeWord expect = FreeWord::single(ctx->basis_key_unchecked(split->second.flat_word(), {}));
      CAPTURE(to_string(w));
      REQUIRE(ctx->act(b1, w) == expect);
    }
    REQUIRE(checked > 50);
  }
}

TEST_CASE("phi intertwines the action with conjugation") {
  // words_equal(phi(act(b, s)), s^-1 phi(b) s)
  for (const CoxeterGraph& g : {g1(), g2y(), g3(), g5b()}) {
    auto ctx = ArtinContext::get(g);
    std::mt19937 rng(97);
    auto t0 = enumerate_T0(*ctx, 3, 3);
    auto kernel = sample_kernel_piL(*ctx, rng, 3, 3);
    CanonicalFormPtr trivial_g1 = ctx->gamma1()->normal_form({});
    for (int i = 0; i < 10; ++i) {
      FreeWord omega = sample_free_word(*ctx, rng, t0, kernel, 3);
      for (VertexId s : ctx->dd().gamma1.vertices()) {
        for (int sign : {+1, -1}) {
          Letter l{s, sign};
          SemidirectElement before{trivial_g1, omega};
          SemidirectElement after{trivial_g1, ctx->act_letter(omega, l)};
          Word lhs = ctx->phi(after);
          Word rhs = concat(concat(Word{inverse(l)}, ctx->phi(before)), Word{l});
          CAPTURE(omega.str(), to_string(Word{l}));
          REQUIRE(ctx->words_equal(lhs, rhs));
        }
      }
    }
  }
}
