#include <atomic>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace artin;
using namespace artin::test;

namespace {
Word W(const std::string& s) { return parse_word(s); }
}

TEST_CASE("psi on the worked example, derived by hand from the extension rule") {
  auto ctx = ArtinContext::get(g1());
  CHECK(ctx->sd_display(ctx->psi(W("z"))) == "(1 ; b[|]^1)");
  SemidirectElement zxzx = ctx->psi(W("z x z x"));
  SemidirectElement xzxz = ctx->psi(W("x z x z"));
  CHECK(ctx->sd_display(zxzx) == "(x^2 ; b[x|]^1 b[|]^1)");
  CHECK(zxzx == xzxz);

  // intermediate states of the fold
  CHECK(ctx->sd_display(ctx->psi(W("z x"))) == "(x ; b[x|]^1)");
  CHECK(ctx->sd_display(ctx->psi(W("x z"))) == "(x ; b[|]^1)");
  CHECK(ctx->sd_display(ctx->psi(W("z x z"))) == "(x ; b[x|]^1 b[|]^1)");
}

TEST_CASE("phi on basis elements") {
  auto ctx = ArtinContext::get(g1());
  SemidirectElement e{ctx->gamma1()->normal_form({}), FreeWord::single(ctx->basis_key({}, {}))};
  CHECK(to_string(ctx->phi(e)) == "z");

  SemidirectElement xonly{ctx->gamma1()->normal_form(W("x")), {}};
  CHECK(to_string(ctx->phi(xonly)) == "x");

  SemidirectElement bx{ctx->gamma1()->normal_form({}), FreeWord::single(ctx->basis_key(W("x"), {}))};
  CHECK(to_string(ctx->phi(bx)) == "x^-1 z x");
}

TEST_CASE("normal_form golden cases") {
  auto ctx = ArtinContext::get(g1());
  // the defining relator reduces to the trivial form
  CHECK(ctx->normal_form(W("z x z x x^-1 z^-1 x^-1 z^-1"))->trivial());
  CHECK(*ctx->normal_form(W("z x z x")) == *ctx->normal_form(W("x z x z")));
  CHECK(*ctx->normal_form(W("z x")) != *ctx->normal_form(W("x z")));
  CHECK(ctx->normal_form(W("z x z x"))->str() == "(((() ; b[|]^1 b[|]^1) ; 1) ; b[x|]^1 b[|]^1)");
  CHECK(ctx->words_equal(W("z x z x"), W("x z x z")));
  CHECK(!ctx->words_equal(W("z x"), W("x z")));
  CHECK(ctx->words_equal(W("a a^-1"), W("1")));
  CHECK_THROWS_AS(ctx->normal_form(W("q")), precondition_error);

  CoxeterGraph nonfc =
      CoxeterGraph::make({"a", "b", "c"}, {{"a", "b", 4}, {"a", "c", 4}, {"b", "c", 2}});
  CHECK_THROWS_WITH(ArtinContext::get(nonfc)->normal_form(W("a")),
                    Catch::Matchers::ContainsSubstring("triangle a b c"));
}

TEST_CASE("round trip A: nf(phi(psi(w))) = nf(w)") {
  std::mt19937 rng(101);
  for (const CoxeterGraph& g : property_corpus()) {
    auto ctx = ArtinContext::get(g);
    for (int i = 0; i < 60; ++i) {
      Word w = random_word(rng, g, 12);
      SemidirectElement e = ctx->psi(w);
      CAPTURE(g.canonical_text(), to_string(w));
      REQUIRE(*ctx->normal_form(ctx->phi(e)) == *ctx->normal_form(w));
    }
  }
}

TEST_CASE("round trip B: psi(phi(e)) = e on assembled elements") {
  std::mt19937 rng(103);
  for (const CoxeterGraph& g : {g1(), g2y(), g3(), g5b()}) {
    auto ctx = ArtinContext::get(g);
    auto t0 = enumerate_T0(*ctx, 3, 3);
    auto kernel = sample_kernel_piL(*ctx, rng, 4, 4);
    for (int i = 0; i < 30; ++i) {
      SemidirectElement e{ctx->gamma1()->normal_form(random_word(rng, ctx->dd().gamma1, 6)),
                          sample_free_word(*ctx, rng, t0, kernel, 4)};
      SemidirectElement back = ctx->psi(ctx->phi(e));
      CAPTURE(g.canonical_text(), ctx->sd_display(e));
      REQUIRE(back == e);
    }
  }
}

TEST_CASE("psi is a homomorphism: psi(w1 w2) = psi(w1) psi(w2)") {
  std::mt19937 rng(107);
  for (const CoxeterGraph& g : property_corpus()) {
    auto ctx = ArtinContext::get(g);
    for (int i = 0; i < 40; ++i) {
      Word w1 = random_word(rng, g, 8);
      Word w2 = random_word(rng, g, 8);
      SemidirectElement prod = ctx->sd_multiply(ctx->psi(w1), ctx->psi(w2));
      SemidirectElement direct = ctx->psi(concat(w1, w2));
      CAPTURE(g.canonical_text(), to_string(w1), to_string(w2));
      REQUIRE(prod == direct);
    }
  }
}

TEST_CASE("normal form is invariant under relator insertion (depth <= 8)") {
  std::mt19937 rng(109);
  for (const CoxeterGraph& g : property_corpus()) {
    auto ctx = ArtinContext::get(g);
    for (int i = 0; i < 40; ++i) {
      Word w = random_word(rng, g, 10);
      Word v = insert_relators(rng, g, w, static_cast<int>(rng() % 9));
      CAPTURE(g.canonical_text(), to_string(w), to_string(v));
      REQUIRE(ctx->words_equal(w, v));
    }
  }
}

TEST_CASE("abelianization: exponent sums survive phi(psi(w)) and detect nontriviality") {
  std::mt19937 rng(113);
  for (const CoxeterGraph& g : property_corpus()) {
    auto ctx = ArtinContext::get(g);
    auto sums_of = [&](const Word& v) {
      std::map<VertexId, std::int64_t> m;
      for (VertexId u : g.vertices()) m[u] = 0;
      for (const Letter& l : v) m[l.gen] += l.sign;
      return m;
    };
    for (int i = 0; i < 40; ++i) {
      Word w = random_word(rng, g, 10);
      Word back = ctx->phi(ctx->psi(w));
      REQUIRE(sums_of(back) == sums_of(w));
      bool nonzero = false;
      for (const auto& [v, e] : exponent_sums(w))
        if (e != 0) nonzero = true;
      if (nonzero) REQUIRE(!ctx->normal_form(w)->trivial());
    }
  }
}

TEST_CASE("canonical words are fixed points of the engine") {
  std::mt19937 rng(127);
  for (const CoxeterGraph& g : property_corpus()) {
    auto ctx = ArtinContext::get(g);
    for (int i = 0; i < 30; ++i) {
      Word w = random_word(rng, g, 9);
      Word cw = ctx->canonical_word(w);
      REQUIRE(ctx->canonical_word(cw) == cw);
      REQUIRE(*ctx->normal_form(cw) == *ctx->normal_form(w));
    }
  }
}

TEST_CASE("polyfree towers on the named examples") {
  auto t_z2 = ArtinContext::get(z2())->polyfree_tower();
  REQUIRE(t_z2.stages.size() == 2);
  CHECK(t_z2.stages[0].rank == std::uint64_t{1});
  CHECK(t_z2.stages[1].rank == std::uint64_t{1});

  auto t_f2 = ArtinContext::get(f2())->polyfree_tower();
  REQUIRE(t_f2.stages.size() == 2);
  CHECK(!t_f2.stages[0].rank.has_value());  // countably infinite
  CHECK(t_f2.stages[1].rank == std::uint64_t{1});

  auto t_g1 = ArtinContext::get(g1())->polyfree_tower();
  REQUIRE(t_g1.stages.size() == 3);
  CHECK(t_g1.stages[0].removed == symbols::intern("z"));
  CHECK(t_g1.stages[0].rank == std::uint64_t{2});  // T0 = {1, x}, Ker(pi_L) = 1
  CHECK(t_g1.stages[1].rank == std::uint64_t{1});
  CHECK(t_g1.stages[2].rank == std::uint64_t{1});

  // even dihedral of label 2k: first stage has rank k
  auto t_d6 = ArtinContext::get(dihedral(6))->polyfree_tower();
  REQUIRE(t_d6.stages.size() == 2);
  CHECK(t_d6.stages[0].rank == std::uint64_t{3});

  for (const CoxeterGraph& g : property_corpus())
    CHECK(ArtinContext::get(g)->polyfree_tower().stages.size() == g.vertices().size());
}

TEST_CASE("right-angled cross-check against the shuffle normal form") {
  std::mt19937 rng(131);
  for (const CoxeterGraph& g : raag_corpus()) {
    auto ctx = ArtinContext::get(g);
    for (int i = 0; i < 200; ++i) {
      Word w1 = random_word(rng, g, 10);
      Word w2 = random_word(rng, g, 10);
      bool engine = ctx->words_equal(w1, w2);
      bool pile = raag_normal_form(g, w1) == raag_normal_form(g, w2);
      CAPTURE(g.canonical_text(), to_string(w1), to_string(w2));
      REQUIRE(engine == pile);
    }
  }
}

TEST_CASE("equality does not depend on the split vertex") {
  // the same group presented with permuted vertex declarations splits at a
  // different vertex; the equality relation must be identical
  auto permutations_of_g1 = std::vector<CoxeterGraph>{
      CoxeterGraph::make({"a", "x", "z"}, {{"z", "a", 2}, {"z", "x", 4}, {"a", "x", 2}}),
      CoxeterGraph::make({"x", "z", "a"}, {{"z", "a", 2}, {"z", "x", 4}, {"a", "x", 2}}),
  };
  auto base = ArtinContext::get(g1());
  std::mt19937 rng(157);
  for (const CoxeterGraph& g : permutations_of_g1) {
    auto other = ArtinContext::get(g);
    for (int i = 0; i < 120; ++i) {
      Word w1 = random_word(rng, g1(), 9);
      Word w2 = random_word(rng, g1(), 9);
      CAPTURE(to_string(w1), to_string(w2));
      REQUIRE(base->words_equal(w1, w2) == other->words_equal(w1, w2));
    }
  }

  auto g2y_perm = CoxeterGraph::make({"y", "b", "x", "a", "z"},
                                     {{"z", "a", 2}, {"z", "b", 2}, {"z", "x", 4}, {"z", "y", 4},
                                      {"a", "x", 2}, {"b", "y", 2}, {"a", "b", 2}});
  auto base2 = ArtinContext::get(g2y());
  auto other2 = ArtinContext::get(g2y_perm);
  for (int i = 0; i < 80; ++i) {
    Word w1 = random_word(rng, g2y(), 8);
    Word w2 = insert_relators(rng, g2y(), w1, static_cast<int>(rng() % 4));
    Word w3 = random_word(rng, g2y(), 8);
    CAPTURE(to_string(w1), to_string(w3));
    REQUIRE(other2->words_equal(w1, w2));
    REQUIRE(base2->words_equal(w1, w3) == other2->words_equal(w1, w3));
  }
}

TEST_CASE("serialization goldens stay pinned") {
  auto ctx = ArtinContext::get(g2y());
  Word w = parse_word("z x b y z^-1 a");
  CHECK(ctx->normal_form(w)->str() ==
        "(((((() ; b[|]^1) ; b[|y]^1) ; b[|]^1) ; b[|]^1) ; b[x b y a|]^1 b[|]^-1)");
  CHECK(to_string(ctx->canonical_word(w)) == "x y b y^-1 b^-1 x^-1 z x b y a z^-1");

  auto c5 = ArtinContext::get(g5b());
  CHECK(c5->normal_form(parse_word("z s x t z"))->str() ==
        "((((() ; b[|]^1) ; b[|]^1) ; b[t|]^1) ; b[x|]^1 b[|]^1)");
  CHECK(to_string(c5->canonical_word(parse_word("z s x t z"))) == "x s t x^-1 z x z");
}

TEST_CASE("concurrent equality queries on one shared context") {
  auto ctx = ArtinContext::get(g2y());
  std::vector<std::pair<Word, Word>> jobs;
  std::mt19937 rng(163);
  for (int i = 0; i < 40; ++i) {
    Word w = random_word(rng, g2y(), 8);
    jobs.emplace_back(w, insert_relators(rng, g2y(), w, 3));
  }
  std::atomic<int> bad{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < jobs.size(); i += 4)
        if (!ctx->words_equal(jobs[i].first, jobs[i].second)) ++bad;
    });
  for (auto& th : workers) th.join();
  CHECK(bad == 0);
  // the memoized answers agree with a fresh sequential pass
  for (const auto& [w, v] : jobs) CHECK(ctx->words_equal(w, v));
}

TEST_CASE("empty graph and single vertex") {
  auto empty = ArtinContext::get(CoxeterGraph{});
  CHECK(empty->normal_form({})->trivial());
  CHECK(empty->canonical_word({}).empty());

  auto zctx = ArtinContext::get(CoxeterGraph::make({"a"}));
  CHECK(zctx->canonical_word(W("a a a^-1")) == W("a"));
  CHECK(zctx->normal_form(W("a^2"))->str() == "(() ; b[|]^1 b[|]^1)");
  CHECK(zctx->polyfree_tower().stages.size() == 1);
}
