#include <doctest.h>

#include "random_cdg.hpp"
#include "support.hpp"

using namespace cdg;
using cdgtest::category;

TEST_CASE("shipped fixtures satisfy the CDG axioms") {
  for (const char* name : {"counterexample", "endalgebra", "exterior", "k-over-exterior", "dual-numbers", "matrix2",
                           "k00", "k00-integer"}) {
    CAPTURE(name);
    auto loaded = cdgtest::load(name);
    CHECK(validate(*loaded.category).ok());
    for (const auto& [n, m] : loaded.modules) {
      CAPTURE(n);
      CHECK(validate_module(m).ok());
    }
  }
}

TEST_CASE("the broken Leibniz fixture fails exactly the Leibniz axiom at (a,a)") {
  auto r = validate(*category("broken-leibniz"));
  CHECK_FALSE(r.ok());
  int failures = 0;
  for (const auto& it : r.items) {
    if (it.ok) continue;
    ++failures;
    CHECK(it.axiom == "graded Leibniz rule");
    CHECK(it.witness.find("a,a") != std::string::npos);
  }
  CHECK(failures == 1);
}

TEST_CASE("validation catches a perturbed composition table") {
  CdgCategory m2 = *category("matrix2");
  Index e12 = m2.basis_index("e12"), e21 = m2.basis_index("e21");
  m2.compose[e12][e21] = m2.compose[e12][e21].scaled(2);
  CHECK_FALSE(validate(m2).ok());
}

TEST_CASE("constructions preserve the axioms on random categories") {
  Rng rng(21);
  for (int k = 0; k < 12; ++k) {
    GradingGroup g = k % 2 ? GradingGroup::integers() : GradingGroup::mod_two();
    auto rc = random_category(rng, {Field::rationals(), g, 4, true, true});
    CAPTURE(rc.description);
    const CdgCategory& b = *rc.category;
    REQUIRE(validate(b).ok());
    CHECK(validate(opposite(b)).ok());
    CHECK(same_structure(opposite(opposite(b)), b));
    CHECK(validate(change_connection(b, random_connection(rng, b))).ok());
    if (g.is_mod_two()) CHECK(validate(curvature_shift(b, Scalar(3))).ok());
    if (b.dim() <= 3) CHECK(validate(tensor(b, opposite(b))).ok());
  }
}

TEST_CASE("a change of connection moves the curvature by d(tau) + tau^2") {
  // Over (k[x]/x^2, |x| = 1, d = 0, h = 0) the twist by tau = x gives h' = x^2 = 0,
  // while over End(k^{1|1}) the twist by u gives h' = d(u) + u^2 = 1.
  auto ext = category("exterior");
  Vec x = Vec::unit(ext->basis_index("x"));
  CdgCategory twisted = change_connection(*ext, {x});
  CHECK(twisted.curvature[0].empty());

  auto end = category("endalgebra");
  Vec u = Vec::unit(end->basis_index("u"));
  CdgCategory t2 = change_connection(*end, {u});
  CHECK(validate(t2).ok());
  CHECK(t2.curvature[0] == end->unit[0]);
}

TEST_CASE("curvature shift leaves the enveloping category unchanged") {
  for (const char* name : {"k00", "matrix2"}) {
    auto b = category(name);
    for (int c : {1, -1, 2}) {
      CdgCategory bc = curvature_shift(*b, Scalar(c));
      CHECK_FALSE(same_structure(bc, *b));
      CHECK(same_structure(tensor(bc, opposite(bc)), tensor(*b, opposite(*b))));
    }
  }
}

TEST_CASE("functors: random basis changes are strict CDG isomorphisms and compose") {
  Rng rng(8);
  for (int k = 0; k < 8; ++k) {
    auto b = random_category(rng, {Field::rationals(), GradingGroup::mod_two(), 3, true, true}).category;
    CdgFunctor f = random_basis_change(rng, b);
    CHECK(f.strict());
    CHECK(validate_functor(f).ok());
    CHECK(is_cdg(f));
    CdgFunctor g = identity_with_connection(f.dst, random_connection(rng, *f.dst));
    CHECK(is_cdg(g));
    CdgFunctor gf = compose_functors(f, g);
    CHECK(is_cdg(gf));
    for (Index i = 0; i < b->dim(); ++i) CHECK(gf.apply(Vec::unit(i)) == g.apply(f.apply(Vec::unit(i))));
  }
}
