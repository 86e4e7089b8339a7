#include <doctest.h>

#include "random_cdg.hpp"
#include "support.hpp"

using namespace cdg;
using cdgtest::category;

TEST_CASE("free CDG-modules over random categories are CDG") {
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    auto rc = random_category(rng, {Field::rationals(), GradingGroup::mod_two(), 4, true, true});
    CAPTURE(rc.description);
    for (Side s : {Side::Left, Side::Right}) {
      CdgModule m = random_free_module(rng, rc.category, s, 2);
      CHECK(validate_module(m).ok());
      CHECK(is_graded_projective(m));
    }
  }
}

TEST_CASE("free CDG-module on one generator has twice the rank") {
  auto b = category("endalgebra");
  CdgModule p = free_graded_module(b, Side::Right, {{0, 0}});
  CHECK(p.dim() == b->dim());
  CdgModule f = free_cdg_module(p);
  CHECK(f.dim() == 2 * b->dim());
  CHECK(is_cdg_module(f));
}

TEST_CASE("shift and cone preserve the CDG condition") {
  Rng rng(9);
  auto b = random_category(rng, {Field::rationals(), GradingGroup::integers(), 4, true, false}).category;
  CdgModule m = random_free_module(rng, b, Side::Left);
  for (Degree n : {1, -1, 2}) CHECK(validate_module(shift_module(m, n)).ok());
  CdgModule c = cone(identity_map(m.dim()), m, m);
  CHECK(validate_module(c).ok());
  CHECK(contracting_homotopy(c).has_value());
}

TEST_CASE("over a nonzero scalar curvature every CDG-module is contractible") {
  auto loaded = cdgtest::load("counterexample");
  for (const auto& [n, m] : loaded.modules) {
    CAPTURE(n);
    auto h = contracting_homotopy(m);
    REQUIRE(h.has_value());
    // dH + Hd = id
    ModuleMap dh = hom_differential(*h, m, m);
    for (Index i = 0; i < m.dim(); ++i) CHECK(dh.apply(Vec::unit(i)) == Vec::unit(i));
  }
}

TEST_CASE("validation catches a perturbed module differential") {
  auto loaded = cdgtest::load("counterexample");
  CdgModule m = loaded.modules.at("free1");
  m.diff[0] = m.diff[0].scaled(2);
  CHECK_FALSE(validate_module(m).ok());
}

TEST_CASE("tensor over the base with the diagonal returns the module") {
  Rng rng(13);
  for (int k = 0; k < 6; ++k) {
    auto b = random_category(rng, {Field::rationals(), GradingGroup::mod_two(), 4, true, false}).category;
    CdgModule m = random_free_module(rng, b, Side::Left, 2);
    CdgModule rb = free_graded_module(b, Side::Right, {{0, 0}});
    // B(-,X) tensor_B M = M(X)
    TensorComplex t = tensor_over_base(rb, m);
    CHECK(t.complex.degrees.size() == m.component(0).size());
  }
}

TEST_CASE("the diagonal bimodule matches the Hom spaces") {
  auto b = category("matrix2");
  Enveloping env = enveloping(b);
  CdgModule diag = diagonal_bimodule(b, env.env);
  CHECK(diag.dim() == b->dim());
  CHECK(validate_module(diag).ok());
  CHECK(validate_module(diagonal_right_bimodule(b, env.env)).ok());
}

TEST_CASE("restriction along a basis change keeps modules CDG") {
  Rng rng(17);
  for (int k = 0; k < 6; ++k) {
    auto b = random_category(rng, {Field::rationals(), GradingGroup::mod_two(), 3, true, true}).category;
    CdgFunctor f = random_basis_change(rng, b);
    CdgModule n = random_free_module(rng, f.dst, Side::Right);
    CdgModule r = restrict(f, n);
    CHECK(r.dim() == n.dim());
    CHECK(validate_module(r).ok());
  }
}
