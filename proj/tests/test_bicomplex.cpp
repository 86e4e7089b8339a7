#include <doctest.h>

#include "oracles.hpp"
#include "suites.hpp"
#include "support.hpp"

using namespace cdg;
using cdgtest::category;

namespace {

bool all_ok(const std::vector<IdentityCheck>& v) {
  for (const auto& c : v)
    if (!c.ok) return false;
  return !v.empty();
}

}  // namespace

TEST_CASE("bar complex of k over the exterior algebra has 2^i basis tuples in weight i") {
  auto loaded = cdgtest::load("exterior");
  const auto &k = loaded.modules.at("k"), &kr = loaded.modules.at("k_right");
  Bicomplex bc = bar_bicomplex(kr, k, 5);
  for (int i = 0; i <= 5; ++i) CHECK(bc.dim(i) == (std::size_t{1} << i));
  Bicomplex red = bar_bicomplex(kr, k, 5, {true});
  for (int i = 0; i <= 5; ++i) CHECK(red.dim(i) == 1);
  CHECK(all_ok(check_identities(bc)));
  CHECK(all_ok(check_identities(red)));
}

TEST_CASE("the five identities hold on fixture builders") {
  auto loaded = cdgtest::load("counterexample");
  const auto &n = loaded.modules.at("free1"), &m = loaded.modules.at("free1_left");
  CHECK(all_ok(check_identities(bar_bicomplex(n, m, 5))));
  CHECK(all_ok(check_identities(cobar_bicomplex(m, m, 5))));
  for (const char* name : {"counterexample", "endalgebra", "matrix2"}) {
    CAPTURE(name);
    auto b = category(name);
    Enveloping env = enveloping(b);
    CdgModule diag = diagonal_bimodule(b, env.env);
    CHECK(all_ok(check_identities(hochschild_bicomplex(b, diag, false, 4))));
    CHECK(all_ok(check_identities(hochschild_bicomplex(b, diag, true, 4))));
  }
}

TEST_CASE("identity checks detect a perturbed component") {
  auto b = category("endalgebra");
  Enveloping env = enveloping(b);
  Bicomplex bc = hochschild_bicomplex(b, diagonal_bimodule(b, env.env), false, 4);
  REQUIRE(all_ok(check_identities(bc)));
  for (auto* comp : {&bc.del, &bc.d}) {
    Bicomplex broken = bc;
    auto& maps = comp == &bc.del ? broken.del : broken.d;
    // scale one nonzero column in weight 2
    SparseMatrix& mtx = maps[2];
    for (std::size_t j = 0; j < mtx.cols(); ++j)
      if (!mtx.col(j).empty()) {
        mtx.set_col(j, mtx.col(j).scaled(3));
        break;
      }
    CHECK_FALSE(all_ok(check_identities(broken)));
  }
}

TEST_CASE("flat Hochschild columns match the classical formulas") {
  std::vector<CategoryPtr> algebras{category("exterior"), category("dual-numbers"), category("matrix2")};
  Rng rng(2);
  for (int k = 0; k < 3; ++k)
    algebras.push_back(random_category(rng, {Field::rationals(), GradingGroup::integers(), 4, false, false}).category);
  auto r = classical_hochschild_suite(algebras, 4);
  CHECK_MESSAGE(r.ok, r.text());
}

TEST_CASE("classical b on k[e]/e^2 agrees with a hand computation") {
  // b(e, e) = ee - ee = 0, b(1, e) = e - e = 0, b(e, 1) = e - e = 0
  auto a = category("dual-numbers");
  Index one = a->basis_index("1"), e = a->basis_index("e");
  auto total = [&](const std::vector<Index>& t) {
    std::map<std::vector<Index>, Scalar> sum;
    for (const auto& [k, c] : classical_hochschild_b(*a, t)) sum[k] += c;
    std::size_t nonzero = 0;
    for (const auto& [k, c] : sum) nonzero += !c.is_zero();
    return nonzero;
  };
  CHECK(total({e, e}) == 0);
  CHECK(total({one, e}) == 0);
  CHECK(total({e, one}) == 0);
  // b(1, 1) = 1 - 1 = 0 but b(1, 1, 1) = 1|1 - 1|1 + 1|1 = 1|1
  CHECK(total({one, one}) == 0);
  CHECK(total({one, one, one}) == 1);
}

TEST_CASE("Tor over k[x]/x^3 from the bar bicomplex agrees with the reduced-bar oracle") {
  auto a = cdgtest::inline_category(R"({
    "field": "Q", "grading": "Z", "objects": ["pt"],
    "basis": [{"name": "1", "src": "pt", "dst": "pt", "degree": 0},
              {"name": "x", "src": "pt", "dst": "pt", "degree": 0},
              {"name": "x2", "src": "pt", "dst": "pt", "degree": 0}],
    "units": {"pt": "1"},
    "compose": [["x", "x", "x2", 1]]
  })");
  REQUIRE(validate(*a).ok());
  auto oracle = cdgtest::reduced_bar_tor(*a, 4);
  for (int w = 0; w <= 4; ++w) CHECK(oracle[{w, 0}] == 1);

  CdgModule k = cdg::module_from_json(
      cdg::json::parse(R"({"side": "left", "components": {"pt": [{"name": "k", "degree": 0}]}})"), a);
  CdgModule kr = cdg::module_from_json(
      cdg::json::parse(R"({"side": "right", "components": {"pt": [{"name": "k", "degree": 0}]}})"), a);
  Bicomplex bc = bar_bicomplex(kr, k, 5);
  auto w = weight_homology(bc);
  for (int i = 0; i <= 4; ++i) CHECK(w[{i, 0}] == oracle[{i, 0}]);
}

TEST_CASE("totalizations of a DG bicomplex: direct sum and product agree at finite truncation") {
  auto b = category("dual-numbers");
  Enveloping env = enveloping(b);
  Bicomplex bc = hochschild_bicomplex(b, diagonal_bimodule(b, env.env), false, 3);
  ComparisonMap c = comparison_map(bc);
  CHECK(c.source == c.target);
}

TEST_CASE("Z to Z/2 pushforward folds the Hochschild bicomplex") {
  auto r = pushforward_compat_check(GradingMorphism::make(GradingGroup::integers(), GradingGroup::mod_two()),
                                    category("exterior"), 4);
  CHECK(r.equal);
  CHECK_THROWS_AS(GradingMorphism::make(GradingGroup::mod_two(), GradingGroup::integers()), GradingError);
}
