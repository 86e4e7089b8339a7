#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace cdg;
using cdgtest::category;

namespace {

std::map<Degree, std::size_t> nonzero(const std::map<Degree, std::size_t>& t) {
  std::map<Degree, std::size_t> r;
  for (const auto& [g, d] : t)
    if (d) r[g] = d;
  return r;
}

}  // namespace

TEST_CASE("HH of the second kind of (k,0,1) is k in even degree over Q and F_5") {
  for (const auto& f : {Field::rationals(), Field::prime(5)}) {
    auto b = category("counterexample", f);
    for (bool coh : {false, true}) {
      HomologyReport r = hh_second_kind(b, nullptr, coh);
      CHECK(r.method == Method::FiniteExact);
      CHECK(nonzero(r.table) == std::map<Degree, std::size_t>{{0, 1}});
      CHECK(r.short_form() == "k");
    }
  }
}

TEST_CASE("first-kind functors over a curved base are refused") {
  auto b = category("counterexample");
  CHECK_THROWS_AS(hh_first_kind(b, nullptr, false, 4), UnsupportedError);
  auto loaded = cdgtest::load("counterexample");
  CHECK_THROWS_AS(tor_first_kind(loaded.modules.at("free1"), loaded.modules.at("free1_left"), 4), UnsupportedError);
}

TEST_CASE("End(k^{1|1}) has vanishing first-kind Hochschild homology") {
  HomologyReport r = hh_first_kind(category("endalgebra"), nullptr, false, 4);
  CHECK(r.method == Method::TruncationStabilized);
  CHECK(r.total() == 0);
}

TEST_CASE("graded radical and projectivity") {
  CHECK(graded_radical(*category("matrix2")).empty());
  auto rad = graded_radical(*category("exterior"));
  CHECK(rad.size() == 1);
  auto loaded = cdgtest::load("exterior");
  CHECK_FALSE(is_graded_projective(loaded.modules.at("k")));
}

TEST_CASE("resolutions: M_2 diagonal is projective, k over the exterior algebra is not finite") {
  auto m2 = category("matrix2");
  Enveloping env = enveloping(m2);
  Resolution r = projective_resolution(diagonal_bimodule(m2, env.env), 20);
  CHECK(r.complete);
  CHECK(r.terms.size() == 1);

  auto loaded = cdgtest::load("k-over-exterior");
  const CdgModule& k = loaded.modules.at("k");
  Resolution inf = projective_resolution(k, 20);
  CHECK_FALSE(inf.complete);
  CHECK(inf.depth == 20);
  // exactness: each kernel is the term minus the previous kernel
  std::size_t prev = k.dim();
  REQUIRE(inf.kernel_dims.size() == inf.terms.size());
  for (std::size_t i = 0; i < inf.terms.size(); ++i) {
    CHECK(inf.kernel_dims[i] == inf.terms[i].dim() - prev);
    prev = inf.kernel_dims[i];
  }
  // frozen from a run: 3, 5, ..., 41
  CHECK(inf.kernel_dims.front() == 3);
  CHECK(inf.kernel_dims.back() == 41);
}

TEST_CASE("HH of the second kind of M_2 is k") {
  HomologyReport r = hh_second_kind(category("matrix2"), nullptr, true);
  CHECK(r.method == Method::FiniteExact);
  CHECK(r.short_form() == "k");
}

TEST_CASE("Tor over the exterior algebra from truncated bar computations matches the oracle") {
  auto loaded = cdgtest::load("exterior");
  HomologyReport r = tor_first_kind(loaded.modules.at("k_right"), loaded.modules.at("k"), 6);
  CHECK(r.method == Method::TruncationStabilized);
  auto oracle = cdgtest::reduced_bar_tor(*loaded.category, 5);
  for (int w = 0; w <= 5; ++w) {
    CAPTURE(w);
    CHECK(oracle[{w, w}] == 1);
    CHECK(r.weights[{w, w}] == 1);
  }
  CHECK(r.weights.size() == 6);
}

TEST_CASE("Ext of the second kind over M_2 between free modules") {
  auto b = category("matrix2");
  CdgModule p = free_cdg_module(free_graded_module(b, Side::Left, {{0, 0}}));
  HomologyReport r = ext_second_kind(p, p);
  CHECK(r.method == Method::FiniteExact);
  // a free CDG-module over a flat base is contractible
  CHECK(r.total() == 0);
}

TEST_CASE("B versus End(free module) for (k,0,1)") {
  auto loaded = cdgtest::load("counterexample");
  Comparison c = compare_hh_B_vs_C(loaded.category, {loaded.modules.at("free1")});
  CHECK(c.equal);
  CHECK(c.line() == "EQUAL: k vs k");
}

TEST_CASE("delta columns are exact over a scalar curvature") {
  for (const auto& f : {Field::rationals(), Field::prime(7)})
    for (int c : {1, 3}) {
      auto b = std::make_shared<const CdgCategory>(ground_ring(f, GradingGroup::mod_two(), Scalar::from_int(c, f)));
      CdgModule n = free_cdg_module(free_graded_module(b, Side::Right, {{0, 0}}));
      CdgModule m = free_cdg_module(free_graded_module(b, Side::Left, {{0, 0}}));
      CHECK(delta_acyclicity_probe(b, n, m, 6).exact);
    }
}

TEST_CASE("report text lists both parities over Z/2") {
  HomologyReport r;
  r.grading = GradingGroup::mod_two();
  r.table = {{0, 1}};
  CHECK(r.text().find("odd: 0") != std::string::npos);
  CHECK(r.short_form() == "k");
  r.table = {{0, 2}, {1, 1}};
  CHECK(r.short_form() == "k^2 + k(odd)");
}
