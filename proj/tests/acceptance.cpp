// Acceptance run: one PASS/FAIL line per criterion, with wall time.
#include <cstdio>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "suites.hpp"
#include "support.hpp"

using namespace cdg;
using cdgtest::category;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool c, const std::string& what) {
    if (!c && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool table_is(const HomologyReport& r, std::size_t even, std::size_t odd) {
  auto get = [&](Degree g) { return r.table.count(g) ? r.table.at(g) : 0; };
  return get(0) == even && get(1) == odd;
}

Outcome c1() {
  Outcome o;
  for (const auto& f : {Field::rationals(), Field::prime(5)}) {
    auto b = category("counterexample", f);
    for (bool coh : {false, true}) {
      HomologyReport r = hh_second_kind(b, nullptr, coh);
      o.require(r.method == Method::FiniteExact && table_is(r, 1, 0),
                f.name() + (coh ? " cohomology: " : " homology: ") + r.short_form());
    }
  }
  return o;
}

Outcome c2() {
  Outcome o;
  auto loaded = cdgtest::load("counterexample");
  auto c = std::make_shared<const CdgCategory>(mf_category(loaded.category, {loaded.modules.at("free1")}, false));
  for (bool coh : {false, true}) {
    bool found = false;
    for (int t = 2; t <= 7 && !found; ++t) {
      HomologyReport r = hh_first_kind(c, nullptr, coh, t);
      found = r.method == Method::TruncationStabilized && r.total() == 0 && r.t2 <= 8;
    }
    o.require(found, coh ? "cohomology did not stabilize to zero" : "homology did not stabilize to zero");
  }
  return o;
}

Outcome c3() {
  Outcome o;
  auto loaded = cdgtest::load("counterexample");
  Comparison c = compare_hh_B_vs_C(loaded.category, {loaded.modules.at("free1")});
  o.require(c.equal && c.line() == "EQUAL: k vs k", c.line());
  return o;
}

Outcome c4() {
  Outcome o;
  for (const char* name : {"k00", "matrix2"}) {
    auto b = category(name);
    for (int c : {1, -1, 2}) {
      Comparison r = curvature_shift_check(b, Scalar(c));
      o.require(r.equal, std::string(name) + " shift " + std::to_string(c) + ": " + r.line());
      CdgCategory bc = curvature_shift(*b, Scalar(c));
      o.require(same_structure(tensor(bc, opposite(bc)), tensor(*b, opposite(*b))),
                std::string(name) + ": enveloping categories differ");
    }
  }
  return o;
}

Outcome c5() {
  Outcome o;
  SuiteReport r = bicomplex_identity_suite(7, 50, 5);
  o.require(r.ok && r.cases == 50, r.failures.empty() ? "wrong case count" : r.failures.front());
  return o;
}

Outcome c6() {
  Outcome o;
  SuiteReport r = functoriality_suite(7, 20, 6);
  o.require(r.ok && r.cases == 20, r.failures.empty() ? "wrong case count" : r.failures.front());
  return o;
}

Outcome c7() {
  Outcome o;
  std::vector<CategoryPtr> algebras{category("exterior"), category("dual-numbers"), category("matrix2")};
  SuiteReport r = classical_hochschild_suite(algebras, 4);
  o.require(r.ok && r.cases == 3, r.failures.empty() ? "wrong case count" : r.failures.front());
  return o;
}

Outcome c8() {
  Outcome o;
  auto m2 = category("matrix2");
  Enveloping env = enveloping(m2);
  Resolution r = projective_resolution(diagonal_bimodule(m2, env.env), 20);
  o.require(r.complete && r.terms.size() == 1, "M_2 diagonal: resolution length is not 0");
  HomologyReport hh = hh_second_kind(m2, nullptr, true, 20);
  o.require(hh.short_form() == "k", "HH^II(M_2) = " + hh.short_form());
  auto loaded = cdgtest::load("k-over-exterior");
  Resolution inf = projective_resolution(loaded.modules.at("k"), 20);
  o.require(!inf.complete && inf.depth == 20, "k over the exterior algebra: resolution terminated");
  return o;
}

Outcome c9() {
  Outcome o;
  for (const auto& f : {Field::rationals(), Field::prime(7)})
    for (int c : {1, 2, -1}) {
      auto b = std::make_shared<const CdgCategory>(ground_ring(f, GradingGroup::mod_two(), Scalar::from_int(c, f)));
      CdgModule n = free_cdg_module(free_graded_module(b, Side::Right, {{0, 0}}));
      CdgModule m = free_cdg_module(free_graded_module(b, Side::Left, {{0, 0}}));
      ProbeReport p = delta_acyclicity_probe(b, n, m, 6);
      o.require(p.exact, f.name() + " c=" + std::to_string(c) + ": delta column not exact");
    }
  return o;
}

Outcome c10() {
  Outcome o;
  auto loaded = cdgtest::load("exterior");
  const int t = 6;
  HomologyReport r = tor_first_kind(loaded.modules.at("k_right"), loaded.modules.at("k"), t);
  auto oracle = cdgtest::reduced_bar_tor(*loaded.category, t - 1);
  o.require(r.method == Method::TruncationStabilized, "method " + method_name(r.method));
  for (int w = 0; w <= t - 2; ++w) {
    std::size_t lib = 0, ref = 0;
    for (const auto& [k, d] : r.weights)
      if (k.first == w) lib += d;
    for (const auto& [k, d] : oracle)
      if (k.first == w) ref += d;
    o.require(lib == 1 && ref == 1,
              "degree " + std::to_string(w) + ": library " + std::to_string(lib) + ", oracle " + std::to_string(ref));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"1 HH^II of (k,0,1) is k (even) over Q and F_5", 1, c1},
      {"2 first-kind HH of End(free module) stabilizes to zero", 10, c2},
      {"3 compare BvsC gives EQUAL: k vs k", 10, c3},
      {"4 curvature shifts give equal HH and equal B x B^op", 10, c4},
      {"5 bicomplex identities on 50 random cases", 60, c5},
      {"6 pushforward/pullback functoriality on 20 cases", 60, c6},
      {"7 flat Hochschild matches the classical differential", 30, c7},
      {"8 resolution engine: M_2 length 0, k over exterior incomplete", 10, c8},
      {"9 delta columns exact over scalar curvature", 10, c9},
      {"10 Tor over k[x]/x^2 (|x|=1) agrees with reduced bar", 30, c10},
  };
  int failed = 0;
  for (const auto& c : all) {
    cdgtest::Stopwatch sw;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = sw.seconds();
    if (o.ok && s > c.budget) {
      o.ok = false;
      std::ostringstream os;
      os << "over the " << c.budget << " s budget";
      o.detail = os.str();
    }
    std::printf("%s  %-66s %7.2fs%s%s\n", o.ok ? "PASS" : "FAIL", c.name, s, o.ok ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
