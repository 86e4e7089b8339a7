#include "suites.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "engines.hpp"

namespace cdg {

void SuiteReport::fail(const std::string& what) {
  ok = false;
  failures.push_back(what);
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  for (const auto& l : lines) os << l << "\n";
  for (const auto& f : failures) os << "FAIL " << f << "\n";
  os << name << ": " << cases << " case(s), " << (ok ? "pass" : "FAIL") << "\n";
  return os.str();
}

namespace {

std::string case_tag(int k, const std::string& desc) { return "case " + std::to_string(k) + " [" + desc + "]"; }

bool check_all(SuiteReport& r, const std::string& tag, const std::string& builder, const Bicomplex& bc) {
  bool ok = true;
  for (const auto& ic : check_identities(bc))
    if (!ic.ok) {
      r.fail(tag + " " + builder + ": " + ic.name + " at weight " + std::to_string(ic.weight));
      ok = false;
    }
  return ok;
}

bool same_bicomplex(const Bicomplex& a, const Bicomplex& b) {
  return a.degrees == b.degrees && a.labels == b.labels && a.del == b.del && a.d == b.d && a.delta == b.delta;
}

bool same_blocks(const BlockMap& a, const BlockMap& b, const Bicomplex& src, const Bicomplex& dst) {
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, m] : a.blocks) keys.insert(k);
  for (const auto& [k, m] : b.blocks) keys.insert(k);
  for (const auto& k : keys) {
    if (k.first > src.truncation || k.second > dst.truncation) continue;
    std::size_t rows = dst.dim(k.second), cols = src.dim(k.first);
    if (!(a.block(k.first, k.second, rows, cols) == b.block(k.first, k.second, rows, cols))) return false;
  }
  return true;
}

}  // namespace

SuiteReport bicomplex_identity_suite(std::uint64_t seed, int cases, int t, const Field& f, const GradingGroup& g) {
  SuiteReport r;
  r.name = "bicomplex-identities";
  Rng rng(seed);
  RandomOptions opt{f, g, 4, true, true};
  for (int k = 0; k < cases; ++k) {
    RandomCategory rc = random_category(rng, opt);
    auto b = rc.category;
    std::string tag = case_tag(k, rc.description);
    ++r.cases;
    if (!validate(*b).ok()) {
      r.fail(tag + ": generated category is not CDG");
      continue;
    }
    CdgModule n = random_free_module(rng, b, Side::Right);
    CdgModule m = random_free_module(rng, b, Side::Left);
    CdgModule l = random_free_module(rng, b, Side::Left);
    if (!is_cdg_module(n) || !is_cdg_module(m) || !is_cdg_module(l)) {
      r.fail(tag + ": generated module is not CDG");
      continue;
    }
    Enveloping e = enveloping(b);
    CdgModule diag = diagonal_bimodule(b, e.env);
    bool ok = check_all(r, tag, "bar", bar_bicomplex(n, m, t));
    ok = check_all(r, tag, "cobar", cobar_bicomplex(l, m, t)) && ok;
    ok = check_all(r, tag, "hochschild", hochschild_bicomplex(b, diag, false, t)) && ok;
    ok = check_all(r, tag, "hochschild cochains", hochschild_bicomplex(b, diag, true, t)) && ok;
    r.lines.push_back(tag + ": " + (ok ? "ok" : "FAIL"));
  }
  return r;
}

SuiteReport functoriality_suite(std::uint64_t seed, int cases, int t, const Field& fld) {
  SuiteReport r;
  r.name = "functoriality";
  Rng rng(seed);
  RandomOptions opt{fld, GradingGroup::mod_two(), 3, true, true};
  for (int k = 0; k < cases; ++k) {
    opt.grading = k % 2 ? GradingGroup::integers() : GradingGroup::mod_two();
    RandomCategory rc = random_category(rng, opt);
    std::string tag = case_tag(k, rc.description);
    ++r.cases;
    auto b = rc.category;
    CdgFunctor f = random_basis_change(rng, b);
    auto tau = random_connection(rng, *f.dst);
    CdgFunctor g = identity_with_connection(f.dst, tau);
    CdgFunctor gf = compose_functors(f, g);
    auto c = g.dst;
    bool ok = true;
    for (const CdgFunctor* fn : {&f, &g, &gf})
      if (!is_cdg(*fn)) {
        r.fail(tag + ": functor is not CDG");
        ok = false;
      }
    if (!ok) continue;
    std::string why;
    // bar pushforwards along B -F-> B' -G-> C
    CdgModule n = random_free_module(rng, c, Side::Right), m = random_free_module(rng, c, Side::Left);
    CdgModule n1 = restrict(g, n), m1 = restrict(g, m);
    CdgModule n0 = restrict(f, n1), m0 = restrict(f, m1);
    Bicomplex bar_c = bar_bicomplex(n, m, t), bar_1 = bar_bicomplex(n1, m1, t), bar_0 = bar_bicomplex(n0, m0, t);
    if (!same_bicomplex(bar_0, bar_bicomplex(restrict(gf, n), restrict(gf, m), t))) {
      r.fail(tag + ": restriction along G F differs from restriction along G then F");
      ok = false;
    }
    BlockMap g_star = pushforward_bar(g, bar_1, bar_c, n, m);
    BlockMap f_star = pushforward_bar(f, bar_0, bar_1, n1, m1);
    BlockMap gf_star = pushforward_bar(gf, bar_0, bar_c, n, m);
    for (auto [name, mp, s, d] : {std::tuple{"F_* (bar)", &f_star, &bar_0, &bar_1}, std::tuple{"G_* (bar)", &g_star, &bar_1, &bar_c},
                                  std::tuple{"(GF)_* (bar)", &gf_star, &bar_0, &bar_c}})
      if (!is_chain_map(*mp, *s, *d, &why)) {
        r.fail(tag + ": " + name + " is not a chain map at " + why);
        ok = false;
      }
    if (!same_blocks(gf_star, compose_block_maps(g_star, f_star, bar_1), bar_0, bar_c)) {
      r.fail(tag + ": (GF)_* differs from G_* F_* on the bar complex");
      ok = false;
    }
    // cobar pullbacks
    CdgModule l = random_free_module(rng, c, Side::Left);
    CdgModule l1 = restrict(g, l), l0 = restrict(f, l1);
    Bicomplex cb_c = cobar_bicomplex(l, m, t), cb_1 = cobar_bicomplex(l1, m1, t), cb_0 = cobar_bicomplex(l0, m0, t);
    BlockMap g_up = pullback_cobar(g, cb_c, cb_1, l, m);
    BlockMap f_up = pullback_cobar(f, cb_1, cb_0, l1, m1);
    BlockMap gf_up = pullback_cobar(gf, cb_c, cb_0, l, m);
    for (auto [name, mp, s, d] : {std::tuple{"F^* (cobar)", &f_up, &cb_1, &cb_0}, std::tuple{"G^* (cobar)", &g_up, &cb_c, &cb_1},
                                  std::tuple{"(GF)^* (cobar)", &gf_up, &cb_c, &cb_0}})
      if (!is_chain_map(*mp, *s, *d, &why)) {
        r.fail(tag + ": " + name + " is not a chain map at " + why);
        ok = false;
      }
    if (!same_blocks(gf_up, compose_block_maps(f_up, g_up, cb_1), cb_c, cb_0)) {
      r.fail(tag + ": (GF)^* differs from F^* G^* on the cobar complex");
      ok = false;
    }
    // Hochschild maps with coefficients in the diagonal of C, restricted
    for (const CdgFunctor* fn : {&f, &g}) {
      Enveloping es = enveloping(fn->src), ed = enveloping(fn->dst);
      CdgFunctor fop = opposite_functor(*fn, es.op, ed.op);
      CdgFunctor ff = tensor_functors(*fn, fop, es.env, ed.env);
      CdgModule mc = diagonal_bimodule(fn->dst, ed.env);
      CdgModule mb = restrict(ff, mc);
      std::string nm = fn == &f ? "F" : "G";
      Bicomplex hs = hochschild_bicomplex(fn->src, mb, false, t), hd = hochschild_bicomplex(fn->dst, mc, false, t);
      if (!is_chain_map(pushforward_hochschild(*fn, hs, hd, mc), hs, hd, &why)) {
        r.fail(tag + ": " + nm + "_* (Hochschild) is not a chain map at " + why);
        ok = false;
      }
      Bicomplex cs = hochschild_bicomplex(fn->dst, mc, true, t), cd = hochschild_bicomplex(fn->src, mb, true, t);
      if (!is_chain_map(pullback_hochschild(*fn, cs, cd, mc), cs, cd, &why)) {
        r.fail(tag + ": " + nm + "^* (Hochschild) is not a chain map at " + why);
        ok = false;
      }
    }
    r.lines.push_back(tag + ": " + (ok ? "ok" : "FAIL"));
  }
  return r;
}

std::vector<std::pair<std::vector<Index>, Scalar>> classical_hochschild_b(const CdgCategory& a,
                                                                         const std::vector<Index>& tuple) {
  const auto& G = a.grading;
  std::vector<std::pair<std::vector<Index>, Scalar>> out;
  std::size_t i = tuple.size() - 1;
  if (i == 0) return out;
  auto emit = [&](const Vec& prod, std::size_t pos, std::vector<Index> rest, const Scalar& sign) {
    // rest has a placeholder at pos
    for (const auto& [k, c] : prod.terms()) {
      rest[pos] = k;
      out.emplace_back(rest, c * sign);
    }
  };
  // a_0 a_1 (x) a_2 ... and the inner products a_k a_{k+1}, sign (-1)^k
  for (std::size_t k = 0; k < i; ++k) {
    std::vector<Index> rest;
    for (std::size_t j = 0; j < k; ++j) rest.push_back(tuple[j]);
    rest.push_back(0);
    for (std::size_t j = k + 2; j <= i; ++j) rest.push_back(tuple[j]);
    emit(a.compose[tuple[k]][tuple[k + 1]], k, rest, Scalar(k % 2 ? -1 : 1));
  }
  // cyclic term: (-1)^{i + |a_i|(|a_0| + ... + |a_{i-1}|)} a_i a_0 (x) a_1 ... a_{i-1}
  Degree before = 0;
  for (std::size_t j = 0; j < i; ++j) before += a.basis[tuple[j]].degree;
  int e = static_cast<int>(i % 2) + G.sigma(a.basis[tuple[i]].degree, G.normalize(before));
  std::vector<Index> rest(tuple.begin(), tuple.end() - 1);
  emit(a.compose[tuple[i]][tuple[0]], 0, rest, Scalar(e % 2 ? -1 : 1));
  return out;
}

std::vector<std::pair<std::vector<Index>, Scalar>> classical_hochschild_d(const CdgCategory& a,
                                                                         const std::vector<Index>& tuple) {
  const auto& G = a.grading;
  std::vector<std::pair<std::vector<Index>, Scalar>> out;
  std::size_t i = tuple.size() - 1;
  Degree before = 0;
  for (std::size_t k = 0; k <= i; ++k) {
    int e = static_cast<int>(i % 2) + G.parity(G.normalize(before));
    for (const auto& [x, c] : a.diff[tuple[k]].terms()) {
      std::vector<Index> v = tuple;
      v[k] = x;
      out.emplace_back(v, e % 2 ? -c : c);
    }
    before += a.basis[tuple[k]].degree;
  }
  return out;
}

SuiteReport classical_hochschild_suite(const std::vector<CategoryPtr>& algebras, int t) {
  SuiteReport r;
  r.name = "classical-hochschild";
  int k = 0;
  for (const auto& b : algebras) {
    const auto& A = *b;
    std::string tag = case_tag(k++, A.objects.size() == 1 ? std::to_string(A.dim()) + "-dimensional algebra" : "category");
    ++r.cases;
    bool flat = true;
    for (const auto& h : A.curvature) flat = flat && h.empty();
    if (!flat || A.num_objects() != 1) {
      r.fail(tag + ": needs a one-object algebra with zero curvature");
      continue;
    }
    Enveloping e = enveloping(b);
    Bicomplex bc = hochschild_bicomplex(b, diagonal_bimodule(b, e.env), false, t);
    bool ok = true;
    for (int w = 0; w <= t; ++w) {
      auto uw = static_cast<std::size_t>(w);
      std::map<std::vector<Index>, Index> pos_prev, pos_here;
      if (w > 0)
        for (Index q = 0; q < bc.dim(w - 1); ++q) pos_prev[bc.labels[uw - 1][q]] = q;
      for (Index q = 0; q < bc.dim(w); ++q) pos_here[bc.labels[uw][q]] = q;
      if (pos_here.size() != static_cast<std::size_t>(std::pow(A.dim(), w + 1))) {
        r.fail(tag + ": weight " + std::to_string(w) + " does not have the classical dimension");
        ok = false;
        continue;
      }
      for (Index q = 0; q < bc.dim(w); ++q) {
        const auto& lab = bc.labels[uw][q];
        VecBuilder bv, dv;
        for (const auto& [key, c] : classical_hochschild_b(A, lab)) bv.add(pos_prev.at(key), c);
        for (const auto& [key, c] : classical_hochschild_d(A, lab)) dv.add(pos_here.at(key), c);
        Vec want_b = bv.finish(), want_d = dv.finish();
        Vec got_b = w > 0 ? bc.del[uw].col(q) : Vec();
        if (!(want_b == got_b)) {
          r.fail(tag + ": del differs from the classical b at weight " + std::to_string(w));
          ok = false;
          break;
        }
        if (!(want_d == bc.d[uw].col(q))) {
          r.fail(tag + ": d differs from the classical internal differential at weight " + std::to_string(w));
          ok = false;
          break;
        }
      }
      if (!bc.delta[uw].is_zero()) {
        r.fail(tag + ": delta is nonzero at weight " + std::to_string(w));
        ok = false;
      }
    }
    r.lines.push_back(tag + ": " + (ok ? "matches" : "FAIL"));
  }
  return r;
}

}  // namespace cdg
