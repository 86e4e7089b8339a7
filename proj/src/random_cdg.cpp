#include "random_cdg.hpp"

#include <functional>

namespace cdg {

namespace {

Scalar small(Rng& rng, const Field& f, bool nonzero = false) {
  std::uniform_int_distribution<int> dist(-2, 2);
  for (;;) {
    int v = dist(rng);
    Scalar s = Scalar::from_int(v, f);
    if (!nonzero || !s.is_zero()) return s;
  }
}

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

struct Template {
  const char* name;
  std::size_t dim;
  std::function<CdgCategory(Rng&, const Field&, const GradingGroup&)> make;
};

CdgCategory one_object(const Field& f, const GradingGroup& g, std::vector<std::pair<std::string, Degree>> basis) {
  CdgCategory c;
  c.field = f;
  c.grading = g;
  c.objects = {"pt"};
  for (auto& [n, d] : basis) c.basis.push_back({n, 0, 0, g.normalize(d)});
  c.reset_tables();
  c.unit[0] = Vec::unit(0);
  for (Index k = 0; k < c.dim(); ++k) {
    c.compose[0][k] = Vec::unit(k);
    c.compose[k][0] = Vec::unit(k);
  }
  return c;
}

Vec term(Index i, const Scalar& c) { return Vec::unit(i, c); }

const std::vector<Template>& templates() {
  static const std::vector<Template> t = {
      {"exterior(x)", 2,
       [](Rng&, const Field& f, const GradingGroup& g) { return one_object(f, g, {{"1", 0}, {"x", 1}}); }},
      {"dual numbers", 2,
       [](Rng&, const Field& f, const GradingGroup& g) { return one_object(f, g, {{"1", 0}, {"e", 0}}); }},
      {"k x k", 2,
       [](Rng&, const Field& f, const GradingGroup& g) {
         CdgCategory c = one_object(f, g, {{"1", 0}, {"e", 0}});
         c.compose[1][1] = Vec::unit(1);
         return c;
       }},
      {"k[x]/x^3, x odd", 3,
       [](Rng&, const Field& f, const GradingGroup& g) {
         CdgCategory c = one_object(f, g, {{"1", 0}, {"x", 1}, {"x2", 2}});
         c.compose[1][1] = term(2, 1);
         return c;
       }},
      {"exterior(x,y)", 4,
       [](Rng& rng, const Field& f, const GradingGroup& g) {
         CdgCategory c = one_object(f, g, {{"1", 0}, {"x", 1}, {"y", 1}, {"xy", 2}});
         c.compose[1][2] = term(3, 1);
         c.compose[2][1] = term(3, -1);
         // d x = a xy, d y = b xy
         c.diff[1] = term(3, small(rng, f));
         c.diff[2] = term(3, small(rng, f));
         return c;
       }},
      {"End(k^{1|1})", 4,
       [](Rng&, const Field& f, const GradingGroup& g) {
         // a = e_pp, u = e_pq, v = e_qp
         CdgCategory c = one_object(f, g, {{"1", 0}, {"a", 0}, {"u", 1}, {"v", -1}});
         c.compose[1][1] = term(1, 1);
         c.compose[1][2] = term(2, 1);
         c.compose[3][1] = term(3, 1);
         c.compose[2][3] = term(1, 1);
         c.compose[3][2] = term(0, 1) + term(1, -1);
         return c;
       }},
      {"M_2", 4,
       [](Rng&, const Field& f, const GradingGroup& g) {
         CdgCategory c = one_object(f, g, {{"1", 0}, {"e11", 0}, {"e12", 0}, {"e21", 0}});
         c.compose[1][1] = term(1, 1);
         c.compose[1][2] = term(2, 1);
         c.compose[3][1] = term(3, 1);
         c.compose[2][3] = term(1, 1);
         c.compose[3][2] = term(0, 1) + term(1, -1);
         return c;
       }},
      {"X -> Y", 3,
       [](Rng& rng, const Field& f, const GradingGroup& g) {
         CdgCategory c;
         c.field = f;
         c.grading = g;
         c.objects = {"X", "Y"};
         c.basis = {{"1X", 0, 0, 0}, {"1Y", 1, 1, 0}, {"f", 0, 1, g.normalize(pick(rng, 2))}};
         c.reset_tables();
         c.unit = {Vec::unit(0), Vec::unit(1)};
         c.compose[0][0] = Vec::unit(0);
         c.compose[1][1] = Vec::unit(1);
         c.compose[2][0] = Vec::unit(2);
         c.compose[1][2] = Vec::unit(2);
         return c;
       }},
  };
  return t;
}

}  // namespace

std::vector<Vec> random_connection(Rng& rng, const CdgCategory& b) {
  std::vector<Vec> tau(b.num_objects());
  for (Index x = 0; x < b.num_objects(); ++x) {
    VecBuilder v;
    for (Index f : b.hom(x, x))
      if (b.basis[f].degree == b.grading.one()) v.add(f, small(rng, b.field));
    tau[x] = v.finish();
  }
  return tau;
}

RandomCategory random_category(Rng& rng, const RandomOptions& opt) {
  std::vector<const Template*> ok;
  for (const auto& t : templates())
    if (t.dim <= opt.max_dim && (opt.multi_object || std::string(t.name) != "X -> Y")) ok.push_back(&t);
  const Template& t = *ok[static_cast<std::size_t>(pick(rng, static_cast<int>(ok.size())))];
  RandomCategory r;
  r.description = t.name;
  auto base = std::make_shared<const CdgCategory>(t.make(rng, opt.field, opt.grading));
  CdgFunctor iso = random_basis_change(rng, base);
  CdgCategory c = *iso.dst;
  if (opt.curved) {
    auto tau = random_connection(rng, c);
    bool any = false;
    for (const auto& v : tau) any = any || !v.empty();
    if (any) {
      c = change_connection(c, tau);
      r.description += ", connection";
    }
    if (opt.grading.is_mod_two() && pick(rng, 2)) {
      Scalar s = small(rng, opt.field, true);
      c = curvature_shift(c, s);
      r.description += ", curvature shift " + s.str();
    }
  }
  r.category = std::make_shared<const CdgCategory>(std::move(c));
  return r;
}

CdgFunctor random_basis_change(Rng& rng, const CategoryPtr& bp) {
  const CdgCategory& b = *bp;
  const auto& f = b.field;
  std::size_t n = b.dim();
  std::vector<bool> is_unit(n, false);
  for (const auto& u : b.unit) is_unit[u.terms().front().first] = true;
  // new basis element k in old coordinates
  std::vector<Vec> p(n);
  for (Index k = 0; k < n; ++k) {
    VecBuilder v;
    if (is_unit[k]) {
      p[k] = Vec::unit(k);
      continue;
    }
    v.add(k, small(rng, f, true));
    const auto& e = b.basis[k];
    for (Index j = k + 1; j < n; ++j) {
      const auto& o = b.basis[j];
      if (!is_unit[j] && o.src == e.src && o.dst == e.dst && o.degree == e.degree) v.add(j, small(rng, f));
    }
    if (e.src == e.dst && e.degree == 0) v.add(b.unit[e.src], small(rng, f));
    p[k] = v.finish();
  }
  SparseMatrix pm = SparseMatrix::from_columns(n, p);
  std::vector<Vec> inv(n);
  for (Index k = 0; k < n; ++k) {
    Vec x;
    if (!solve(pm, Vec::unit(k), x)) throw CategoryError("random_basis_change: singular change of basis");
    inv[k] = x;
  }
  auto to_new = [&](const Vec& old) {
    VecBuilder v;
    for (const auto& [i, c] : old.terms()) v.add(inv[i], c);
    return v.finish();
  };
  CdgCategory c = b;
  for (Index k = 0; k < n; ++k) c.basis[k].name = b.basis[k].name + "'";
  for (Index a = 0; a < n; ++a)
    for (Index e = 0; e < n; ++e) c.compose[a][e] = to_new(b.mul(p[a], p[e]));
  for (Index a = 0; a < n; ++a) c.diff[a] = to_new(b.d(p[a]));
  for (Index x = 0; x < b.num_objects(); ++x) c.curvature[x] = to_new(b.curvature[x]);
  CdgFunctor fn;
  fn.src = bp;
  fn.dst = std::make_shared<const CdgCategory>(std::move(c));
  for (Index x = 0; x < b.num_objects(); ++x) fn.obj_map.push_back(x);
  for (Index k = 0; k < n; ++k) fn.mor_map.push_back(inv[k]);
  fn.a.assign(b.num_objects(), Vec());
  return fn;
}

CdgModule random_free_module(Rng& rng, const CategoryPtr& b, Side side, std::size_t max_gens) {
  std::size_t count = 1 + static_cast<std::size_t>(pick(rng, static_cast<int>(max_gens)));
  std::vector<FreeGenerator> gens;
  for (std::size_t k = 0; k < count; ++k)
    gens.push_back({static_cast<Index>(pick(rng, static_cast<int>(b->num_objects()))), b->grading.normalize(pick(rng, 2))});
  return free_cdg_module(free_graded_module(b, side, gens));
}

}  // namespace cdg
