#include "category.hpp"

#include <sstream>

namespace cdg {

bool ValidationReport::ok() const {
  for (const auto& i : items)
    if (!i.ok) return false;
  return true;
}

void ValidationReport::record(const std::string& axiom, bool ok, const std::string& witness) {
  for (auto& i : items)
    if (i.axiom == axiom) {
      if (i.ok && !ok) {
        i.ok = false;
        i.witness = witness;
      }
      return;
    }
  items.push_back({axiom, ok, ok ? std::string() : witness});
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  for (const auto& i : items) {
    os << (i.ok ? "PASS " : "FAIL ") << i.axiom;
    if (!i.ok && !i.witness.empty()) os << "  [" << i.witness << "]";
    os << '\n';
  }
  return os.str();
}

Index CdgCategory::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return static_cast<Index>(i);
  throw CategoryError("unknown object '" + name + "'");
}

Index CdgCategory::basis_index(const std::string& name) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].name == name) return static_cast<Index>(i);
  throw CategoryError("unknown basis morphism '" + name + "'");
}

std::vector<Index> CdgCategory::hom(Index x, Index y) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].src == x && basis[i].dst == y) out.push_back(static_cast<Index>(i));
  return out;
}

Vec CdgCategory::mul(const Vec& a, const Vec& b) const {
  VecBuilder out;
  for (const auto& [i, x] : a.terms())
    for (const auto& [j, y] : b.terms()) out.add(compose[i][j], x * y);
  return out.finish();
}

Vec CdgCategory::d(const Vec& a) const {
  VecBuilder out;
  for (const auto& [i, x] : a.terms()) out.add(diff[i], x);
  return out.finish();
}

Degree CdgCategory::degree_of(const Vec& v) const {
  if (v.empty()) return 0;
  Degree g = grading.normalize(basis[v.terms().front().first].degree);
  for (const auto& [i, x] : v.terms())
    if (grading.normalize(basis[i].degree) != g) throw CategoryError("inhomogeneous element " + vec_str(v));
  return g;
}

bool CdgCategory::homogeneous_in(const Vec& v, Index x, Index y, Degree g) const {
  for (const auto& [i, c] : v.terms()) {
    const auto& b = basis[i];
    if (b.src != x || b.dst != y || grading.normalize(b.degree) != grading.normalize(g)) return false;
  }
  return true;
}

void CdgCategory::reset_tables() {
  compose.assign(basis.size(), std::vector<Vec>(basis.size()));
  diff.assign(basis.size(), Vec());
  curvature.assign(objects.size(), Vec());
  unit.assign(objects.size(), Vec());
}

std::string CdgCategory::vec_str(const Vec& v) const {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, x] : v.terms()) {
    if (!first) os << " + ";
    first = false;
    if (!x.is_one()) os << x.str() << "*";
    os << basis[i].name;
  }
  return os.str();
}

namespace {

Scalar sgn(int s) { return s < 0 ? Scalar(-1) : Scalar(1); }

}  // namespace

ValidationReport validate(const CdgCategory& c) {
  ValidationReport r;
  const auto& G = c.grading;
  std::size_t n = c.dim();
  auto nm = [&](Index i) { return c.basis[i].name; };

  bool tables = c.compose.size() == n && c.diff.size() == n && c.curvature.size() == c.num_objects() &&
                c.unit.size() == c.num_objects();
  for (const auto& row : c.compose) tables = tables && row.size() == n;
  r.record("structure tables sized consistently", tables);
  if (!tables) return r;

  for (Index f = 0; f < n; ++f)
    for (Index g = 0; g < n; ++g) {
      const Vec& fg = c.compose[f][g];
      if (fg.empty()) continue;
      bool ok = c.basis[f].src == c.basis[g].dst &&
                c.homogeneous_in(fg, c.basis[g].src, c.basis[f].dst, G.add(c.basis[f].degree, c.basis[g].degree));
      r.record("composition is degree-additive and composable", ok, nm(f) + "*" + nm(g));
    }
  r.record("composition is degree-additive and composable", true);

  for (Index x = 0; x < c.num_objects(); ++x) {
    bool ok = c.homogeneous_in(c.unit[x], x, x, 0) && !c.unit[x].empty();
    r.record("units are degree-zero endomorphisms", ok, c.objects[x]);
  }
  for (Index f = 0; f < n; ++f) {
    Vec vf = Vec::unit(f);
    bool ok = c.mul(c.unit[c.basis[f].dst], vf) == vf && c.mul(vf, c.unit[c.basis[f].src]) == vf;
    r.record("two-sided unit law", ok, nm(f));
  }

  for (Index f = 0; f < n; ++f)
    for (Index g = 0; g < n; ++g) {
      if (c.basis[f].src != c.basis[g].dst) continue;
      for (Index h = 0; h < n; ++h) {
        if (c.basis[g].src != c.basis[h].dst) continue;
        Vec lhs = c.mul(c.compose[f][g], Vec::unit(h));
        Vec rhs = c.mul(Vec::unit(f), c.compose[g][h]);
        r.record("associativity", lhs == rhs, nm(f) + "," + nm(g) + "," + nm(h));
      }
    }
  r.record("associativity", true);

  for (Index f = 0; f < n; ++f) {
    bool ok = c.homogeneous_in(c.diff[f], c.basis[f].src, c.basis[f].dst, G.add(c.basis[f].degree, G.one()));
    r.record("d is homogeneous of degree one", ok, nm(f));
  }

  for (Index f = 0; f < n; ++f)
    for (Index g = 0; g < n; ++g) {
      if (c.basis[f].src != c.basis[g].dst) continue;
      Vec lhs = c.d(c.compose[f][g]);
      Vec rhs = c.mul(c.diff[f], Vec::unit(g));
      rhs.add_scaled(c.mul(Vec::unit(f), c.diff[g]), sgn(G.koszul_sign(G.one(), c.basis[f].degree)));
      r.record("graded Leibniz rule", lhs == rhs, nm(f) + "," + nm(g));
    }
  r.record("graded Leibniz rule", true);

  for (Index x = 0; x < c.num_objects(); ++x) {
    bool ok = c.homogeneous_in(c.curvature[x], x, x, G.add(G.one(), G.one()));
    r.record("curvature has degree two", ok, c.objects[x]);
    r.record("d(h) = 0", c.d(c.curvature[x]).empty(), c.objects[x]);
  }

  for (Index f = 0; f < n; ++f) {
    Vec vf = Vec::unit(f);
    Vec lhs = c.d(c.diff[f]);
    Vec rhs = c.mul(c.curvature[c.basis[f].dst], vf);
    rhs.add_scaled(c.mul(vf, c.curvature[c.basis[f].src]), -1);
    r.record("d^2 = [h, -]", lhs == rhs, nm(f));
  }
  return r;
}

CdgCategory opposite(const CdgCategory& c) {
  CdgCategory o;
  o.field = c.field;
  o.grading = c.grading;
  o.objects = c.objects;
  o.basis = c.basis;
  for (auto& b : o.basis) std::swap(b.src, b.dst);
  o.reset_tables();
  for (Index f = 0; f < c.dim(); ++f)
    for (Index g = 0; g < c.dim(); ++g) {
      int s = c.grading.koszul_sign(c.basis[f].degree, c.basis[g].degree);
      o.compose[f][g] = c.compose[g][f].scaled(s);
    }
  o.diff = c.diff;
  for (Index x = 0; x < c.num_objects(); ++x) o.curvature[x] = -c.curvature[x];
  o.unit = c.unit;
  return o;
}

CdgCategory tensor(const CdgCategory& c, const CdgCategory& d) {
  if (!(c.grading == d.grading)) throw CategoryError("tensor: grading groups differ");
  if (!(c.field == d.field)) throw CategoryError("tensor: fields differ");
  const auto& G = c.grading;
  CdgCategory t;
  t.field = c.field;
  t.grading = G;
  std::size_t no = d.num_objects(), nb = d.dim();
  for (const auto& x : c.objects)
    for (const auto& y : d.objects) t.objects.push_back("(" + x + "," + y + ")");
  for (const auto& f : c.basis)
    for (const auto& g : d.basis)
      t.basis.push_back({f.name + "@" + g.name, static_cast<Index>(f.src * no + g.src),
                         static_cast<Index>(f.dst * no + g.dst), G.add(f.degree, g.degree)});
  t.reset_tables();
  auto pair = [&](const Vec& a, const Vec& b) {
    VecBuilder out;
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) out.add(static_cast<Index>(i * nb + j), x * y);
    return out.finish();
  };
  for (Index f1 = 0; f1 < c.dim(); ++f1)
    for (Index f2 = 0; f2 < nb; ++f2)
      for (Index g1 = 0; g1 < c.dim(); ++g1)
        for (Index g2 = 0; g2 < nb; ++g2) {
          const Vec& a = c.compose[f1][g1];
          const Vec& b = d.compose[f2][g2];
          if (a.empty() || b.empty()) continue;
          int s = G.koszul_sign(d.basis[f2].degree, c.basis[g1].degree);
          t.compose[f1 * nb + f2][g1 * nb + g2] = pair(a, b).scaled(s);
        }
  for (Index f1 = 0; f1 < c.dim(); ++f1)
    for (Index f2 = 0; f2 < nb; ++f2) {
      Vec v = pair(c.diff[f1], Vec::unit(f2));
      v.add_scaled(pair(Vec::unit(f1), d.diff[f2]), G.koszul_sign(c.basis[f1].degree, G.one()));
      t.diff[f1 * nb + f2] = v;
    }
  for (Index x = 0; x < c.num_objects(); ++x)
    for (Index y = 0; y < no; ++y) {
      Vec h = pair(c.curvature[x], d.unit[y]);
      h.add_scaled(pair(c.unit[x], d.curvature[y]), 1);
      t.curvature[x * no + y] = h;
      t.unit[x * no + y] = pair(c.unit[x], d.unit[y]);
    }
  return t;
}

CdgCategory change_connection(const CdgCategory& b, const std::vector<Vec>& tau) {
  const auto& G = b.grading;
  if (tau.size() != b.num_objects()) throw CategoryError("change_connection: one element per object expected");
  for (Index x = 0; x < b.num_objects(); ++x)
    if (!b.homogeneous_in(tau[x], x, x, G.one()))
      throw CategoryError("change_connection: tau must be a degree-one endomorphism of " + b.objects[x]);
  CdgCategory r = b;
  for (Index f = 0; f < b.dim(); ++f) {
    Vec vf = Vec::unit(f);
    Vec v = b.diff[f];
    v.add_scaled(b.mul(tau[b.basis[f].dst], vf), 1);
    v.add_scaled(b.mul(vf, tau[b.basis[f].src]), -G.koszul_sign(G.one(), b.basis[f].degree));
    r.diff[f] = v;
  }
  for (Index x = 0; x < b.num_objects(); ++x) {
    Vec h = b.curvature[x];
    h.add_scaled(b.d(tau[x]), 1);
    h.add_scaled(b.mul(tau[x], tau[x]), 1);
    r.curvature[x] = h;
  }
  return r;
}

CdgCategory curvature_shift(const CdgCategory& b, const Scalar& c) {
  const auto& G = b.grading;
  if (!c.is_zero() && G.normalize(G.add(G.one(), G.one())) != 0)
    throw CategoryError("curvature_shift: c*id has degree 0, which is not the curvature degree 2");
  CdgCategory r = b;
  for (Index x = 0; x < b.num_objects(); ++x) r.curvature[x].add_scaled(b.unit[x], c.in(b.field));
  return r;
}

CdgCategory pushforward(const GradingMorphism& phi, const CdgCategory& b) {
  if (!(phi.source() == b.grading)) throw CategoryError("pushforward: grading mismatch");
  CdgCategory r = b;
  r.grading = phi.target();
  for (auto& e : r.basis) e.degree = phi.apply(e.degree);
  return r;
}

bool same_structure(const CdgCategory& a, const CdgCategory& b) {
  if (!(a.field == b.field) || !(a.grading == b.grading) || a.objects.size() != b.objects.size() ||
      a.dim() != b.dim())
    return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto &x = a.basis[i], &y = b.basis[i];
    if (x.src != y.src || x.dst != y.dst || a.grading.normalize(x.degree) != b.grading.normalize(y.degree))
      return false;
  }
  return a.compose == b.compose && a.diff == b.diff && a.curvature == b.curvature && a.unit == b.unit;
}

CdgCategory ground_ring(const Field& f, const GradingGroup& g, const Scalar& curvature) {
  CdgCategory c;
  c.field = f;
  c.grading = g;
  c.objects = {"pt"};
  c.basis = {{"1", 0, 0, 0}};
  c.reset_tables();
  c.compose[0][0] = Vec::unit(0);
  c.unit[0] = Vec::unit(0);
  c.curvature[0] = Vec::unit(0, curvature.in(f));
  return c;
}

// ---- functors ----

Vec CdgFunctor::apply(const Vec& v) const {
  VecBuilder out;
  for (const auto& [i, x] : v.terms()) out.add(mor_map[i], x);
  return out.finish();
}

bool CdgFunctor::strict() const {
  for (const auto& x : a)
    if (!x.empty()) return false;
  return true;
}

CdgFunctor identity_functor(const CategoryPtr& c) {
  CdgFunctor f;
  f.src = f.dst = c;
  for (Index x = 0; x < c->num_objects(); ++x) f.obj_map.push_back(x);
  for (Index i = 0; i < c->dim(); ++i) f.mor_map.push_back(Vec::unit(i));
  f.a.assign(c->num_objects(), Vec());
  return f;
}

CdgFunctor identity_with_connection(const CategoryPtr& b, const std::vector<Vec>& tau) {
  std::vector<Vec> neg;
  for (const auto& t : tau) neg.push_back(-t);
  CdgFunctor f = identity_functor(b);
  f.dst = std::make_shared<const CdgCategory>(change_connection(*b, neg));
  f.a = tau;
  return f;
}

ValidationReport validate_functor(const CdgFunctor& f) {
  ValidationReport r;
  const CdgCategory &B = *f.src, &C = *f.dst;
  const auto& G = B.grading;
  if (f.obj_map.size() != B.num_objects() || f.mor_map.size() != B.dim() || f.a.size() != B.num_objects()) {
    r.record("functor tables sized consistently", false);
    return r;
  }
  for (Index i = 0; i < B.dim(); ++i) {
    const auto& b = B.basis[i];
    r.record("morphisms map degree-preservingly", C.homogeneous_in(f.mor_map[i], f.obj_map[b.src], f.obj_map[b.dst], b.degree), b.name);
  }
  for (Index x = 0; x < B.num_objects(); ++x) {
    r.record("units preserved", f.apply(B.unit[x]) == C.unit[f.obj_map[x]], B.objects[x]);
    r.record("connection has degree one", C.homogeneous_in(f.a[x], f.obj_map[x], f.obj_map[x], G.one()), B.objects[x]);
  }
  for (Index p = 0; p < B.dim(); ++p)
    for (Index q = 0; q < B.dim(); ++q) {
      if (B.basis[p].src != B.basis[q].dst) continue;
      r.record("composition preserved", f.apply(B.compose[p][q]) == C.mul(f.mor_map[p], f.mor_map[q]),
               B.basis[p].name + "," + B.basis[q].name);
    }
  r.record("composition preserved", true);
  for (Index p = 0; p < B.dim(); ++p) {
    const auto& b = B.basis[p];
    const Vec& Fb = f.mor_map[p];
    Vec rhs = C.d(Fb);
    rhs.add_scaled(C.mul(f.a[b.dst], Fb), 1);
    rhs.add_scaled(C.mul(Fb, f.a[b.src]), -G.koszul_sign(G.one(), b.degree));
    r.record("F(df) = dF(f) + a F(f) - (-1)^|f| F(f) a", f.apply(B.diff[p]) == rhs, b.name);
  }
  auto hf = functor_curvature(f);
  bool flat = true;
  for (const auto& v : hf) flat = flat && v.empty();
  r.record("CDG condition F(h) = h + da + a^2", flat);
  return r;
}

std::vector<Vec> functor_curvature(const CdgFunctor& f) {
  const CdgCategory &B = *f.src, &C = *f.dst;
  std::vector<Vec> out;
  for (Index x = 0; x < B.num_objects(); ++x) {
    Index fx = f.obj_map[x];
    Vec h = C.curvature[fx];
    h.add_scaled(C.d(f.a[x]), 1);
    h.add_scaled(C.mul(f.a[x], f.a[x]), 1);
    h.add_scaled(f.apply(B.curvature[x]), -1);
    out.push_back(h);
  }
  return out;
}

bool is_cdg(const CdgFunctor& f) {
  for (const auto& v : functor_curvature(f))
    if (!v.empty()) return false;
  return true;
}

CdgFunctor compose_functors(const CdgFunctor& f, const CdgFunctor& g) {
  if (f.dst.get() != g.src.get() && !same_structure(*f.dst, *g.src))
    throw CategoryError("compose_functors: codomain of F differs from domain of G");
  CdgFunctor h;
  h.src = f.src;
  h.dst = g.dst;
  for (Index x : f.obj_map) h.obj_map.push_back(g.obj_map[x]);
  for (const auto& v : f.mor_map) h.mor_map.push_back(g.apply(v));
  for (Index x = 0; x < f.src->num_objects(); ++x) {
    Vec c = g.apply(f.a[x]);
    c.add_scaled(g.a[f.obj_map[x]], 1);
    h.a.push_back(c);
  }
  return h;
}

CdgFunctor opposite_functor(const CdgFunctor& f, const CategoryPtr& src_op, const CategoryPtr& dst_op) {
  CdgFunctor o = f;
  o.src = src_op;
  o.dst = dst_op;
  for (auto& v : o.a) v = -v;
  return o;
}

CdgFunctor tensor_functors(const CdgFunctor& f, const CdgFunctor& g, const CategoryPtr& src,
                           const CategoryPtr& dst) {
  CdgFunctor t;
  t.src = src;
  t.dst = dst;
  std::size_t gno_src = g.src->num_objects(), gno_dst = g.dst->num_objects();
  std::size_t gnb_dst = g.dst->dim();
  auto pair = [&](const Vec& a, const Vec& b) {
    VecBuilder out;
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) out.add(static_cast<Index>(i * gnb_dst + j), x * y);
    return out.finish();
  };
  for (Index x = 0; x < f.src->num_objects(); ++x)
    for (Index y = 0; y < gno_src; ++y) t.obj_map.push_back(static_cast<Index>(f.obj_map[x] * gno_dst + g.obj_map[y]));
  for (Index p = 0; p < f.src->dim(); ++p)
    for (Index q = 0; q < g.src->dim(); ++q) t.mor_map.push_back(pair(f.mor_map[p], g.mor_map[q]));
  for (Index x = 0; x < f.src->num_objects(); ++x)
    for (Index y = 0; y < gno_src; ++y) {
      Vec a = pair(f.a[x], g.dst->unit[g.obj_map[y]]);
      a.add_scaled(pair(f.dst->unit[f.obj_map[x]], g.a[y]), 1);
      t.a.push_back(a);
    }
  return t;
}

}  // namespace cdg
