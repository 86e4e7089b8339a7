#include "module.hpp"

#include <map>
#include <tuple>

namespace cdg {

namespace {
Scalar sgn(int s) { return s < 0 ? Scalar(-1) : Scalar(1); }
}  // namespace

std::vector<Index> CdgModule::component(Index x) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].object == x) out.push_back(static_cast<Index>(i));
  return out;
}

Index CdgModule::basis_index(const std::string& name) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].name == name) return static_cast<Index>(i);
  throw ModuleError("unknown module basis element '" + name + "'");
}

Vec CdgModule::act(const Vec& b, const Vec& m) const {
  VecBuilder out;
  for (const auto& [i, x] : b.terms())
    for (const auto& [j, y] : m.terms()) out.add(action[i][j], x * y);
  return out.finish();
}

Vec CdgModule::d(const Vec& m) const {
  VecBuilder out;
  for (const auto& [i, x] : m.terms()) out.add(diff[i], x);
  return out.finish();
}

bool CdgModule::homogeneous_in(const Vec& v, Index obj, Degree g) const {
  const auto& G = grading();
  for (const auto& [i, c] : v.terms())
    if (basis[i].object != obj || G.normalize(basis[i].degree) != G.normalize(g)) return false;
  return true;
}

void CdgModule::reset_tables() {
  action.assign(base->dim(), std::vector<Vec>(basis.size()));
  diff.assign(basis.size(), Vec());
}

Vec ModuleMap::apply(const Vec& v) const {
  VecBuilder out;
  for (const auto& [i, x] : v.terms()) out.add(images[i], x);
  return out.finish();
}

ModuleMap compose_maps(const ModuleMap& f, const ModuleMap& g, const GradingGroup& gr) {
  ModuleMap h;
  h.degree = gr.add(f.degree, g.degree);
  for (const auto& v : g.images) h.images.push_back(f.apply(v));
  return h;
}

ModuleMap identity_map(std::size_t n) {
  ModuleMap m;
  for (std::size_t i = 0; i < n; ++i) m.images.push_back(Vec::unit(static_cast<Index>(i)));
  return m;
}

bool is_linear(const ModuleMap& f, const CdgModule& src, const CdgModule& dst) {
  const auto& G = src.grading();
  const auto& B = *src.base;
  if (f.images.size() != src.dim()) return false;
  for (Index i = 0; i < src.dim(); ++i)
    if (!dst.homogeneous_in(f.images[i], src.basis[i].object, G.add(src.basis[i].degree, f.degree))) return false;
  for (Index b = 0; b < B.dim(); ++b)
    for (Index m = 0; m < src.dim(); ++m) {
      const Vec& bm = src.action[b][m];
      bool defined = src.side == Side::Left ? B.basis[b].src == src.basis[m].object
                                            : B.basis[b].dst == src.basis[m].object;
      if (!defined) continue;
      Vec lhs = f.apply(bm);
      Vec rhs = dst.act(Vec::unit(b), f.images[m]);
      if (src.side == Side::Left) rhs = rhs.scaled(G.koszul_sign(f.degree, B.basis[b].degree));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

ModuleMap hom_differential(const ModuleMap& f, const CdgModule& src, const CdgModule& dst) {
  const auto& G = src.grading();
  ModuleMap r;
  r.degree = G.add(f.degree, G.one());
  Scalar s = -sgn(G.koszul_sign(G.one(), f.degree));
  for (Index i = 0; i < src.dim(); ++i) {
    Vec v = dst.d(f.images[i]);
    v.add_scaled(f.apply(src.diff[i]), s);
    r.images.push_back(v);
  }
  return r;
}

bool is_closed(const ModuleMap& f, const CdgModule& src, const CdgModule& dst) {
  for (const auto& v : hom_differential(f, src, dst).images)
    if (!v.empty()) return false;
  return true;
}

ValidationReport validate_module(const CdgModule& m, bool qdg) {
  ValidationReport r;
  const auto& B = *m.base;
  const auto& G = B.grading;
  bool left = m.side == Side::Left;
  bool tables = m.action.size() == B.dim() && m.diff.size() == m.dim();
  for (const auto& row : m.action) tables = tables && row.size() == m.dim();
  for (const auto& e : m.basis) tables = tables && e.object < B.num_objects();
  r.record("module tables sized consistently", tables);
  if (!tables) return r;
  auto nm = [&](Index i) { return m.basis[i].name; };

  auto defined = [&](Index b, Index x) {
    return left ? B.basis[b].src == m.basis[x].object : B.basis[b].dst == m.basis[x].object;
  };
  for (Index b = 0; b < B.dim(); ++b)
    for (Index x = 0; x < m.dim(); ++x) {
      const Vec& v = m.action[b][x];
      if (!defined(b, x)) {
        r.record("action is composable and degree-additive", v.empty(), B.basis[b].name + "," + nm(x));
        continue;
      }
      Index obj = left ? B.basis[b].dst : B.basis[b].src;
      r.record("action is composable and degree-additive",
               m.homogeneous_in(v, obj, G.add(B.basis[b].degree, m.basis[x].degree)), B.basis[b].name + "," + nm(x));
    }
  r.record("action is composable and degree-additive", true);

  for (Index x = 0; x < m.dim(); ++x) {
    Vec vx = Vec::unit(x);
    r.record("unit acts as identity", m.act(B.unit[m.basis[x].object], vx) == vx, nm(x));
  }

  for (Index f = 0; f < B.dim(); ++f)
    for (Index g = 0; g < B.dim(); ++g) {
      if (B.basis[f].src != B.basis[g].dst) continue;
      for (Index x = 0; x < m.dim(); ++x) {
        Vec lhs, rhs;
        if (left) {
          if (!defined(g, x)) continue;
          lhs = m.act(B.compose[f][g], Vec::unit(x));
          rhs = m.act(Vec::unit(f), m.action[g][x]);
        } else {
          if (!defined(f, x)) continue;
          lhs = m.act(B.compose[f][g], Vec::unit(x));
          rhs = m.act(Vec::unit(g), m.action[f][x]);
        }
        r.record("action is associative", lhs == rhs, B.basis[f].name + "," + B.basis[g].name + "," + nm(x));
      }
    }
  r.record("action is associative", true);

  for (Index x = 0; x < m.dim(); ++x)
    r.record("d is homogeneous of degree one",
             m.homogeneous_in(m.diff[x], m.basis[x].object, G.add(m.basis[x].degree, G.one())), nm(x));

  for (Index b = 0; b < B.dim(); ++b)
    for (Index x = 0; x < m.dim(); ++x) {
      if (!defined(b, x)) continue;
      Vec lhs = m.d(m.action[b][x]);
      Vec rhs;
      if (left) {
        rhs = m.act(B.diff[b], Vec::unit(x));
        rhs.add_scaled(m.act(Vec::unit(b), m.diff[x]), sgn(G.koszul_sign(G.one(), B.basis[b].degree)));
      } else {
        rhs = m.act(Vec::unit(b), m.diff[x]);
        rhs.add_scaled(m.act(B.diff[b], Vec::unit(x)), sgn(G.koszul_sign(G.one(), m.basis[x].degree)));
      }
      r.record("Leibniz rule", lhs == rhs, B.basis[b].name + "," + nm(x));
    }
  r.record("Leibniz rule", true);

  if (!qdg) {
    auto curv = module_curvature(m);
    for (Index x = 0; x < m.dim(); ++x)
      r.record(left ? "d^2 = h." : "d^2 = -.h", curv[x].empty(), nm(x));
  }
  return r;
}

std::vector<Vec> module_curvature(const CdgModule& m) {
  const auto& B = *m.base;
  std::vector<Vec> out;
  for (Index x = 0; x < m.dim(); ++x) {
    Vec v = m.d(m.diff[x]);
    Vec h = m.act(B.curvature[m.basis[x].object], Vec::unit(x));
    v.add_scaled(h, m.side == Side::Left ? -1 : 1);
    out.push_back(v);
  }
  return out;
}

bool is_cdg_module(const CdgModule& m) {
  for (const auto& v : module_curvature(m))
    if (!v.empty()) return false;
  return true;
}

CdgModule twist_module(const CdgModule& m, const ModuleMap& tau) {
  const auto& G = m.grading();
  if (G.normalize(tau.degree) != G.one() || !is_linear(tau, m, m))
    throw ModuleError("twist_module: tau must be B-linear of degree one");
  CdgModule r = m;
  for (Index x = 0; x < m.dim(); ++x) r.diff[x].add_scaled(tau.images[x], 1);
  r.summand = m.summand;
  return r;
}

CdgModule shift_module(const CdgModule& m, Degree n) {
  const auto& G = m.grading();
  CdgModule r = m;
  for (auto& e : r.basis) e.degree = G.add(e.degree, -n);
  int sd = G.koszul_sign(n, G.one());
  for (auto& v : r.diff) v = v.scaled(sd);
  if (m.side == Side::Left)
    for (Index b = 0; b < m.base->dim(); ++b) {
      int s = G.koszul_sign(n, m.base->basis[b].degree);
      if (s < 0)
        for (auto& v : r.action[b]) v = -v;
    }
  if (r.summand)
    for (auto& g : r.summand->generators) g.degree = G.add(g.degree, -n);
  return r;
}

CdgModule free_graded_module(const CategoryPtr& b, Side side, const std::vector<FreeGenerator>& gens) {
  const auto& B = *b;
  const auto& G = B.grading;
  CdgModule m;
  m.side = side;
  m.base = b;
  std::map<std::pair<Index, Index>, Index> idx;  // (generator, B basis) -> module basis
  for (Index j = 0; j < gens.size(); ++j)
    for (Index f = 0; f < B.dim(); ++f) {
      const auto& e = B.basis[f];
      bool ok = side == Side::Left ? e.src == gens[j].object : e.dst == gens[j].object;
      if (!ok) continue;
      std::string name = side == Side::Left ? e.name + ".g" + std::to_string(j) : "g" + std::to_string(j) + "." + e.name;
      idx[{j, f}] = static_cast<Index>(m.basis.size());
      m.basis.push_back({name, side == Side::Left ? e.dst : e.src, G.add(e.degree, gens[j].degree)});
    }
  m.reset_tables();
  for (const auto& [key, pos] : idx) {
    auto [j, f] = key;
    for (Index c = 0; c < B.dim(); ++c) {
      const Vec& prod = side == Side::Left ? B.compose[c][f] : B.compose[f][c];
      VecBuilder out;
      for (const auto& [k, x] : prod.terms()) out.add(idx.at({j, k}), x);
      m.action[c][pos] = out.finish();
    }
  }
  SummandPresentation sp;
  sp.generators = gens;
  for (Index i = 0; i < m.dim(); ++i) {
    sp.iota.push_back(Vec::unit(i));
    sp.pi.push_back(Vec::unit(i));
  }
  m.summand = sp;
  return m;
}

CdgModule free_cdg_module(const CdgModule& p) {
  const auto& B = *p.base;
  const auto& G = B.grading;
  bool left = p.side == Side::Left;
  Index n = static_cast<Index>(p.dim());
  CdgModule q;
  q.side = p.side;
  q.base = p.base;
  q.basis = p.basis;
  for (const auto& e : p.basis) q.basis.push_back({"d(" + e.name + ")", e.object, G.add(e.degree, G.one())});
  q.reset_tables();
  auto bar = [&](const Vec& v) {
    std::vector<Vec::Term> t;
    for (const auto& [i, x] : v.terms()) t.emplace_back(i + n, x);
    return Vec::from_sorted(std::move(t));
  };
  for (Index b = 0; b < B.dim(); ++b)
    for (Index x = 0; x < n; ++x) {
      const Vec& bp = p.action[b][x];
      q.action[b][x] = bp;
      bool defined = left ? B.basis[b].src == p.basis[x].object : B.basis[b].dst == p.basis[x].object;
      if (!defined) continue;
      Vec db_p = p.act(B.diff[b], Vec::unit(x));
      Vec v = bar(bp);
      if (left) {
        // b.d(p) = (-1)^{|b|} (d(bp) - (db).p)
        v.add_scaled(db_p, -1);
        q.action[b][x + n] = v.scaled(G.koszul_sign(G.one(), B.basis[b].degree));
      } else {
        // d(p).b = d(pb) - (-1)^{|p|} p.db
        v.add_scaled(db_p, -sgn(G.koszul_sign(G.one(), p.basis[x].degree)));
        q.action[b][x + n] = v;
      }
    }
  for (Index x = 0; x < n; ++x) {
    q.diff[x] = Vec::unit(x + n);
    Vec h = p.act(B.curvature[p.basis[x].object], Vec::unit(x));
    q.diff[x + n] = left ? h : -h;
  }
  return q;
}

CdgModule qdg_structure_on_projective(const CdgModule& f, const std::vector<ModBasis>& p_basis,
                                      const ModuleMap& iota, const ModuleMap& pi) {
  const auto& G = f.grading();
  if (iota.images.size() != p_basis.size() || pi.images.size() != f.dim())
    throw ModuleError("qdg_structure_on_projective: map sizes do not match");
  for (Index i = 0; i < p_basis.size(); ++i)
    if (!(pi.apply(iota.images[i]) == Vec::unit(i))) throw ModuleError("qdg_structure_on_projective: pi iota != id");
  CdgModule p;
  p.side = f.side;
  p.base = f.base;
  p.basis = p_basis;
  p.reset_tables();
  for (Index b = 0; b < f.base->dim(); ++b)
    for (Index i = 0; i < p.dim(); ++i) p.action[b][i] = pi.apply(f.act(Vec::unit(b), iota.images[i]));
  for (Index i = 0; i < p.dim(); ++i) p.diff[i] = pi.apply(f.d(iota.images[i]));
  if (G.normalize(iota.degree) != 0 || G.normalize(pi.degree) != 0 || !is_linear(iota, p, f) || !is_linear(pi, f, p))
    throw ModuleError("qdg_structure_on_projective: iota and pi must be B-linear of degree zero");
  return p;
}

CdgModule representable_qdg(const CategoryPtr& b, Index x) {
  const auto& B = *b;
  CdgModule r;
  r.side = Side::Right;
  r.base = b;
  std::vector<std::int64_t> pos(B.dim(), -1);
  for (Index f = 0; f < B.dim(); ++f)
    if (B.basis[f].dst == x) {
      pos[f] = static_cast<std::int64_t>(r.basis.size());
      r.basis.push_back({B.basis[f].name, B.basis[f].src, B.basis[f].degree});
    }
  r.reset_tables();
  auto restrict_vec = [&](const Vec& v) {
    VecBuilder out;
    for (const auto& [i, c] : v.terms()) out.add(static_cast<Index>(pos[i]), c);
    return out.finish();
  };
  for (Index f = 0; f < B.dim(); ++f) {
    if (pos[f] < 0) continue;
    Index k = static_cast<Index>(pos[f]);
    for (Index c = 0; c < B.dim(); ++c) r.action[c][k] = restrict_vec(B.compose[f][c]);
    r.diff[k] = restrict_vec(B.diff[f]);
  }
  return r;
}

CdgModule external_tensor(const CdgModule& m1, const CdgModule& m2, const CategoryPtr& tb) {
  if (m1.side != m2.side) throw ModuleError("external_tensor: sides differ");
  const auto& G = m1.grading();
  const auto &B1 = *m1.base, &B2 = *m2.base;
  std::size_t n2 = m2.dim(), nb2 = B2.dim(), no2 = B2.num_objects();
  if (tb->dim() != B1.dim() * nb2) throw ModuleError("external_tensor: base is not the tensor category");
  CdgModule t;
  t.side = m1.side;
  t.base = tb;
  for (const auto& a : m1.basis)
    for (const auto& b : m2.basis)
      t.basis.push_back({a.name + "@" + b.name, static_cast<Index>(a.object * no2 + b.object), G.add(a.degree, b.degree)});
  t.reset_tables();
  auto pair = [&](const Vec& a, const Vec& b) {
    VecBuilder out;
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) out.add(static_cast<Index>(i * n2 + j), x * y);
    return out.finish();
  };
  bool left = m1.side == Side::Left;
  for (Index f1 = 0; f1 < B1.dim(); ++f1)
    for (Index f2 = 0; f2 < nb2; ++f2)
      for (Index x = 0; x < m1.dim(); ++x)
        for (Index y = 0; y < n2; ++y) {
          const Vec &a = m1.action[f1][x], &b = m2.action[f2][y];
          if (a.empty() || b.empty()) continue;
          int s = left ? G.koszul_sign(B2.basis[f2].degree, m1.basis[x].degree)
                       : G.koszul_sign(m2.basis[y].degree, B1.basis[f1].degree);
          t.action[f1 * nb2 + f2][x * n2 + y] = pair(a, b).scaled(s);
        }
  for (Index x = 0; x < m1.dim(); ++x)
    for (Index y = 0; y < n2; ++y) {
      Vec v = pair(m1.diff[x], Vec::unit(y));
      v.add_scaled(pair(Vec::unit(x), m2.diff[y]), G.koszul_sign(m1.basis[x].degree, G.one()));
      t.diff[x * n2 + y] = v;
    }
  return t;
}

CdgModule diagonal_bimodule(const CategoryPtr& b, const CategoryPtr& tb) {
  const auto& B = *b;
  const auto& G = B.grading;
  std::size_t nb = B.dim(), no = B.num_objects();
  CdgModule m;
  m.side = Side::Left;
  m.base = tb;
  for (const auto& e : B.basis) m.basis.push_back({e.name, static_cast<Index>(e.dst * no + e.src), e.degree});
  m.reset_tables();
  // (f x g^op).m = (-1)^{|g||m|} f m g
  for (Index f = 0; f < nb; ++f)
    for (Index g = 0; g < nb; ++g)
      for (Index x = 0; x < nb; ++x) {
        if (B.basis[f].src != B.basis[x].dst || B.basis[g].dst != B.basis[x].src) continue;
        Vec v = B.mul(B.mul(Vec::unit(f), Vec::unit(x)), Vec::unit(g));
        m.action[f * nb + g][x] = v.scaled(G.koszul_sign(B.basis[g].degree, B.basis[x].degree));
      }
  m.diff = B.diff;
  return m;
}

CdgModule diagonal_right_bimodule(const CategoryPtr& b, const CategoryPtr& tb) {
  const auto& B = *b;
  const auto& G = B.grading;
  std::size_t nb = B.dim(), no = B.num_objects();
  CdgModule m;
  m.side = Side::Right;
  m.base = tb;
  for (const auto& e : B.basis) m.basis.push_back({e.name, static_cast<Index>(e.src * no + e.dst), e.degree});
  m.reset_tables();
  // n.(f x g^op) = (-1)^{|g|(|n|+|f|)} g n f
  for (Index f = 0; f < nb; ++f)
    for (Index g = 0; g < nb; ++g)
      for (Index x = 0; x < nb; ++x) {
        if (B.basis[f].dst != B.basis[x].src || B.basis[g].src != B.basis[x].dst) continue;
        Vec v = B.mul(B.mul(Vec::unit(g), Vec::unit(x)), Vec::unit(f));
        int s = G.koszul_sign(B.basis[g].degree, G.add(B.basis[x].degree, B.basis[f].degree));
        m.action[f * nb + g][x] = v.scaled(s);
      }
  m.diff = B.diff;
  return m;
}

CdgModule restrict(const CdgFunctor& f, const CdgModule& m) {
  const auto &B = *f.src, &C = *f.dst;
  const auto& G = B.grading;
  if (m.base->dim() != C.dim()) throw ModuleError("restrict: module is not over the target category");
  bool left = m.side == Side::Left;
  CdgModule r;
  r.side = m.side;
  r.base = f.src;
  std::vector<std::vector<Index>> copy(B.num_objects());  // per B object: positions for M(F X)
  std::vector<std::int64_t> local(m.dim(), -1);
  for (Index x = 0; x < B.num_objects(); ++x) {
    auto comp = m.component(f.obj_map[x]);
    for (std::size_t k = 0; k < comp.size(); ++k) {
      copy[x].push_back(static_cast<Index>(r.basis.size()));
      const auto& e = m.basis[comp[k]];
      r.basis.push_back({e.name, x, e.degree});
    }
  }
  r.reset_tables();
  // Embed a vector of M living in M(F X) into the copy for X.
  auto embed = [&](const Vec& v, Index x) {
    auto comp = m.component(f.obj_map[x]);
    std::map<Index, Index> where;
    for (std::size_t k = 0; k < comp.size(); ++k) where[comp[k]] = copy[x][k];
    VecBuilder out;
    for (const auto& [i, c] : v.terms()) out.add(where.at(i), c);
    return out.finish();
  };
  std::vector<Index> orig;  // r basis -> m basis
  for (Index x = 0; x < B.num_objects(); ++x)
    for (Index i : m.component(f.obj_map[x])) orig.push_back(i);
  for (Index b = 0; b < B.dim(); ++b) {
    const auto& e = B.basis[b];
    for (Index i = 0; i < r.dim(); ++i) {
      bool defined = left ? e.src == r.basis[i].object : e.dst == r.basis[i].object;
      if (!defined) continue;
      Vec img = m.act(f.mor_map[b], Vec::unit(orig[i]));
      r.action[b][i] = embed(img, left ? e.dst : e.src);
    }
  }
  for (Index i = 0; i < r.dim(); ++i) {
    Index x = r.basis[i].object;
    Vec v = m.d(Vec::unit(orig[i]));
    Vec av = m.act(f.a[x], Vec::unit(orig[i]));
    if (left)
      v.add_scaled(av, 1);
    else
      v.add_scaled(av, -sgn(G.koszul_sign(G.one(), r.basis[i].degree)));
    r.diff[i] = embed(v, x);
  }
  (void)C;
  return r;
}

namespace {

// Direct sum of modules with each summand's degrees shifted by -shift[p]
// (so M[-p]) and left actions twisted accordingly.
CdgModule stacked(const std::vector<const CdgModule*>& parts, const std::vector<Degree>& shift,
                  std::vector<Index>& offset) {
  CdgModule r;
  r.side = parts[0]->side;
  r.base = parts[0]->base;
  offset.clear();
  for (std::size_t p = 0; p < parts.size(); ++p) {
    offset.push_back(static_cast<Index>(r.basis.size()));
    CdgModule s = shift_module(*parts[p], -shift[p]);
    for (auto e : s.basis) r.basis.push_back(e);
  }
  r.reset_tables();
  for (std::size_t p = 0; p < parts.size(); ++p) {
    CdgModule s = shift_module(*parts[p], -shift[p]);
    auto off = [&](const Vec& v) {
      std::vector<Vec::Term> t;
      for (const auto& [i, c] : v.terms()) t.emplace_back(i + offset[p], c);
      return Vec::from_sorted(std::move(t));
    };
    for (Index b = 0; b < r.base->dim(); ++b)
      for (Index i = 0; i < s.dim(); ++i) r.action[b][i + offset[p]] = off(s.action[b][i]);
    for (Index i = 0; i < s.dim(); ++i) r.diff[i + offset[p]] = off(s.diff[i]);
  }
  return r;
}

Vec shifted(const Vec& v, Index off) {
  std::vector<Vec::Term> t;
  for (const auto& [i, c] : v.terms()) t.emplace_back(i + off, c);
  return Vec::from_sorted(std::move(t));
}

}  // namespace

CdgModule cone(const ModuleMap& f, const CdgModule& l, const CdgModule& m) {
  const auto& G = m.grading();
  if (G.normalize(f.degree) != 0 || !is_linear(f, l, m) || !is_closed(f, l, m))
    throw ModuleError("cone: map must be closed, B-linear and of degree zero");
  std::vector<Index> off;
  CdgModule c = stacked({&m, &l}, {0, -1}, off);
  for (Index i = 0; i < l.dim(); ++i) c.diff[i + off[1]].add_scaled(f.images[i], 1);
  return c;
}

CdgModule total_of_exact_triple(const CdgModule& k, const CdgModule& l, const CdgModule& m, const ModuleMap& f,
                                const ModuleMap& g) {
  const auto& G = m.grading();
  for (auto [map, src, dst] : {std::tuple{&f, &k, &l}, std::tuple{&g, &l, &m}})
    if (G.normalize(map->degree) != 0 || !is_linear(*map, *src, *dst) || !is_closed(*map, *src, *dst))
      throw ModuleError("total_of_exact_triple: maps must be closed, B-linear and of degree zero");
  for (Index i = 0; i < k.dim(); ++i)
    if (!g.apply(f.images[i]).empty()) throw ModuleError("total_of_exact_triple: g f != 0");
  // exactness: dimensions add up and f injective, g surjective
  SparseMatrix fm = SparseMatrix::from_columns(l.dim(), f.images);
  SparseMatrix gm = SparseMatrix::from_columns(m.dim(), g.images);
  if (rank(fm) != k.dim() || rank(gm) != m.dim() || k.dim() + m.dim() != l.dim())
    throw ModuleError("total_of_exact_triple: the triple is not exact");
  std::vector<Index> off;
  CdgModule t = stacked({&k, &l, &m}, {0, 1, 2}, off);
  for (Index i = 0; i < k.dim(); ++i) t.diff[i + off[0]].add_scaled(shifted(f.images[i], off[1]), 1);
  for (Index i = 0; i < l.dim(); ++i) t.diff[i + off[1]].add_scaled(shifted(g.images[i], off[2]), 1);
  return t;
}

}  // namespace cdg
