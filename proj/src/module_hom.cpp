#include <map>
#include <set>
#include <unordered_map>

#include "module.hpp"

namespace cdg {

namespace {

Vec flatten(const ModuleMap& f, std::size_t dst_dim) {
  VecBuilder out;
  for (std::size_t i = 0; i < f.images.size(); ++i)
    for (const auto& [j, c] : f.images[i].terms()) out.add(static_cast<Index>(i * dst_dim + j), c);
  return out.finish();
}

ModuleMap unflatten(const Vec& v, Degree deg, std::size_t src_dim, std::size_t dst_dim) {
  ModuleMap f;
  f.degree = deg;
  std::vector<VecBuilder> b(src_dim);
  for (const auto& [k, c] : v.terms()) b[k / dst_dim].add(static_cast<Index>(k % dst_dim), c);
  for (auto& x : b) f.images.push_back(x.finish());
  return f;
}

}  // namespace

Vec HomComplex::coordinates(const ModuleMap& f) const {
  Vec combo;
  Vec rest = echelon->reduce_full(flatten(f, dst_dim), &combo);
  if (!rest.empty()) throw ModuleError("map is not in the span of the Hom basis");
  return combo;
}

HomComplex hom_complex(const CdgModule& l, const CdgModule& m, const std::vector<ModuleMap>& prefer,
                       bool differential) {
  const auto& B = *l.base;
  const auto& G = l.grading();
  if (l.side != m.side || l.base->dim() != m.base->dim()) throw ModuleError("hom_complex: modules do not match");
  bool left = l.side == Side::Left;
  std::size_t ld = l.dim(), md = m.dim();

  // occurs[i]: (b, k, c) with l_i occurring in b.l_k with coefficient c
  std::vector<std::vector<std::tuple<Index, Index, Scalar>>> occurs(ld);
  for (Index b = 0; b < B.dim(); ++b)
    for (Index k = 0; k < ld; ++k)
      for (const auto& [i, c] : l.action[b][k].terms()) occurs[i].emplace_back(b, k, c);

  std::set<Degree> degrees;
  for (const auto& a : l.basis)
    for (const auto& e : m.basis)
      if (a.object == e.object) degrees.insert(G.normalize(e.degree - a.degree));

  HomComplex hc;
  hc.src_dim = ld;
  hc.dst_dim = md;
  auto ech = std::make_shared<Echelon>(true);
  std::vector<std::pair<Vec, Degree>> chosen;
  auto offer = [&](const Vec& v, Degree g) {
    if (ech->insert(v, static_cast<Index>(chosen.size()))) chosen.emplace_back(v, g);
  };
  for (const auto& p : prefer) offer(flatten(p, md), G.normalize(p.degree));

  for (Degree g : degrees) {
    std::vector<std::pair<Index, Index>> unknowns;
    for (Index i = 0; i < ld; ++i)
      for (Index j = 0; j < md; ++j)
        if (l.basis[i].object == m.basis[j].object && G.normalize(m.basis[j].degree - l.basis[i].degree) == g)
          unknowns.emplace_back(i, j);
    std::unordered_map<std::uint64_t, Index> rowid;
    auto row = [&](Index b, Index k, Index j) {
      std::uint64_t key = (static_cast<std::uint64_t>(b) * ld + k) * md + j;
      auto [it, fresh] = rowid.emplace(key, static_cast<Index>(rowid.size()));
      return it->second;
    };
    std::vector<Vec> cols;
    for (auto [i, j] : unknowns) {
      VecBuilder c;
      // f(b.l_k) contributions
      for (const auto& [b, k, coef] : occurs[i]) c.add(row(b, k, j), coef);
      // -(sign) b.f(l_i)
      for (Index b = 0; b < B.dim(); ++b) {
        bool defined = left ? B.basis[b].src == l.basis[i].object : B.basis[b].dst == l.basis[i].object;
        if (!defined) continue;
        Scalar s = left ? Scalar(-G.koszul_sign(g, B.basis[b].degree)) : Scalar(-1);
        for (const auto& [jj, coef] : m.action[b][j].terms()) c.add(row(b, i, jj), coef * s);
      }
      cols.push_back(c.finish());
    }
    SparseMatrix cm = SparseMatrix::from_columns(rowid.size(), std::move(cols));
    for (const auto& kv : kernel_basis(cm)) {
      VecBuilder flat;
      for (const auto& [u, c] : kv.terms())
        flat.add(static_cast<Index>(unknowns[u].first * md + unknowns[u].second), c);
      offer(flat.finish(), g);
    }
  }

  for (const auto& [v, g] : chosen) {
    hc.flat.push_back(v);
    hc.basis.push_back(unflatten(v, g, ld, md));
  }
  hc.echelon = ech;
  hc.complex.grading = G;
  std::vector<Vec> dcols;
  for (const auto& f : hc.basis) {
    hc.complex.degrees.push_back(f.degree);
    if (differential) dcols.push_back(hc.coordinates(hom_differential(f, l, m)));
  }
  if (!differential) dcols.assign(hc.basis.size(), Vec());
  hc.complex.d = SparseMatrix::from_columns(hc.basis.size(), std::move(dcols));
  return hc;
}

std::optional<ModuleMap> contracting_homotopy(const CdgModule& m) {
  const auto& G = m.grading();
  ModuleMap id = identity_map(m.dim());
  HomComplex hc = hom_complex(m, m, {id});
  Degree g = G.normalize(-1);
  std::vector<Index> cols;
  for (Index k = 0; k < hc.basis.size(); ++k)
    if (hc.basis[k].degree == g) cols.push_back(k);
  std::vector<Index> rows(hc.basis.size());
  for (Index k = 0; k < rows.size(); ++k) rows[k] = k;
  SparseMatrix a = submatrix(hc.complex.d, rows, cols);
  Vec x;
  if (!solve(a, hc.coordinates(id), x)) return std::nullopt;
  ModuleMap h;
  h.degree = g;
  h.images.assign(m.dim(), Vec());
  for (const auto& [k, c] : x.terms())
    for (Index i = 0; i < m.dim(); ++i) h.images[i].add_scaled(hc.basis[cols[k]].images[i], c);
  return h;
}

struct TensorComplex::Impl {
  Echelon relations;
  std::unordered_map<Index, Index> position;  // survivor pair index -> quotient coordinate
};

Vec TensorComplex::project(const Vec& pairs) const {
  Vec r = impl->relations.reduce_full(pairs);
  VecBuilder out;
  for (const auto& [k, c] : r.terms()) {
    auto it = impl->position.find(k);
    if (it == impl->position.end()) throw ModuleError("tensor projection left a non-surviving pair");
    out.add(it->second, c);
  }
  return out.finish();
}

TensorComplex tensor_over_base(const CdgModule& n, const CdgModule& m) {
  if (n.side != Side::Right || m.side != Side::Left) throw ModuleError("tensor_over_base: need a right and a left module");
  if (n.base->dim() != m.base->dim()) throw ModuleError("tensor_over_base: modules over different categories");
  const auto& B = *n.base;
  const auto& G = n.grading();
  std::size_t nd = n.dim(), md = m.dim();
  if (static_cast<std::uint64_t>(nd) * md >= (std::uint64_t{1} << 32)) throw ModuleError("tensor_over_base: too large");
  auto pair = [&](const Vec& a, const Vec& b) {
    VecBuilder out;
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) out.add(static_cast<Index>(i * md + j), x * y);
    return out.finish();
  };
  TensorComplex t;
  t.n_dim = nd;
  t.m_dim = md;
  t.impl = std::make_shared<TensorComplex::Impl>();
  auto& rel = t.impl->relations;
  for (Index b = 0; b < B.dim(); ++b) {
    auto ni = n.component(B.basis[b].dst);
    auto mj = m.component(B.basis[b].src);
    for (Index i : ni) {
      if (n.action[b][i].empty() && mj.empty()) continue;
      for (Index j : mj) {
        Vec v = pair(n.action[b][i], Vec::unit(j));
        v.add_scaled(pair(Vec::unit(i), m.action[b][j]), -1);
        if (!v.empty()) rel.insert(std::move(v));
      }
    }
  }
  std::vector<Index> all;
  for (Index i = 0; i < nd; ++i)
    for (Index j : m.component(n.basis[i].object)) {
      Index k = static_cast<Index>(i * md + j);
      if (!rel.is_pivot(k)) all.push_back(k);
    }
  std::sort(all.begin(), all.end());
  t.survivors = all;
  for (Index s = 0; s < all.size(); ++s) t.impl->position[all[s]] = s;
  t.complex.grading = G;
  std::vector<Vec> cols;
  for (Index k : all) {
    Index i = k / md, j = k % md;
    t.complex.degrees.push_back(G.add(n.basis[i].degree, m.basis[j].degree));
    Vec v = pair(n.diff[i], Vec::unit(j));
    v.add_scaled(pair(Vec::unit(i), m.diff[j]), G.koszul_sign(n.basis[i].degree, G.one()));
    cols.push_back(t.project(v));
  }
  t.complex.d = SparseMatrix::from_columns(all.size(), std::move(cols));
  return t;
}

CdgModule submodule(const CdgModule& m, const std::vector<Vec>& gens, std::vector<Vec>* inclusion) {
  Echelon ech(true);
  CdgModule s;
  s.side = m.side;
  s.base = m.base;
  for (Index k = 0; k < gens.size(); ++k) {
    const Vec& v = gens[k];
    if (v.empty()) throw ModuleError("submodule: zero generator");
    Index obj = m.basis[v.terms().front().first].object;
    Degree deg = m.basis[v.terms().front().first].degree;
    if (!m.homogeneous_in(v, obj, deg)) throw ModuleError("submodule: generator is not homogeneous");
    if (!ech.insert(v, k)) throw ModuleError("submodule: generators are dependent");
    s.basis.push_back({"s" + std::to_string(k), obj, m.grading().normalize(deg)});
  }
  s.reset_tables();
  auto coords = [&](const Vec& v) {
    Vec combo;
    if (!ech.reduce_full(v, &combo).empty()) throw ModuleError("submodule: subspace is not closed");
    return combo;
  };
  for (Index b = 0; b < m.base->dim(); ++b)
    for (Index k = 0; k < gens.size(); ++k) s.action[b][k] = coords(m.act(Vec::unit(b), gens[k]));
  for (Index k = 0; k < gens.size(); ++k) s.diff[k] = coords(m.d(gens[k]));
  if (inclusion) *inclusion = gens;
  return s;
}

CdgModule kernel_module(const ModuleMap& f, const CdgModule& src, const CdgModule& dst, std::vector<Vec>* inclusion) {
  const auto& G = src.grading();
  std::map<std::pair<Index, Degree>, std::vector<Index>> blocks;
  for (Index i = 0; i < src.dim(); ++i) blocks[{src.basis[i].object, G.normalize(src.basis[i].degree)}].push_back(i);
  std::vector<Vec> gens;
  for (const auto& [key, idx] : blocks) {
    std::vector<Vec> cols;
    for (Index i : idx) cols.push_back(f.images[i]);
    for (const auto& kv : kernel_basis(SparseMatrix::from_columns(dst.dim(), std::move(cols)))) {
      VecBuilder v;
      for (const auto& [u, c] : kv.terms()) v.add(idx[u], c);
      gens.push_back(v.finish());
    }
  }
  return submodule(src, gens, inclusion);
}

CdgCategory mf_category(const CategoryPtr& b, const std::vector<CdgModule>& objects, bool qdg,
                        const std::vector<std::string>& names) {
  const auto& G = b->grading;
  CdgCategory c;
  c.field = b->field;
  c.grading = G;
  std::size_t no = objects.size();
  for (std::size_t x = 0; x < no; ++x) {
    const auto& p = objects[x];
    if (p.side != Side::Right) throw ModuleError("mf_category: objects must be right modules");
    if (!p.summand) throw ModuleError("mf_category: object lacks a summand presentation");
    if (!validate_module(p, true).ok()) throw ModuleError("mf_category: object is not a QDG-module");
    if (!qdg && !is_cdg_module(p)) throw ModuleError("mf_category: object is not a CDG-module");
    c.objects.push_back(x < names.size() ? names[x] : "P" + std::to_string(x));
  }
  // homs[x][y]: maps P_x -> P_y
  std::vector<std::vector<HomComplex>> homs(no);
  std::vector<std::vector<Index>> offset(no, std::vector<Index>(no));
  for (Index x = 0; x < no; ++x)
    for (Index y = 0; y < no; ++y) {
      std::vector<ModuleMap> prefer;
      if (x == y) prefer.push_back(identity_map(objects[x].dim()));
      homs[x].push_back(hom_complex(objects[x], objects[y], prefer));
      offset[x][y] = static_cast<Index>(c.basis.size());
      const auto& hc = homs[x][y];
      for (std::size_t k = 0; k < hc.basis.size(); ++k) {
        std::string nm = x == y && k == 0 ? "1_" + c.objects[x] : c.objects[x] + "->" + c.objects[y] + "#" + std::to_string(k);
        c.basis.push_back({nm, x, y, hc.basis[k].degree});
      }
    }
  c.reset_tables();
  std::vector<std::pair<Index, Index>> where;  // basis -> (x, y)
  for (Index x = 0; x < no; ++x)
    for (Index y = 0; y < no; ++y)
      for (std::size_t k = 0; k < homs[x][y].basis.size(); ++k) where.emplace_back(x, y);
  auto embed = [&](const Vec& v, Index x, Index y) {
    std::vector<Vec::Term> t;
    for (const auto& [i, s] : v.terms()) t.emplace_back(i + offset[x][y], s);
    return Vec::from_sorted(std::move(t));
  };
  for (Index f = 0; f < c.dim(); ++f) {
    auto [y, z] = where[f];
    const ModuleMap& fm = homs[y][z].basis[f - offset[y][z]];
    for (Index g = 0; g < c.dim(); ++g) {
      auto [x, yy] = where[g];
      if (yy != y) continue;
      const ModuleMap& gm = homs[x][y].basis[g - offset[x][y]];
      c.compose[f][g] = embed(homs[x][z].coordinates(compose_maps(fm, gm, G)), x, z);
    }
    c.diff[f] = embed(homs[y][z].complex.d.col(f - offset[y][z]), y, z);
  }
  for (Index x = 0; x < no; ++x) {
    c.unit[x] = Vec::unit(offset[x][x]);
    ModuleMap h;
    h.degree = G.normalize(2);
    h.images = module_curvature(objects[x]);
    c.curvature[x] = embed(homs[x][x].coordinates(h), x, x);
  }
  return c;
}

}  // namespace cdg
