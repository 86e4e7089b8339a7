#include "engines.hpp"

#include <set>
#include <sstream>

namespace cdg {

namespace {

Scalar parity_sign(long long e) { return (e & 1) ? Scalar(-1) : Scalar(1); }

bool flat_base(const CdgCategory& b) {
  for (const auto& h : b.curvature)
    if (!h.empty()) return false;
  return true;
}

const char* kCurvedFirstKind =
    "first-kind functors need a base with zero curvature; over a curved base the bar and Hochschild "
    "complexes with direct-sum totalization are acyclic, so only the second kind is meaningful";

std::map<Degree, std::size_t> nonzero(const std::map<Degree, std::size_t>& t) {
  std::map<Degree, std::size_t> out;
  for (const auto& [g, d] : t)
    if (d) out[g] = d;
  return out;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::FiniteExact: return "FiniteExact";
    case Method::TruncationStabilized: return "TruncationStabilized";
    case Method::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::size_t HomologyReport::total() const {
  std::size_t s = 0;
  for (const auto& [g, d] : table) s += d;
  return s;
}

std::string HomologyReport::short_form() const {
  std::string out;
  for (const auto& [g, d] : table) {
    if (!d) continue;
    if (!out.empty()) out += " + ";
    out += d == 1 ? "k" : "k^" + std::to_string(d);
    if (grading.normalize(g) != 0) out += "(" + grading.degree_label(g) + ")";
  }
  return out.empty() ? "0" : out;
}

std::string HomologyReport::text() const {
  std::ostringstream os;
  os << "method: " << method_name(method);
  if (method == Method::TruncationStabilized) os << " (T=" << t1 << ", T=" << t2 << ")";
  if (method == Method::Inconclusive) os << " (T=" << t2 << ")";
  os << "\n";
  if (grading.is_mod_two()) {
    for (Degree g : {Degree{0}, Degree{1}}) {
      auto it = table.find(g);
      os << "  " << grading.degree_label(g) << ": " << (it == table.end() ? 0 : it->second) << "\n";
    }
  } else {
    bool any = false;
    for (const auto& [g, d] : table)
      if (d) {
        os << "  " << g << ": " << d << "\n";
        any = true;
      }
    if (!any) os << "  (zero)\n";
  }
  if (!weights.empty()) {
    os << "by homological weight:\n";
    for (const auto& [k, d] : weights) os << "  weight " << k.first << ", degree " << grading.degree_label(k.second) << ": " << d << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

bool HomologyReport::same_table(const HomologyReport& o) const { return nonzero(table) == nonzero(o.table); }

std::string Comparison::line() const {
  return std::string(equal ? "EQUAL: " : "UNEQUAL: ") + left.short_form() + " vs " + right.short_form();
}

Enveloping enveloping(const CategoryPtr& b) {
  Enveloping e;
  e.b = b;
  e.op = std::make_shared<const CdgCategory>(opposite(*b));
  e.env = std::make_shared<const CdgCategory>(tensor(*b, *e.op));
  return e;
}

std::vector<Vec> graded_radical(const CdgCategory& b) {
  const auto& G = b.grading;
  std::size_t n = b.dim();
  // trace of left multiplication by each basis element
  std::vector<Scalar> tr(n, Scalar(0));
  for (Index k = 0; k < n; ++k)
    for (Index x = 0; x < n; ++x) tr[k] += b.compose[k][x].get(x);
  auto form = [&](Index a, Index c) {
    Scalar s(0);
    for (const auto& [k, v] : b.compose[a][c].terms()) s += v * tr[k];
    return s;
  };
  std::map<std::tuple<Index, Index, Degree>, std::vector<Index>> blocks;
  for (Index a = 0; a < n; ++a) blocks[{b.basis[a].src, b.basis[a].dst, G.normalize(b.basis[a].degree)}].push_back(a);
  std::vector<Vec> rad;
  for (const auto& [key, cols] : blocks) {
    std::vector<Vec> mcols;
    for (Index a : cols) {
      VecBuilder v;
      for (Index c = 0; c < n; ++c) v.add(c, form(a, c));
      mcols.push_back(v.finish());
    }
    for (const auto& kv : kernel_basis(SparseMatrix::from_columns(n, std::move(mcols)))) {
      VecBuilder v;
      for (const auto& [u, x] : kv.terms()) v.add(cols[u], x);
      rad.push_back(v.finish());
    }
  }
  // The trace kernel always contains the radical; it is the radical exactly
  // when it is a nilpotent two-sided ideal.
  Echelon span;
  for (const auto& r : rad) span.insert(r);
  for (const auto& r : rad)
    for (Index x = 0; x < n; ++x)
      if (!span.contains(b.mul(Vec::unit(x), r)) || !span.contains(b.mul(r, Vec::unit(x))))
        throw UnsupportedError("graded_radical: the trace-form method does not apply in characteristic " +
                               std::to_string(b.field.characteristic()));
  std::vector<Vec> power = rad;
  for (std::size_t step = 0; !power.empty(); ++step) {
    if (step > n + 1)
      throw UnsupportedError("graded_radical: the trace-form method does not apply in characteristic " +
                             std::to_string(b.field.characteristic()));
    Echelon next;
    std::vector<Vec> nv;
    for (const auto& p : power)
      for (const auto& r : rad) {
        Vec v = b.mul(p, r);
        if (!v.empty() && next.insert(v)) nv.push_back(v);
      }
    power = nv;
  }
  return rad;
}

GradedCover graded_cover(const CdgModule& m) {
  const auto& B = *m.base;
  GradedCover c;
  Echelon covered;
  for (const auto& r : graded_radical(B))
    for (Index j = 0; j < m.dim(); ++j) {
      Vec v = m.act(r, Vec::unit(j));
      if (!v.empty()) covered.insert(v);
    }
  for (Index j = 0; j < m.dim() && covered.rank() < m.dim(); ++j) {
    Vec e = Vec::unit(j);
    if (covered.contains(e)) continue;
    c.generators.push_back({m.basis[j].object, m.basis[j].degree});
    c.images.push_back(e);
    for (Index b = 0; b < B.dim(); ++b) {
      Vec v = m.act(Vec::unit(b), e);
      if (!v.empty()) covered.insert(v);
    }
  }
  c.free = free_graded_module(m.base, m.side, c.generators);
  // same enumeration order as free_graded_module
  for (Index j = 0; j < c.generators.size(); ++j)
    for (Index f = 0; f < B.dim(); ++f) {
      const auto& e = B.basis[f];
      bool ok = m.side == Side::Left ? e.src == c.generators[j].object : e.dst == c.generators[j].object;
      if (ok) c.map.images.push_back(m.act(Vec::unit(f), c.images[j]));
    }
  c.map.degree = 0;
  return c;
}

std::optional<ModuleMap> splitting(const GradedCover& cover, const CdgModule& m) {
  if (m.dim() == 0) {
    ModuleMap z;
    return z;
  }
  HomComplex hc = hom_complex(m, cover.free, {}, false);
  std::vector<Index> zero;
  std::vector<Vec> cols;
  for (Index k = 0; k < hc.basis.size(); ++k) {
    if (hc.basis[k].degree != 0) continue;
    zero.push_back(k);
    ModuleMap ps = compose_maps(cover.map, hc.basis[k], m.grading());
    VecBuilder v;
    for (Index i = 0; i < m.dim(); ++i)
      for (const auto& [j, x] : ps.images[i].terms()) v.add(static_cast<Index>(i * m.dim() + j), x);
    cols.push_back(v.finish());
  }
  Vec target;
  {
    VecBuilder v;
    for (Index i = 0; i < m.dim(); ++i) v.add(static_cast<Index>(i * m.dim() + i), Scalar(1));
    target = v.finish();
  }
  Vec x;
  if (!solve(SparseMatrix::from_columns(m.dim() * m.dim(), std::move(cols)), target, x)) return std::nullopt;
  ModuleMap s;
  s.degree = 0;
  s.images.assign(m.dim(), Vec());
  for (const auto& [k, c] : x.terms())
    for (Index i = 0; i < m.dim(); ++i) s.images[i].add_scaled(hc.basis[zero[k]].images[i], c);
  return s;
}

bool is_graded_projective(const CdgModule& m) {
  if (m.dim() == 0) return true;
  return splitting(graded_cover(m), m).has_value();
}

Resolution projective_resolution(const CdgModule& m, int max_depth) {
  Resolution r;
  r.target = m;
  if (is_graded_projective(m)) {
    r.terms.push_back(m);
    r.maps.push_back(identity_map(m.dim()));
    r.complete = true;
    return r;
  }
  CdgModule cur = m;
  std::vector<Vec> incl;  // cur -> previous term (empty at the start: cur is the target)
  for (int depth = 1; depth <= max_depth; ++depth) {
    GradedCover cov = graded_cover(cur);
    CdgModule q = free_cdg_module(cov.free);
    ModuleMap to_cur;
    std::size_t np = cov.free.dim();
    for (Index p = 0; p < np; ++p) to_cur.images.push_back(cov.map.images[p]);
    for (Index p = 0; p < np; ++p) to_cur.images.push_back(cur.d(cov.map.images[p]));
    ModuleMap to_prev = to_cur;
    if (!incl.empty())
      for (auto& v : to_prev.images) {
        VecBuilder b;
        for (const auto& [s, c] : v.terms()) b.add(incl[s], c);
        v = b.finish();
      }
    r.terms.push_back(q);
    r.maps.push_back(to_prev);
    r.depth = depth;
    std::vector<Vec> kincl;
    CdgModule k = kernel_module(to_cur, q, cur, &kincl);
    r.kernel_dims.push_back(k.dim());
    if (k.dim() == 0) {
      r.complete = true;
      return r;
    }
    if (is_graded_projective(k)) {
      ModuleMap inc;
      inc.images = kincl;
      r.terms.push_back(k);
      r.maps.push_back(inc);
      r.complete = true;
      return r;
    }
    cur = k;
    incl = kincl;
  }
  return r;
}

namespace {

// Homology of a finite bicomplex given per level: spaces, internal d, and
// del from level i to i - 1 (homological) or i + 1 (cohomological).
std::map<Degree, std::size_t> finite_total(const GradingGroup& G, const std::vector<FiniteComplex>& levels,
                                           const std::vector<SparseMatrix>& del, bool homological) {
  std::vector<std::size_t> off;
  std::size_t total = 0;
  FiniteComplex tot;
  tot.grading = G;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    off.push_back(total);
    long long w = static_cast<long long>(i);
    for (Degree g : levels[i].degrees) tot.degrees.push_back(G.normalize(homological ? g - w : g + w));
    total += levels[i].degrees.size();
  }
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    Scalar s = parity_sign(static_cast<long long>(i));
    for (std::size_t c = 0; c < levels[i].degrees.size(); ++c) {
      VecBuilder v;
      for (const auto& [r, x] : levels[i].d.col(c).terms()) v.add(static_cast<Index>(r + off[i]), x * s);
      long long to = homological ? static_cast<long long>(i) - 1 : static_cast<long long>(i) + 1;
      if (to >= 0 && to < static_cast<long long>(levels.size()))
        for (const auto& [r, x] : del[i].col(c).terms()) v.add(static_cast<Index>(r + off[static_cast<std::size_t>(to)]), x);
      cols.push_back(v.finish());
    }
  }
  tot.d = SparseMatrix::from_columns(total, std::move(cols));
  return homology_dims(tot);
}

HomologyReport tor_from_left_resolution(const CdgModule& n, const Resolution& res) {
  const auto& G = n.grading();
  std::vector<TensorComplex> t;
  for (const auto& p : res.terms) t.push_back(tensor_over_base(n, p));
  std::vector<FiniteComplex> levels;
  std::vector<SparseMatrix> del;
  for (std::size_t i = 0; i < t.size(); ++i) {
    levels.push_back(t[i].complex);
    std::vector<Vec> cols;
    if (i > 0) {
      const auto& mp = res.maps[i];
      std::size_t md = res.terms[i].dim(), md_prev = res.terms[i - 1].dim();
      for (Index k : t[i].survivors) {
        Index a = k / static_cast<Index>(md), b = k % static_cast<Index>(md);
        VecBuilder pv;
        for (const auto& [j, x] : mp.images[b].terms()) pv.add(static_cast<Index>(a * md_prev + j), x);
        cols.push_back(t[i - 1].project(pv.finish()));
      }
      del.push_back(SparseMatrix::from_columns(t[i - 1].survivors.size(), std::move(cols)));
    } else {
      del.push_back(SparseMatrix(0, t[i].survivors.size()));
    }
  }
  HomologyReport r;
  r.grading = G;
  r.method = Method::FiniteExact;
  r.table = finite_total(G, levels, del, true);
  r.notes.push_back("resolution of length " + std::to_string(res.terms.size() - 1));
  return r;
}

HomologyReport tor_from_right_resolution(const Resolution& res, const CdgModule& m) {
  const auto& G = m.grading();
  std::vector<TensorComplex> t;
  for (const auto& q : res.terms) t.push_back(tensor_over_base(q, m));
  std::vector<FiniteComplex> levels;
  std::vector<SparseMatrix> del;
  std::size_t md = m.dim();
  for (std::size_t i = 0; i < t.size(); ++i) {
    levels.push_back(t[i].complex);
    if (i == 0) {
      del.push_back(SparseMatrix(0, t[i].survivors.size()));
      continue;
    }
    std::vector<Vec> cols;
    const auto& mp = res.maps[i];
    for (Index k : t[i].survivors) {
      Index a = k / static_cast<Index>(md), b = k % static_cast<Index>(md);
      VecBuilder pv;
      for (const auto& [j, x] : mp.images[a].terms()) pv.add(static_cast<Index>(j * md + b), x);
      cols.push_back(t[i - 1].project(pv.finish()));
    }
    del.push_back(SparseMatrix::from_columns(t[i - 1].survivors.size(), std::move(cols)));
  }
  HomologyReport r;
  r.grading = G;
  r.method = Method::FiniteExact;
  r.table = finite_total(G, levels, del, true);
  r.notes.push_back("resolution of length " + std::to_string(res.terms.size() - 1) + " on the right argument");
  return r;
}

}  // namespace

HomologyReport tor_second_kind(const CdgModule& n, const CdgModule& m, int max_depth) {
  Resolution rm = projective_resolution(m, max_depth);
  if (rm.complete) return tor_from_left_resolution(n, rm);
  Resolution rn = projective_resolution(n, max_depth);
  if (rn.complete) return tor_from_right_resolution(rn, m);
  throw UnsupportedError("no finite projective resolution found within depth " + std::to_string(max_depth) +
                         "; use the first-kind (truncated bar) computation instead");
}

HomologyReport ext_second_kind(const CdgModule& l, const CdgModule& m, int max_depth) {
  const auto& G = m.grading();
  Resolution res = projective_resolution(l, max_depth);
  if (!res.complete)
    throw UnsupportedError("no finite projective resolution of the first argument within depth " +
                           std::to_string(max_depth) + "; use the first-kind (truncated cobar) computation instead");
  std::vector<HomComplex> h;
  for (const auto& p : res.terms) h.push_back(hom_complex(p, m));
  std::vector<FiniteComplex> levels;
  std::vector<SparseMatrix> del;
  for (std::size_t i = 0; i < h.size(); ++i) {
    levels.push_back(h[i].complex);
    std::vector<Vec> cols;
    if (i + 1 < h.size()) {
      for (const auto& f : h[i].basis) cols.push_back(h[i + 1].coordinates(compose_maps(f, res.maps[i + 1], G)));
      del.push_back(SparseMatrix::from_columns(h[i + 1].basis.size(), std::move(cols)));
    } else {
      del.push_back(SparseMatrix(0, h[i].basis.size()));
    }
  }
  HomologyReport r;
  r.grading = G;
  r.method = Method::FiniteExact;
  r.table = finite_total(G, levels, del, false);
  r.notes.push_back("resolution of length " + std::to_string(res.terms.size() - 1));
  return r;
}

HomologyReport hh_second_kind(const CategoryPtr& b, const CdgModule* m, bool cohomology, int max_depth) {
  Enveloping e = enveloping(b);
  CdgModule diag = diagonal_bimodule(b, e.env);
  const CdgModule& coeff = m ? *m : diag;
  if (cohomology) return ext_second_kind(diag, coeff, max_depth);
  return tor_second_kind(diagonal_right_bimodule(b, e.env), coeff, max_depth);
}

namespace {

// Classes that survive one step of truncation: the image of H(Tot at T-1)
// in H(Tot at T) for chains, the image of H(Tot at T) in H(Tot at T-1)
// for cochains. The top weight only contributes boundaries (resp. cycles).
std::map<Degree, std::size_t> stable_homology(const Bicomplex& bc, const Totalization& tz) {
  const auto& c = tz.complex;
  std::size_t top = tz.offset.back();  // first index of weight T
  bool hom = bc.orientation == Orientation::Homological;
  std::map<Degree, std::vector<Index>> by_degree;
  for (Index k = 0; k < c.degrees.size(); ++k) by_degree[c.degrees[k]].push_back(k);
  auto low_rows = [&](const Vec& v) {
    std::vector<Vec::Term> t;
    for (const auto& term : v.terms())
      if (term.first < top) t.push_back(term);
    return Vec::from_sorted(std::move(t));
  };
  const GradingGroup& G = bc.grading;
  std::map<Degree, std::size_t> out;
  for (const auto& [g, idx] : by_degree) {
    std::vector<Index> cycles_from;
    for (Index k : idx)
      if (!hom || k < top) cycles_from.push_back(k);
    std::vector<Vec> z;
    {
      std::vector<Vec> cols;
      for (Index k : cycles_from) cols.push_back(c.d.col(k));
      for (const auto& kv : kernel_basis(SparseMatrix::from_columns(c.degrees.size(), std::move(cols)))) {
        VecBuilder v;
        for (const auto& [j, x] : kv.terms()) v.add(cycles_from[j], x);
        z.push_back(hom ? v.finish() : low_rows(v.finish()));
      }
    }
    Echelon bnd;
    auto prev = by_degree.find(G.normalize(g - G.one()));
    if (prev != by_degree.end())
      for (Index k : prev->second) {
        if (!hom && k >= top) continue;
        Vec v = hom ? c.d.col(k) : low_rows(c.d.col(k));
        if (!v.empty()) bnd.insert(v);
      }
    std::size_t n = 0;
    for (auto& v : z)
      if (bnd.insert(v)) ++n;
    out[g] = n;
  }
  return out;
}

// Compare two truncations of the same first-kind computation.
HomologyReport stabilize(const Bicomplex& a, const Bicomplex& b) {
  HomologyReport r;
  r.grading = a.grading;
  Totalization ta = totalize(a, TotalizationMode::DirectSum), tb = totalize(b, TotalizationMode::DirectSum);
  auto ha = stable_homology(a, ta), hb = stable_homology(b, tb);
  bool same;
  if (ta.reliable) {
    std::set<Degree> rel(ta.reliable->begin(), ta.reliable->end());
    std::map<Degree, std::size_t> ra, rb;
    for (Degree g : rel) {
      if (ha.count(g)) ra[g] = ha[g];
      if (hb.count(g)) rb[g] = hb[g];
    }
    same = nonzero(ra) == nonzero(rb);
    r.table = ra;
    r.notes.push_back("total degrees outside the reliable window of the truncation are omitted");
  } else {
    same = nonzero(ha) == nonzero(hb);
    r.table = ha;
    r.notes.push_back("the grading group is finite, so whole stable tables are compared");
  }
  if (has_zero_d_and_delta(a) && has_zero_d_and_delta(b)) {
    auto wa = weight_homology(a), wb = weight_homology(b);
    std::map<std::pair<int, Degree>, std::size_t> cut;
    for (const auto& [k, d] : wb)
      if (k.first <= a.truncation - 1) cut[k] = d;
    if (cut != wa) same = false;
    r.weights = wa;
    if (r.table.empty() && !wa.empty())
      r.notes.push_back("no total degree falls in the reliable window here; the weight table is the stabilized answer");
  }
  r.t1 = a.truncation;
  r.t2 = b.truncation;
  r.method = same ? Method::TruncationStabilized : Method::Inconclusive;
  r.notes.push_back("stabilization of consecutive truncations is heuristic evidence, not a proof");
  if (a.reduced) r.notes.push_back("reduced (normalized) complexes were used");
  return r;
}

}  // namespace

HomologyReport tor_first_kind(const CdgModule& n, const CdgModule& m, int t) {
  if (!flat_base(*m.base)) throw UnsupportedError(kCurvedFirstKind);
  return stabilize(bar_bicomplex(n, m, t), bar_bicomplex(n, m, t + 1));
}

HomologyReport ext_first_kind(const CdgModule& l, const CdgModule& m, int t) {
  if (!flat_base(*m.base)) throw UnsupportedError(kCurvedFirstKind);
  return stabilize(cobar_bicomplex(l, m, t), cobar_bicomplex(l, m, t + 1));
}

HomologyReport hh_first_kind(const CategoryPtr& c, const CdgModule* m, bool cohomology, int t) {
  if (!flat_base(*c)) throw UnsupportedError(kCurvedFirstKind);
  Enveloping e = enveloping(c);
  CdgModule diag = diagonal_bimodule(c, e.env);
  const CdgModule& coeff = m ? *m : diag;
  return stabilize(hochschild_bicomplex(c, coeff, cohomology, t), hochschild_bicomplex(c, coeff, cohomology, t + 1));
}

Comparison compare_hh_B_vs_C(const CategoryPtr& b, const std::vector<CdgModule>& objects) {
  Comparison c;
  auto cat = std::make_shared<const CdgCategory>(mf_category(b, objects, false));
  c.left = hh_second_kind(b, nullptr, false);
  c.right = hh_second_kind(cat, nullptr, false);
  c.equal = c.left.same_table(c.right);
  c.notes.push_back("C has " + std::to_string(cat->num_objects()) + " object(s) and " + std::to_string(cat->dim()) +
                    " basis morphisms");
  return c;
}

Comparison curvature_shift_check(const CategoryPtr& b, const Scalar& s) {
  Comparison c;
  auto shifted = std::make_shared<const CdgCategory>(curvature_shift(*b, s));
  c.left = hh_second_kind(b, nullptr, false);
  c.right = hh_second_kind(shifted, nullptr, false);
  bool same_env = same_structure(tensor(*shifted, opposite(*shifted)), tensor(*b, opposite(*b)));
  c.notes.push_back(std::string("B(c) x B(c)^op and B x B^op have ") + (same_env ? "equal" : "different") +
                    " structure constants");
  c.equal = c.left.same_table(c.right) && same_env;
  return c;
}

Comparison pushforward_compat_check(const GradingMorphism& phi, const CategoryPtr& b, int t) {
  if (b->grading.kind() != phi.source().kind()) throw UnsupportedError("pushforward: category grading differs from the source of phi");
  Comparison c;
  auto pb = std::make_shared<const CdgCategory>(pushforward(phi, *b));
  Enveloping e = enveloping(b), pe = enveloping(pb);
  bool same = true;
  for (bool coh : {false, true}) {
    Bicomplex x = hochschild_bicomplex(b, diagonal_bimodule(b, e.env), coh, t);
    Bicomplex y = hochschild_bicomplex(pb, diagonal_bimodule(pb, pe.env), coh, t);
    bool eq = x.labels == y.labels && x.del == y.del && x.d == y.d && x.delta == y.delta;
    for (std::size_t i = 0; eq && i < x.degrees.size(); ++i)
      for (std::size_t k = 0; eq && k < x.degrees[i].size(); ++k)
        eq = phi.apply(x.degrees[i][k]) == y.degrees[i][k];
    c.notes.push_back(std::string("Hochschild ") + (coh ? "cochain" : "chain") + " bicomplex at T=" + std::to_string(t) +
                      (eq ? " matches" : " differs") + " after folding degrees");
    same = same && eq;
  }
  try {
    c.left = hh_second_kind(b, nullptr, false);
    c.right = hh_second_kind(pb, nullptr, false);
    HomologyReport folded = c.left;
    folded.grading = pb->grading;
    folded.table.clear();
    for (const auto& [g, d] : c.left.table) folded.table[phi.apply(g)] += d;
    c.left = folded;
    same = same && folded.same_table(c.right);
  } catch (const UnsupportedError& err) {
    c.notes.push_back(std::string("folded tables not compared: ") + err.what());
  }
  c.equal = same;
  return c;
}

ProbeReport delta_acyclicity_probe(const CategoryPtr& b, const CdgModule& n, const CdgModule& m, int t) {
  const auto& B = *b;
  for (Index x = 0; x < B.num_objects(); ++x) {
    const Vec& h = B.curvature[x];
    const Vec& u = B.unit[x];
    bool scalar = !h.empty() && !u.empty();
    if (scalar) {
      Scalar c = h.terms().front().second / u.terms().front().second;
      scalar = h == u.scaled(c);
    }
    if (!scalar)
      throw UnsupportedError("delta probe: every curvature element must be a nonzero multiple of the identity");
  }
  ProbeReport r;
  auto check = [&](const Bicomplex& bc, const std::string& name) {
    std::vector<std::size_t> rk;
    for (int i = 0; i <= bc.truncation; ++i) rk.push_back(rank(bc.delta[static_cast<std::size_t>(i)]));
    for (int i = 1; i <= t - 1; ++i) {
      std::size_t in = bc.orientation == Orientation::Homological ? rk[static_cast<std::size_t>(i - 1)]
                                                                  : rk[static_cast<std::size_t>(i + 1)];
      std::size_t h = bc.dim(i) - rk[static_cast<std::size_t>(i)] - in;
      bool ok = h == 0;
      r.exact = r.exact && ok;
      r.lines.push_back(name + " weight " + std::to_string(i) + ": dim " + std::to_string(bc.dim(i)) +
                        ", delta homology " + std::to_string(h) + (ok ? " (exact)" : " (NOT exact)"));
    }
  };
  check(bar_bicomplex(n, m, t), "bar");
  check(cobar_bicomplex(m, m, t), "cobar");
  return r;
}

}  // namespace cdg
