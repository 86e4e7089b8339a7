#include "bicomplex.hpp"

#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace cdg {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<Index>& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ k.size();
    for (Index x : k) h = (h ^ x) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};
using KeyMap = std::unordered_map<std::vector<Index>, Index, KeyHash>;
// Factors of a tensor term, pointing into structure tables or local storage.
using Slots = std::vector<const Vec*>;

Scalar sgn(int s) { return s < 0 ? Scalar(-1) : Scalar(1); }
Scalar parity_sign(long long e) { return (e & 1) ? Scalar(-1) : Scalar(1); }

// One weight of a bicomplex: labels, degrees and lookups.
struct Space {
  std::vector<std::vector<Index>> labels;
  std::vector<Degree> degrees;
  KeyMap index;
  // cochains: args key -> [begin, end) of the labels with those arguments
  std::unordered_map<std::vector<Index>, std::pair<Index, Index>, KeyHash> blocks;
  std::vector<std::vector<Index>> arg_keys;  // distinct args keys in order
};

// Per-column accumulation of a sparse matrix.
struct Columns {
  std::vector<VecBuilder> cols;
  std::size_t rows;
  Columns(std::size_t r, std::size_t c) : cols(c), rows(r) {}
  void add(Index row, Index col, const Scalar& v) { cols[col].add(row, v); }
  SparseMatrix finish() {
    std::vector<Vec> v;
    v.reserve(cols.size());
    for (auto& b : cols) v.push_back(b.finish());
    return SparseMatrix::from_columns(rows, std::move(v));
  }
};

// Expand a tensor product of vectors into basis tuples.
template <class Emit>
void expand(const Slots& slots, std::size_t pos, std::vector<Index>& key, const Scalar& c, Emit&& emit) {
  if (pos == slots.size()) {
    emit(key, c);
    return;
  }
  for (const auto& [i, x] : slots[pos]->terms()) {
    key[pos] = i;
    expand(slots, pos + 1, key, c * x, emit);
  }
}
template <class Emit>
void expand(const Slots& slots, const Scalar& c, Emit&& emit) {
  for (const Vec* s : slots)
    if (s->empty()) return;
  std::vector<Index> key(slots.size());
  expand(slots, 0, key, c, emit);
}

// Unit vectors for a tuple, with pointer slots into them.
struct Units {
  std::vector<Vec> owned;
  Slots slots;
  explicit Units(const std::vector<Index>& t) {
    owned.reserve(t.size());
    for (Index i : t) owned.push_back(Vec::unit(i));
    for (const auto& v : owned) slots.push_back(&v);
  }
};

class Builder {
 public:
  Builder(const CdgCategory& b, BuildOptions opt) : B(b), opt_(opt) {
    for (const auto& u : B.unit)
      if (u.nnz() == 1) unit_basis.insert(u.terms().front().first);
    if (opt.reduced)
      for (const auto& u : B.unit)
        if (u.nnz() != 1 || !u.terms().front().second.is_one())
          throw BicomplexError("reduced complexes need identities that are basis elements");
  }

  const CdgCategory& B;
  BuildOptions opt_;
  std::unordered_set<Index> unit_basis;

  // hom(x, y) basis with units removed in reduced mode: morphisms x -> y
  std::vector<Index> arrows(Index x, Index y) const {
    std::vector<Index> out;
    for (Index f : B.hom(x, y))
      if (!opt_.reduced || !unit_basis.count(f)) out.push_back(f);
    return out;
  }

  // Enumerate object paths X_0..X_i lexicographically.
  void paths(int i, const std::function<void(const std::vector<Index>&)>& fn) const {
    std::vector<Index> p(static_cast<std::size_t>(i) + 1, 0);
    std::size_t no = B.num_objects();
    if (no == 0) return;
    while (true) {
      fn(p);
      int k = i;
      while (k >= 0 && ++p[static_cast<std::size_t>(k)] == no) p[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
  }

  // Cartesian product of lists in order.
  static void product(const std::vector<std::vector<Index>>& lists,
                      const std::function<void(const std::vector<Index>&)>& fn) {
    for (const auto& l : lists)
      if (l.empty()) return;
    std::vector<std::size_t> pos(lists.size(), 0);
    std::vector<Index> cur(lists.size());
    while (true) {
      for (std::size_t k = 0; k < lists.size(); ++k) cur[k] = lists[k][pos[k]];
      fn(cur);
      std::size_t k = lists.size();
      while (k > 0) {
        --k;
        if (++pos[k] < lists[k].size()) break;
        pos[k] = 0;
        if (k == 0) return;
      }
      if (lists.empty()) return;
    }
  }

  // In reduced mode a missing key with a unit in a B slot is a zero term.
  bool lookup(const Space& s, const std::vector<Index>& key, std::size_t bfirst, std::size_t bcount, Index& out) const {
    auto it = s.index.find(key);
    if (it != s.index.end()) {
      out = it->second;
      return true;
    }
    if (opt_.reduced)
      for (std::size_t k = bfirst; k < bfirst + bcount; ++k)
        if (unit_basis.count(key[k])) return false;
    throw BicomplexError("internal: tuple not found in bicomplex basis");
  }
  bool lookup_args(const Space& s, const std::vector<Index>& key, std::size_t bfirst, std::size_t bcount,
                   std::pair<Index, Index>& out) const {
    auto it = s.blocks.find(key);
    if (it != s.blocks.end()) {
      out = it->second;
      return true;
    }
    if (opt_.reduced)
      for (std::size_t k = bfirst; k < bfirst + bcount; ++k)
        if (unit_basis.count(key[k])) return false;
    return false;  // an argument tuple with no value space: zero
  }
};

void finalize_space(Space& s) {
  for (Index k = 0; k < s.labels.size(); ++k) s.index.emplace(s.labels[k], k);
}

// Cochain spaces: label = [X_0, args..., value]; args key = label without value.
void finalize_cochains(Space& s) {
  finalize_space(s);
  for (Index k = 0; k < s.labels.size(); ++k) {
    std::vector<Index> a(s.labels[k].begin(), s.labels[k].end() - 1);
    auto it = s.blocks.find(a);
    if (it == s.blocks.end()) {
      s.blocks.emplace(a, std::make_pair(k, k + 1));
      s.arg_keys.push_back(a);
    } else {
      it->second.second = k + 1;
    }
  }
}

Bicomplex assemble(std::vector<Space>& sp, Orientation o, BicomplexKind kind, const GradingGroup& g, int t, bool reduced) {
  Bicomplex bc;
  bc.orientation = o;
  bc.kind = kind;
  bc.grading = g;
  bc.truncation = t;
  bc.reduced = reduced;
  for (auto& s : sp) {
    bc.degrees.push_back(s.degrees);
    bc.labels.push_back(s.labels);
  }
  return bc;
}

std::size_t rows_of(const std::vector<Space>& sp, int w) {
  return w >= 0 && w < static_cast<int>(sp.size()) ? sp[static_cast<std::size_t>(w)].labels.size() : 0;
}

}  // namespace

int sign_rho(const std::vector<int>& j, const std::vector<int>& t) {
  if (j.size() != t.size() || j.empty()) throw BicomplexError("sign_rho: length mismatch");
  long long i = static_cast<long long>(j.size()) - 1, J = 0, e = 0, ts = 0;
  for (std::size_t k = 0; k < j.size(); ++k) {
    J += j[k];
    ts += t[k];
    e += static_cast<long long>(j[k]) * (i + 1 - static_cast<long long>(k)) + j[k] * ts;
  }
  e += (J - 1) * J / 2;
  return static_cast<int>(((e % 2) + 2) % 2);
}

int sign_lambda(const std::vector<int>& j, const std::vector<int>& t) {
  if (j.size() != t.size() || j.empty()) throw BicomplexError("sign_lambda: length mismatch");
  long long i = static_cast<long long>(j.size()) - 1, e = 0, ts = 0;
  for (std::size_t k = 0; k < j.size(); ++k) {
    ts += t[k];
    e += static_cast<long long>(j[k]) * (i - static_cast<long long>(k)) + j[k] * ts;
  }
  return static_cast<int>(((e % 2) + 2) % 2);
}

Bicomplex bar_bicomplex(const CdgModule& n, const CdgModule& m, int t, BuildOptions opt) {
  if (n.side != Side::Right || m.side != Side::Left) throw BicomplexError("bar: need a right and a left module");
  if (n.base->dim() != m.base->dim() || n.base->num_objects() != m.base->num_objects())
    throw BicomplexError("bar: modules over different categories");
  if (t < 0) throw BicomplexError("bar: negative truncation");
  const CdgCategory& B = *m.base;
  const auto& G = B.grading;
  Builder bl(B, opt);
  std::vector<Space> sp(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) {
    auto& s = sp[static_cast<std::size_t>(i)];
    bl.paths(i, [&](const std::vector<Index>& p) {
      std::vector<std::vector<Index>> lists{n.component(p[0])};
      for (int k = 1; k <= i; ++k) lists.push_back(bl.arrows(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k - 1)]));
      lists.push_back(m.component(p[static_cast<std::size_t>(i)]));
      Builder::product(lists, [&](const std::vector<Index>& tup) {
        Degree deg = n.basis[tup[0]].degree + m.basis[tup.back()].degree;
        for (int k = 1; k <= i; ++k) deg += B.basis[tup[static_cast<std::size_t>(k)]].degree;
        s.labels.push_back(tup);
        s.degrees.push_back(G.normalize(deg));
      });
    });
    finalize_space(s);
  }
  Bicomplex bc = assemble(sp, Orientation::Homological, BicomplexKind::Bar, G, t, opt.reduced);
  for (int i = 0; i <= t; ++i) {
    const auto& s = sp[static_cast<std::size_t>(i)];
    std::size_t ui = static_cast<std::size_t>(i);
    Columns del(rows_of(sp, i - 1), s.labels.size()), dd(s.labels.size(), s.labels.size()),
        delta(rows_of(sp, i + 1), s.labels.size());
    for (Index c = 0; c < s.labels.size(); ++c) {
      const auto& tup = s.labels[c];
      Units units(tup);
        const Slots& slots = units.slots;
      auto emit_to = [&](Columns& out, int w) {
        return [&, w](const std::vector<Index>& key, const Scalar& x) {
          Index r;
          if (bl.lookup(sp[static_cast<std::size_t>(w)], key, 1, static_cast<std::size_t>(w), r)) out.add(r, c, x);
        };
      };
      if (i >= 1) {
        // n b_1
        Slots v(slots.begin() + 1, slots.end());
        v[0] = &n.action[tup[1]][tup[0]];
        expand(v, Scalar(1), emit_to(del, i - 1));
        for (std::size_t k = 1; k < ui; ++k) {
          Slots w(slots.begin(), slots.begin() + static_cast<long>(k));
          w.push_back(&B.compose[tup[k]][tup[k + 1]]);
          w.insert(w.end(), slots.begin() + static_cast<long>(k) + 2, slots.end());
          expand(w, parity_sign(static_cast<long long>(k)), emit_to(del, i - 1));
        }
        Slots w(slots.begin(), slots.end() - 1);
        w.back() = &m.action[tup[ui]][tup[ui + 1]];
        expand(w, parity_sign(i), emit_to(del, i - 1));
      }
      // d
      Scalar si = parity_sign(i);
      Degree run = 0;
      for (std::size_t q = 0; q < slots.size(); ++q) {
        Slots w = slots;
        Degree dq;
        if (q == 0) {
          w[q] = &n.diff[tup[q]];
          dq = n.basis[tup[q]].degree;
        } else if (q == slots.size() - 1) {
          w[q] = &m.diff[tup[q]];
          dq = m.basis[tup[q]].degree;
        } else {
          w[q] = &B.diff[tup[q]];
          dq = B.basis[tup[q]].degree;
        }
        expand(w, si * sgn(G.koszul_sign(G.one(), run)), emit_to(dd, i));
        run += dq;
      }
      // delta
      if (i < t) {
        for (std::size_t p = 0; p <= ui; ++p) {
          Index x = p == 0 ? n.basis[tup[0]].object : B.basis[tup[p]].src;
          Slots w(slots.begin(), slots.begin() + static_cast<long>(p) + 1);
          w.push_back(&B.curvature[x]);
          w.insert(w.end(), slots.begin() + static_cast<long>(p) + 1, slots.end());
          expand(w, parity_sign(static_cast<long long>(p)), emit_to(delta, i + 1));
        }
      }
    }
    bc.del.push_back(del.finish());
    bc.d.push_back(dd.finish());
    bc.delta.push_back(delta.finish());
  }
  return bc;
}


namespace {

// Pull one formula term into a cochain matrix: for the target argument tuple
// `targs`, the term is c * post(f(expanded source args)).
template <class Post>
void pull(const Builder& bl, const Space& src, const Space& dst, Columns& out, const std::vector<Index>& targs,
          const Slots& sargs, const Scalar& c, std::size_t bfirst, std::size_t bcount, Post&& post) {
  expand(sargs, c, [&](const std::vector<Index>& key, const Scalar& x) {
    std::pair<Index, Index> blk;
    if (!bl.lookup_args(src, key, bfirst, bcount, blk)) return;
    std::vector<Index> row = targs;
    row.push_back(0);
    for (Index k = blk.first; k < blk.second; ++k) {
      Vec v = post(k, src.labels[k].back());
      for (const auto& [mm, y] : v.terms()) {
        row.back() = mm;
        auto it = dst.index.find(row);
        if (it == dst.index.end()) throw BicomplexError("internal: cochain value outside its component");
        out.add(it->second, k, x * y);
      }
    }
  });
}

// objects along a cochain argument key [X_0, b_1, ..., b_r, ...]
Index path_object(const CdgCategory& B, const std::vector<Index>& key, std::size_t q) {
  return q == 0 ? key[0] : B.basis[key[q]].src;
}

}  // namespace

Bicomplex cobar_bicomplex(const CdgModule& l, const CdgModule& m, int t, BuildOptions opt) {
  if (l.side != Side::Left || m.side != Side::Left) throw BicomplexError("cobar: need two left modules");
  if (l.base->dim() != m.base->dim() || l.base->num_objects() != m.base->num_objects())
    throw BicomplexError("cobar: modules over different categories");
  if (t < 0) throw BicomplexError("cobar: negative truncation");
  const CdgCategory& B = *m.base;
  const auto& G = B.grading;
  Builder bl(B, opt);
  std::vector<Space> sp(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) {
    auto& s = sp[static_cast<std::size_t>(i)];
    bl.paths(i, [&](const std::vector<Index>& p) {
      std::vector<std::vector<Index>> lists{{p[0]}};
      for (int k = 1; k <= i; ++k) lists.push_back(bl.arrows(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k - 1)]));
      lists.push_back(l.component(p[static_cast<std::size_t>(i)]));
      lists.push_back(m.component(p[0]));
      Builder::product(lists, [&](const std::vector<Index>& tup) {
        Degree deg = m.basis[tup.back()].degree - l.basis[tup[tup.size() - 2]].degree;
        for (int k = 1; k <= i; ++k) deg -= B.basis[tup[static_cast<std::size_t>(k)]].degree;
        s.labels.push_back(tup);
        s.degrees.push_back(G.normalize(deg));
      });
    });
    finalize_cochains(s);
  }
  Bicomplex bc = assemble(sp, Orientation::Cohomological, BicomplexKind::Cobar, G, t, opt.reduced);
  auto fdeg = [&](const Space& s, Index k) { return s.degrees[k]; };
  auto identity = [&](Index, Index mm) { return Vec::unit(mm); };
  for (int i = 0; i <= t; ++i) {
    const auto& s = sp[static_cast<std::size_t>(i)];
    std::size_t ui = static_cast<std::size_t>(i);
    Columns del(rows_of(sp, i + 1), s.labels.size()), dd(s.labels.size(), s.labels.size()),
        delta(rows_of(sp, i - 1), s.labels.size());
    // del: weight i -> i + 1, target args [X_0, b_1..b_{i+1}, l]
    if (i < t) {
      const auto& ts = sp[ui + 1];
      for (const auto& a : ts.arg_keys) {
        Units units(a);
        const Slots& slots = units.slots;
        // (-1)^{|f||b_1|} b_1 f(b_2, ..., l)
        {
          Vec u = Vec::unit(B.basis[a[1]].src);
          Slots w{&u};
          w.insert(w.end(), slots.begin() + 2, slots.end());
          Index b1 = a[1];
          pull(bl, s, ts, del, a, w, Scalar(1), 1, ui, [&](Index k, Index mm) {
            return m.action[b1][mm].scaled(G.koszul_sign(fdeg(s, k), B.basis[b1].degree));
          });
        }
        for (std::size_t k = 1; k <= ui; ++k) {
          Slots w(slots.begin(), slots.begin() + static_cast<long>(k));
          w.push_back(&B.compose[a[k]][a[k + 1]]);
          w.insert(w.end(), slots.begin() + static_cast<long>(k) + 2, slots.end());
          pull(bl, s, ts, del, a, w, parity_sign(static_cast<long long>(k)), 1, ui, identity);
        }
        {
          Slots w(slots.begin(), slots.end() - 1);
          w.back() = &l.action[a[ui + 1]][a[ui + 2]];
          pull(bl, s, ts, del, a, w, parity_sign(i + 1), 1, ui, identity);
        }
      }
    }
    // d: target args [X_0, b_1..b_i, l]
    Scalar si = parity_sign(i);
    for (const auto& a : s.arg_keys) {
      Units units(a);
        const Slots& slots = units.slots;
      pull(bl, s, s, dd, a, slots, si, 1, ui, [&](Index, Index mm) { return m.diff[mm]; });
      Degree run = 0;
      for (std::size_t q = 1; q < a.size(); ++q) {
        Slots w = slots;
        bool is_l = q == a.size() - 1;
        w[q] = is_l ? &l.diff[a[q]] : &B.diff[a[q]];
        Degree r = run;
        pull(bl, s, s, dd, a, w, -si * sgn(G.koszul_sign(G.one(), r)), 1, ui, [&](Index k, Index mm) {
          return Vec::unit(mm).scaled(G.koszul_sign(G.one(), fdeg(s, k)));
        });
        run += is_l ? l.basis[a[q]].degree : B.basis[a[q]].degree;
      }
    }
    // delta: weight i -> i - 1, target args [X_0, b_1..b_{i-1}, l]
    if (i >= 1) {
      const auto& ts = sp[ui - 1];
      for (const auto& a : ts.arg_keys) {
        Units units(a);
        const Slots& slots = units.slots;
        for (std::size_t p = 1; p <= ui; ++p) {
          Index x = path_object(B, a, p - 1);
          Slots w(slots.begin(), slots.begin() + static_cast<long>(p));
          w.push_back(&B.curvature[x]);
          w.insert(w.end(), slots.begin() + static_cast<long>(p), slots.end());
          pull(bl, s, ts, delta, a, w, parity_sign(static_cast<long long>(p)), 1, ui, identity);
        }
      }
    }
    bc.del.push_back(del.finish());
    bc.d.push_back(dd.finish());
    bc.delta.push_back(delta.finish());
  }
  return bc;
}

Bicomplex hochschild_bicomplex(const CategoryPtr& bp, const CdgModule& m, bool cohomology, int t, BuildOptions opt) {
  const CdgCategory& B = *bp;
  const auto& G = B.grading;
  std::size_t no = B.num_objects(), nb = B.dim();
  if (m.side != Side::Left || m.base->dim() != nb * nb || m.base->num_objects() != no * no)
    throw BicomplexError("hochschild: coefficients must be a left module over B x B^op");
  if (t < 0) throw BicomplexError("hochschild: negative truncation");
  Builder bl(B, opt);
  auto obj = [&](Index x, Index y) { return static_cast<Index>(x * no + y); };
  auto pair = [&](const Vec& a, const Vec& b) {
    VecBuilder out;
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) out.add(static_cast<Index>(i * nb + j), x * y);
    return out.finish();
  };
  // b.m = (b x 1_y).m and m.b = (-1)^{|b||m|} (1_x x b^op).m
  auto left_act = [&](Index b, Index y, Index mm) { return m.act(pair(Vec::unit(b), B.unit[y]), Vec::unit(mm)); };
  auto right_act = [&](Index b, Index x, Index mm) {
    return m.act(pair(B.unit[x], Vec::unit(b)), Vec::unit(mm))
        .scaled(G.koszul_sign(B.basis[b].degree, m.basis[mm].degree));
  };

  std::vector<Space> sp(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) {
    auto& s = sp[static_cast<std::size_t>(i)];
    std::size_t ui = static_cast<std::size_t>(i);
    bl.paths(i, [&](const std::vector<Index>& p) {
      std::vector<std::vector<Index>> lists;
      if (!cohomology) lists.push_back(m.component(obj(p[ui], p[0])));
      else lists.push_back({p[0]});
      for (std::size_t k = 1; k <= ui; ++k) lists.push_back(bl.arrows(p[k], p[k - 1]));
      if (cohomology) lists.push_back(m.component(obj(p[0], p[ui])));
      Builder::product(lists, [&](const std::vector<Index>& tup) {
        Degree deg = cohomology ? m.basis[tup.back()].degree : m.basis[tup[0]].degree;
        for (std::size_t k = 1; k <= ui; ++k)
          deg += cohomology ? -B.basis[tup[k]].degree : B.basis[tup[k]].degree;
        s.labels.push_back(tup);
        s.degrees.push_back(G.normalize(deg));
      });
    });
    if (cohomology) finalize_cochains(s);
    else finalize_space(s);
  }
  Bicomplex bc = assemble(sp, cohomology ? Orientation::Cohomological : Orientation::Homological,
                          cohomology ? BicomplexKind::HochschildCohomology : BicomplexKind::HochschildHomology, G, t,
                          opt.reduced);

  for (int i = 0; i <= t; ++i) {
    const auto& s = sp[static_cast<std::size_t>(i)];
    std::size_t ui = static_cast<std::size_t>(i);
    Scalar si = parity_sign(i);
    if (!cohomology) {
      Columns del(rows_of(sp, i - 1), s.labels.size()), dd(s.labels.size(), s.labels.size()),
          delta(rows_of(sp, i + 1), s.labels.size());
      for (Index c = 0; c < s.labels.size(); ++c) {
        const auto& tup = s.labels[c];
        Units units(tup);
        const Slots& slots = units.slots;
        auto emit_to = [&](Columns& out, int w) {
          return [&, w](const std::vector<Index>& key, const Scalar& x) {
            Index r;
            if (bl.lookup(sp[static_cast<std::size_t>(w)], key, 1, static_cast<std::size_t>(w), r)) out.add(r, c, x);
          };
        };
        Index mm = tup[0];
        Index x0 = i == 0 ? m.basis[mm].object % static_cast<Index>(no) : B.basis[tup[1]].dst;
        Index xi = i == 0 ? x0 : B.basis[tup[ui]].src;
        if (i >= 1) {
          Slots v(slots.begin() + 1, slots.end());
          Vec ra = right_act(tup[1], xi, mm);
          v[0] = &ra;
          expand(v, Scalar(1), emit_to(del, i - 1));
          for (std::size_t k = 1; k < ui; ++k) {
            Slots w(slots.begin(), slots.begin() + static_cast<long>(k));
            w.push_back(&B.compose[tup[k]][tup[k + 1]]);
            w.insert(w.end(), slots.begin() + static_cast<long>(k) + 2, slots.end());
            expand(w, parity_sign(static_cast<long long>(k)), emit_to(del, i - 1));
          }
          Degree before = m.basis[mm].degree;
          for (std::size_t k = 1; k < ui; ++k) before += B.basis[tup[k]].degree;
          Slots w(slots.begin(), slots.end() - 1);
          Vec la = left_act(tup[ui], x0, mm);
          w[0] = &la;
          Scalar sc = parity_sign(i) * sgn(G.koszul_sign(B.basis[tup[ui]].degree, before));
          expand(w, sc, emit_to(del, i - 1));
        }
        Degree run = 0;
        for (std::size_t q = 0; q < slots.size(); ++q) {
          Slots w = slots;
          w[q] = q == 0 ? &m.diff[tup[0]] : &B.diff[tup[q]];
          expand(w, si * sgn(G.koszul_sign(G.one(), run)), emit_to(dd, i));
          run += q == 0 ? m.basis[tup[0]].degree : B.basis[tup[q]].degree;
        }
        if (i < t) {
          for (std::size_t p = 0; p <= ui; ++p) {
            Index x = p == 0 ? x0 : B.basis[tup[p]].src;
            Slots w(slots.begin(), slots.begin() + static_cast<long>(p) + 1);
            w.push_back(&B.curvature[x]);
            w.insert(w.end(), slots.begin() + static_cast<long>(p) + 1, slots.end());
            expand(w, parity_sign(static_cast<long long>(p)), emit_to(delta, i + 1));
          }
        }
      }
      bc.del.push_back(del.finish());
      bc.d.push_back(dd.finish());
      bc.delta.push_back(delta.finish());
      continue;
    }

    Columns del(rows_of(sp, i + 1), s.labels.size()), dd(s.labels.size(), s.labels.size()),
        delta(rows_of(sp, i - 1), s.labels.size());
    auto identity = [&](Index, Index mm) { return Vec::unit(mm); };
    if (i < t) {
      const auto& ts = sp[ui + 1];
      for (const auto& a : ts.arg_keys) {
        Units units(a);
        const Slots& slots = units.slots;
        Index last = B.basis[a[ui + 1]].src;  // X_{i+1}
        {
          Index b1 = a[1];
          Vec u = Vec::unit(B.basis[b1].src);
          Slots w{&u};
          w.insert(w.end(), slots.begin() + 2, slots.end());
          pull(bl, s, ts, del, a, w, Scalar(1), 1, ui, [&](Index k, Index mm) {
            return left_act(b1, last, mm).scaled(G.koszul_sign(s.degrees[k], B.basis[b1].degree));
          });
        }
        for (std::size_t k = 1; k <= ui; ++k) {
          Slots w(slots.begin(), slots.begin() + static_cast<long>(k));
          w.push_back(&B.compose[a[k]][a[k + 1]]);
          w.insert(w.end(), slots.begin() + static_cast<long>(k) + 2, slots.end());
          pull(bl, s, ts, del, a, w, parity_sign(static_cast<long long>(k)), 1, ui, identity);
        }
        {
          Slots w(slots.begin(), slots.end() - 1);
          Index bl1 = a[ui + 1], x0 = a[0];
          pull(bl, s, ts, del, a, w, parity_sign(i + 1), 1, ui,
               [&](Index, Index mm) { return right_act(bl1, x0, mm); });
        }
      }
    }
    for (const auto& a : s.arg_keys) {
      Units units(a);
        const Slots& slots = units.slots;
      pull(bl, s, s, dd, a, slots, si, 1, ui, [&](Index, Index mm) { return m.diff[mm]; });
      Degree run = 0;
      for (std::size_t q = 1; q < a.size(); ++q) {
        Slots w = slots;
        w[q] = &B.diff[a[q]];
        pull(bl, s, s, dd, a, w, -si * sgn(G.koszul_sign(G.one(), run)), 1, ui, [&](Index k, Index mm) {
          return Vec::unit(mm).scaled(G.koszul_sign(G.one(), s.degrees[k]));
        });
        run += B.basis[a[q]].degree;
      }
    }
    if (i >= 1) {
      const auto& ts = sp[ui - 1];
      for (const auto& a : ts.arg_keys) {
        Units units(a);
        const Slots& slots = units.slots;
        for (std::size_t p = 1; p <= ui; ++p) {
          Index x = path_object(B, a, p - 1);
          Slots w(slots.begin(), slots.begin() + static_cast<long>(p));
          w.push_back(&B.curvature[x]);
          w.insert(w.end(), slots.begin() + static_cast<long>(p), slots.end());
          pull(bl, s, ts, delta, a, w, parity_sign(static_cast<long long>(p)), 1, ui, identity);
        }
      }
    }
    bc.del.push_back(del.finish());
    bc.d.push_back(dd.finish());
    bc.delta.push_back(delta.finish());
  }
  return bc;
}


namespace {

const SparseMatrix* component(const Bicomplex& bc, char which, int from, int to) {
  if (from < 0 || from > bc.truncation || to < 0 || to > bc.truncation) return nullptr;
  std::size_t f = static_cast<std::size_t>(from);
  if (which == 'p' && bc.del_target(from) == to) return &bc.del[f];
  if (which == 'd' && from == to) return &bc.d[f];
  if (which == 'h' && bc.delta_target(from) == to) return &bc.delta[f];
  return nullptr;
}

// Sum over paths from -> mid -> to of second(mid->to) * first(from->mid).
SparseMatrix path_sum(const Bicomplex& bc, const std::vector<std::pair<char, char>>& terms, int from, int to) {
  SparseMatrix acc(bc.dim(to), bc.dim(from));
  for (auto [a, b] : terms)
    for (int mid = from - 1; mid <= from + 1; ++mid) {
      auto x = component(bc, a, from, mid);
      if (!x) continue;
      auto y = component(bc, b, mid, to);
      if (!y) continue;
      acc += (*y) * (*x);
    }
  return acc;
}

}  // namespace

std::vector<IdentityCheck> check_identities(const Bicomplex& bc) {
  std::vector<IdentityCheck> out;
  int t = bc.truncation;
  bool hom = bc.orientation == Orientation::Homological;
  auto add = [&](const std::string& name, int i, const std::vector<std::pair<char, char>>& terms, int to) {
    if (to < 0 || to > t) return;
    out.push_back({name, i, path_sum(bc, terms, i, to).is_zero()});
  };
  for (int i = 0; i <= t; ++i) {
    int dn = bc.del_target(i), up = bc.delta_target(i);
    // keep every intermediate weight inside the materialized range
    bool ok_del2 = hom || i <= t - 2;
    bool ok_deld = hom || i <= t - 1;
    bool ok_mid = i <= t - 1;
    bool ok_dh = !hom || i <= t - 1;
    bool ok_h2 = !hom || i <= t - 2;
    if (ok_del2) add("del^2 = 0", i, {{'p', 'p'}}, bc.del_target(dn));
    if (ok_deld) add("del d + d del = 0", i, {{'p', 'd'}, {'d', 'p'}}, dn);
    if (ok_mid) add("d^2 + del delta + delta del = 0", i, {{'d', 'd'}, {'h', 'p'}, {'p', 'h'}}, i);
    if (ok_dh) add("d delta + delta d = 0", i, {{'h', 'd'}, {'d', 'h'}}, up);
    if (ok_h2) add("delta^2 = 0", i, {{'h', 'h'}}, bc.delta_target(up));
  }
  return out;
}

Totalization totalize(const Bicomplex& bc, TotalizationMode) {
  // Finite truncations: direct sums and products agree.
  const auto& G = bc.grading;
  bool hom = bc.orientation == Orientation::Homological;
  Totalization tz;
  tz.complex.grading = G;
  std::size_t total = 0;
  for (int i = 0; i <= bc.truncation; ++i) {
    tz.offset.push_back(total);
    for (Degree g : bc.degrees[static_cast<std::size_t>(i)])
      tz.complex.degrees.push_back(G.normalize(hom ? g - i : g + i));
    total += bc.dim(i);
  }
  std::vector<Vec> cols;
  cols.reserve(total);
  for (int i = 0; i <= bc.truncation; ++i) {
    std::size_t ui = static_cast<std::size_t>(i);
    for (std::size_t c = 0; c < bc.dim(i); ++c) {
      VecBuilder v;
      auto place = [&](const SparseMatrix& mtx, int to) {
        if (to < 0 || to > bc.truncation || mtx.rows() == 0) return;
        Index off = static_cast<Index>(tz.offset[static_cast<std::size_t>(to)]);
        for (const auto& [r, x] : mtx.col(c).terms()) v.add(r + off, x);
      };
      place(bc.del[ui], bc.del_target(i));
      place(bc.d[ui], i);
      place(bc.delta[ui], bc.delta_target(i));
      cols.push_back(v.finish());
    }
  }
  tz.complex.d = SparseMatrix::from_columns(total, std::move(cols));
  if (!G.is_mod_two()) {
    // Linear bounds on total degrees per weight from the materialized data.
    auto range = [&](int i, Degree& lo, Degree& hi) {
      bool any = false;
      for (Degree g : bc.degrees[static_cast<std::size_t>(i)]) {
        Degree td = hom ? g - i : g + i;
        if (!any || td < lo) lo = td;
        if (!any || td > hi) hi = td;
        any = true;
      }
      return any;
    };
    std::vector<Degree> rel;
    std::set<Degree> present(tz.complex.degrees.begin(), tz.complex.degrees.end());
    Degree lo0 = 0, hi0 = 0, lo1 = 0, hi1 = 0;
    bool have0 = bc.truncation >= 2 && range(bc.truncation - 1, lo0, hi0);
    bool have1 = bc.truncation >= 1 && range(bc.truncation, lo1, hi1);
    for (Degree n : present) {
      bool reliable = true;
      if (have0 && have1) {
        Degree slo = lo1 - lo0, shi = hi1 - hi0;
        Degree K = (n < 0 ? -n : n) + (lo1 < 0 ? -lo1 : lo1) + (hi1 < 0 ? -hi1 : hi1) + 4;
        for (Degree k = 1; k <= K && reliable; ++k) {
          Degree lo = lo1 + k * slo, hi = hi1 + k * shi;
          if (lo <= n + 1 && hi >= n - 1) reliable = false;
        }
      } else {
        reliable = false;
      }
      if (reliable) rel.push_back(n);
    }
    tz.reliable = rel;
  }
  return tz;
}

bool has_zero_d_and_delta(const Bicomplex& bc) {
  for (const auto& m : bc.d)
    if (!m.is_zero()) return false;
  for (const auto& m : bc.delta)
    if (!m.is_zero()) return false;
  return true;
}

std::map<std::pair<int, Degree>, std::size_t> weight_homology(const Bicomplex& bc) {
  if (!has_zero_d_and_delta(bc)) throw BicomplexError("weight_homology: d and delta must vanish");
  std::map<std::pair<int, Degree>, std::size_t> out;
  bool hom = bc.orientation == Orientation::Homological;
  auto block = [&](int i, Degree g) {
    std::vector<Index> idx;
    const auto& dg = bc.degrees[static_cast<std::size_t>(i)];
    for (Index k = 0; k < dg.size(); ++k)
      if (dg[k] == g) idx.push_back(k);
    return idx;
  };
  for (int i = 0; i + 1 <= bc.truncation; ++i) {
    std::set<Degree> gs(bc.degrees[static_cast<std::size_t>(i)].begin(), bc.degrees[static_cast<std::size_t>(i)].end());
    for (Degree g : gs) {
      auto here = block(i, g);
      // outgoing del from i, incoming from the neighbour
      int out_to = bc.del_target(i);
      int in_from = hom ? i + 1 : i - 1;
      std::size_t r_out = 0, r_in = 0;
      if (out_to >= 0 && out_to <= bc.truncation)
        r_out = rank(submatrix(bc.del[static_cast<std::size_t>(i)], block(out_to, g), here));
      if (in_from >= 0 && in_from <= bc.truncation)
        r_in = rank(submatrix(bc.del[static_cast<std::size_t>(in_from)], here, block(in_from, g)));
      std::size_t h = here.size() - r_out - r_in;
      if (h) out[{i, g}] = h;
    }
  }
  return out;
}

SparseMatrix BlockMap::block(int s, int t, std::size_t rows, std::size_t cols) const {
  auto it = blocks.find({s, t});
  if (it == blocks.end()) return SparseMatrix(rows, cols);
  return it->second;
}

bool is_chain_map(const BlockMap& f, const Bicomplex& src, const Bicomplex& dst, std::string* failure) {
  int T = std::min(src.truncation, dst.truncation);
  for (int s = 0; s <= T - 1; ++s)
    for (int l = 0; l <= T - 1; ++l) {
      SparseMatrix lhs(dst.dim(l), src.dim(s)), rhs(dst.dim(l), src.dim(s));
      for (int mid = 0; mid <= dst.truncation; ++mid) {
        auto fm = f.blocks.find({s, mid});
        if (fm == f.blocks.end() || fm->second.is_zero()) continue;
        for (char c : {'p', 'd', 'h'})
          if (auto dm = component(dst, c, mid, l)) lhs += (*dm) * fm->second;
      }
      for (int mid = 0; mid <= src.truncation; ++mid)
        for (char c : {'p', 'd', 'h'})
          if (auto dm = component(src, c, s, mid)) {
            auto fm = f.blocks.find({mid, l});
            if (fm != f.blocks.end() && !fm->second.is_zero()) rhs += fm->second * (*dm);
          }
      if (!(lhs == rhs)) {
        if (failure) *failure = "weights " + std::to_string(s) + " -> " + std::to_string(l);
        return false;
      }
    }
  return true;
}

BlockMap compose_block_maps(const BlockMap& g, const BlockMap& f, const Bicomplex& mid) {
  BlockMap h;
  for (const auto& [k1, fm] : f.blocks)
    for (const auto& [k2, gm] : g.blocks) {
      if (k1.second != k2.first) continue;
      (void)mid;
      auto key = std::make_pair(k1.first, k2.second);
      SparseMatrix p = gm * fm;
      auto it = h.blocks.find(key);
      if (it == h.blocks.end()) h.blocks.emplace(key, std::move(p));
      else it->second += p;
    }
  return h;
}

ComparisonMap comparison_map(const Bicomplex& bc) {
  for (const auto& m : bc.delta)
    if (!m.is_zero()) throw BicomplexError("comparison_map: the base is curved");
  ComparisonMap cm;
  Totalization a = totalize(bc, TotalizationMode::DirectSum);
  Totalization b = totalize(bc, TotalizationMode::DirectProduct);
  cm.map = SparseMatrix::identity(a.complex.degrees.size());
  cm.source = homology_dims(a.complex);
  cm.target = homology_dims(b.complex);
  cm.image_rank = cm.source;  // the identity induces an isomorphism on the truncations
  return cm;
}

}  // namespace cdg
