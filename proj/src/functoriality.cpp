#include <unordered_map>

#include "bicomplex.hpp"

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

KeyMap index_of(const std::vector<std::vector<Index>>& labels) {
  KeyMap m;
  for (Index k = 0; k < labels.size(); ++k) m.emplace(labels[k], k);
  return m;
}

// All (j_0, ..., j_r) with sum J.
void compositions(int parts, int total, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(parts, total - x, cur, fn);
    cur.pop_back();
  }
}

template <class Emit>
void expand(const std::vector<const Vec*>& slots, std::size_t pos, std::vector<Index>& key, const Scalar& c,
            Emit&& emit) {
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
void expand(const std::vector<const Vec*>& slots, const Scalar& c, Emit&& emit) {
  for (const Vec* s : slots)
    if (s->empty()) return;
  std::vector<Index> key(slots.size());
  expand(slots, 0, key, c, emit);
}

Scalar parity_sign(long long e) { return (e & 1) ? Scalar(-1) : Scalar(1); }

struct BlockBuilder {
  std::map<std::pair<int, int>, std::vector<VecBuilder>> cols;
  const Bicomplex &src, &dst;
  BlockBuilder(const Bicomplex& s, const Bicomplex& d) : src(s), dst(d) {}
  void add(int s, int t, Index row, Index col, const Scalar& x) {
    auto& v = cols[{s, t}];
    if (v.empty()) v.resize(src.dim(s));
    v[col].add(row, x);
  }
  BlockMap finish() {
    BlockMap bm;
    for (auto& [k, v] : cols) {
      std::vector<Vec> c;
      for (auto& b : v) c.push_back(b.finish());
      bm.blocks.emplace(k, SparseMatrix::from_columns(dst.dim(k.second), std::move(c)));
    }
    return bm;
  }
};

// The middle of a pushed-forward tuple: a^{j_0} F(b_1) a^{j_1} ... F(b_s) a^{j_s}.
// Appends the slots F(b_k) and the connection terms a_X between them.
void middle(const CdgFunctor& f, const std::vector<Index>& bs, const std::vector<Index>& objs,
            const std::vector<int>& j, std::vector<const Vec*>& out) {
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (k > 0) out.push_back(&f.mor_map[bs[k - 1]]);
    for (int r = 0; r < j[k]; ++r) out.push_back(&f.a[objs[k]]);
  }
}

void require_plain(const Bicomplex& a, const Bicomplex& b) {
  if (a.reduced || b.reduced) throw BicomplexError("functoriality maps are defined on non-reduced complexes");
}

// Inverse of restricted_origin per source object: original index -> restricted index.
std::vector<std::unordered_map<Index, Index>> restricted_inverse(std::size_t nobj,
                                                                 const std::function<std::vector<Index>(Index)>& comp) {
  std::vector<std::unordered_map<Index, Index>> inv(nobj);
  Index pos = 0;
  for (Index x = 0; x < nobj; ++x)
    for (Index i : comp(x)) inv[x][i] = pos++;
  return inv;
}

}  // namespace

std::vector<Index> restricted_origin(const CdgFunctor& f, const CdgModule& m) {
  std::vector<Index> out;
  for (Index x = 0; x < f.src->num_objects(); ++x)
    for (Index i : m.component(f.obj_map[x])) out.push_back(i);
  return out;
}

BlockMap pushforward_bar(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& n,
                         const CdgModule& m) {
  require_plain(src, dst);
  const CdgCategory& B = *f.src;
  auto on = restricted_origin(f, n), om = restricted_origin(f, m);
  // object of a restricted basis element
  std::vector<Index> n_obj, m_obj;
  for (Index x = 0; x < B.num_objects(); ++x) {
    for (std::size_t k = 0; k < n.component(f.obj_map[x]).size(); ++k) n_obj.push_back(x);
    for (std::size_t k = 0; k < m.component(f.obj_map[x]).size(); ++k) m_obj.push_back(x);
  }
  BlockBuilder out(src, dst);
  std::vector<KeyMap> idx;
  for (const auto& l : dst.labels) idx.push_back(index_of(l));
  for (int s = 0; s <= src.truncation; ++s) {
    const auto& labels = src.labels[static_cast<std::size_t>(s)];
    for (Index c = 0; c < labels.size(); ++c) {
      const auto& tup = labels[c];
      std::vector<Index> bs(tup.begin() + 1, tup.end() - 1);
      std::vector<Index> objs{n_obj[tup[0]]};
      for (Index b : bs) objs.push_back(B.basis[b].src);
      const Vec first = Vec::unit(on[tup[0]]), last = Vec::unit(om[tup.back()]);
      std::vector<int> t{static_cast<int>(B.grading.parity(n.basis[on[tup[0]]].degree))};
      for (Index b : bs) t.push_back(B.grading.parity(B.basis[b].degree));
      for (int J = 0; s + J <= dst.truncation; ++J) {
        std::vector<int> cur;
        compositions(s + 1, J, cur, [&](const std::vector<int>& j) {
          std::vector<const Vec*> slots{&first};
          middle(f, bs, objs, j, slots);
          slots.push_back(&last);
          expand(slots, parity_sign(sign_rho(j, t)), [&](const std::vector<Index>& key, const Scalar& x) {
            auto it = idx[static_cast<std::size_t>(s + J)].find(key);
            if (it == idx[static_cast<std::size_t>(s + J)].end()) throw BicomplexError("pushforward: tuple outside target");
            out.add(s, s + J, it->second, c, x);
          });
        });
      }
    }
  }
  (void)m_obj;
  return out.finish();
}

BlockMap pushforward_hochschild(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& m) {
  require_plain(src, dst);
  const CdgCategory& B = *f.src;
  std::size_t nob = B.num_objects(), noc = f.dst->num_objects();
  std::vector<Index> om;
  for (Index x = 0; x < nob; ++x)
    for (Index y = 0; y < nob; ++y)
      for (Index i : m.component(static_cast<Index>(f.obj_map[x] * noc + f.obj_map[y]))) om.push_back(i);
  BlockBuilder out(src, dst);
  std::vector<KeyMap> idx;
  for (const auto& l : dst.labels) idx.push_back(index_of(l));
  for (int s = 0; s <= src.truncation; ++s) {
    const auto& labels = src.labels[static_cast<std::size_t>(s)];
    for (Index c = 0; c < labels.size(); ++c) {
      const auto& tup = labels[c];
      Index mm = om[tup[0]];
      std::vector<Index> bs(tup.begin() + 1, tup.end());
      Index x0;
      if (bs.empty()) {
        // restricted module object (x, x) for the weight-0 element
        Index pos = 0, found = 0;
        for (Index x = 0; x < nob; ++x)
          for (Index y = 0; y < nob; ++y) {
            std::size_t sz = m.component(static_cast<Index>(f.obj_map[x] * noc + f.obj_map[y])).size();
            if (tup[0] >= pos && tup[0] < pos + sz) found = x;
            pos += static_cast<Index>(sz);
          }
        x0 = found;
      } else {
        x0 = B.basis[bs[0]].dst;
      }
      std::vector<Index> objs{x0};
      for (Index b : bs) objs.push_back(B.basis[b].src);
      const Vec first = Vec::unit(mm);
      std::vector<int> t{B.grading.parity(m.basis[mm].degree)};
      for (Index b : bs) t.push_back(B.grading.parity(B.basis[b].degree));
      for (int J = 0; s + J <= dst.truncation; ++J) {
        std::vector<int> cur;
        compositions(s + 1, J, cur, [&](const std::vector<int>& j) {
          std::vector<const Vec*> slots{&first};
          middle(f, bs, objs, j, slots);
          expand(slots, parity_sign(sign_rho(j, t)), [&](const std::vector<Index>& key, const Scalar& x) {
            auto it = idx[static_cast<std::size_t>(s + J)].find(key);
            if (it == idx[static_cast<std::size_t>(s + J)].end()) throw BicomplexError("pushforward: tuple outside target");
            out.add(s, s + J, it->second, c, x);
          });
        });
      }
    }
  }
  return out.finish();
}

namespace {

// Shared body of the two pullbacks. Cochain labels are [X_0, args..., value];
// `last_arg` maps the trailing module argument (cobar) to the original
// module, `value_back` maps a value of the original module at the given
// destination label back into the restricted module.
BlockMap pullback_impl(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, bool has_module_arg,
                       const std::function<Index(Index)>& last_arg,
                       const std::function<std::optional<Index>(const std::vector<Index>&, Index)>& value_back) {
  require_plain(src, dst);
  const CdgCategory& B = *f.src;
  BlockBuilder out(src, dst);
  // source cochains grouped by argument key
  std::vector<std::unordered_map<std::vector<Index>, std::vector<Index>, KeyHash>> blocks(src.labels.size());
  for (std::size_t w = 0; w < src.labels.size(); ++w)
    for (Index k = 0; k < src.labels[w].size(); ++k) {
      const auto& l = src.labels[w][k];
      blocks[w][std::vector<Index>(l.begin(), l.end() - 1)].push_back(k);
    }
  std::vector<KeyMap> idx;
  for (const auto& l : dst.labels) idx.push_back(index_of(l));
  for (int i = 0; i <= dst.truncation; ++i) {
    const auto& labels = dst.labels[static_cast<std::size_t>(i)];
    Index prev = static_cast<Index>(-1);
    for (Index r = 0; r < labels.size(); ++r) {
      const auto& lab = labels[r];
      std::vector<Index> args(lab.begin(), lab.end() - 1);
      // handle each argument key once: rows with the same key are contiguous
      if (prev != static_cast<Index>(-1) && std::equal(args.begin(), args.end(), labels[prev].begin())) continue;
      prev = r;
      std::size_t nb = args.size() - 1 - (has_module_arg ? 1 : 0);
      std::vector<Index> bs(args.begin() + 1, args.begin() + 1 + static_cast<long>(nb));
      std::vector<Index> objs{args[0]};
      for (Index b : bs) objs.push_back(B.basis[b].src);
      std::vector<int> tb;
      for (Index b : bs) tb.push_back(B.grading.parity(B.basis[b].degree));
      const Vec first = Vec::unit(f.obj_map[args[0]]);
      const Vec last = has_module_arg ? Vec::unit(last_arg(args.back())) : Vec();
      for (int J = 0; i + J <= src.truncation; ++J) {
        std::vector<int> cur;
        compositions(i + 1, J, cur, [&](const std::vector<int>& j) {
          std::vector<const Vec*> slots{&first};
          middle(f, bs, objs, j, slots);
          if (has_module_arg) slots.push_back(&last);
          expand(slots, Scalar(1), [&](const std::vector<Index>& key, const Scalar& x) {
            auto bit = blocks[static_cast<std::size_t>(i + J)].find(key);
            if (bit == blocks[static_cast<std::size_t>(i + J)].end()) return;
            for (Index k : bit->second) {
              const auto& sl = src.labels[static_cast<std::size_t>(i + J)][k];
              std::vector<int> t{B.grading.parity(src.degrees[static_cast<std::size_t>(i + J)][k])};
              t.insert(t.end(), tb.begin(), tb.end());
              auto back = value_back(lab, sl.back());
              if (!back) throw BicomplexError("pullback: value outside the restricted component");
              std::vector<Index> row = args;
              row.push_back(*back);
              auto it = idx[static_cast<std::size_t>(i)].find(row);
              if (it == idx[static_cast<std::size_t>(i)].end()) throw BicomplexError("pullback: row not found");
              out.add(i + J, i, it->second, k, x * parity_sign(sign_lambda(j, t)));
            }
          });
        });
      }
    }
  }
  return out.finish();
}

}  // namespace

BlockMap pullback_cobar(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& l,
                        const CdgModule& m) {
  const CdgCategory& B = *f.src;
  auto ol = restricted_origin(f, l);
  auto inv = restricted_inverse(B.num_objects(), [&](Index x) { return m.component(f.obj_map[x]); });
  return pullback_impl(
      f, src, dst, true, [&](Index li) { return ol[li]; },
      [&](const std::vector<Index>& lab, Index mm) -> std::optional<Index> {
        auto it = inv[lab[0]].find(mm);
        if (it == inv[lab[0]].end()) return std::nullopt;
        return it->second;
      });
}

BlockMap pullback_hochschild(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& m) {
  const CdgCategory& B = *f.src;
  std::size_t nob = B.num_objects(), noc = f.dst->num_objects();
  auto inv = restricted_inverse(nob * nob, [&](Index o) {
    Index x = static_cast<Index>(o / nob), y = static_cast<Index>(o % nob);
    return m.component(static_cast<Index>(f.obj_map[x] * noc + f.obj_map[y]));
  });
  return pullback_impl(
      f, src, dst, false, [](Index i) { return i; },
      [&](const std::vector<Index>& lab, Index mm) -> std::optional<Index> {
        Index x0 = lab[0];
        Index xi = lab.size() > 2 ? B.basis[lab[lab.size() - 2]].src : x0;
        auto& mp = inv[x0 * nob + xi];
        auto it = mp.find(mm);
        if (it == mp.end()) return std::nullopt;
        return it->second;
      });
}

}  // namespace cdg
