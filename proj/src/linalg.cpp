#include "linalg.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace cdg {

// ---- Vec ----

Vec Vec::unit(Index i, Scalar c) {
  Vec v;
  if (!c.is_zero()) v.t_.emplace_back(i, std::move(c));
  return v;
}

Scalar Vec::get(Index i) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), i,
                             [](const Term& t, Index k) { return t.first < k; });
  if (it != t_.end() && it->first == i) return it->second;
  return 0;
}

Vec& Vec::add_scaled(const Vec& o, const Scalar& c) {
  if (c.is_zero() || o.t_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  auto a = t_.begin(), ae = t_.end();
  auto b = o.t_.begin(), be = o.t_.end();
  bool one = c.is_one();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == ae || b->first < a->first) {
      out.emplace_back(b->first, one ? b->second : b->second * c);
      ++b;
    } else {
      Scalar s = a->second + (one ? b->second : b->second * c);
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  t_ = std::move(out);
  return *this;
}

Vec Vec::scaled(const Scalar& c) const {
  Vec r;
  if (c.is_zero()) return r;
  r.t_.reserve(t_.size());
  for (const auto& [i, x] : t_) r.t_.emplace_back(i, x * c);
  return r;
}

Vec VecBuilder::finish() {
  if (raw_.size() == 1) {
    Vec v = Vec::from_sorted(std::move(raw_));
    raw_.clear();
    return v;
  }
  std::sort(raw_.begin(), raw_.end(), [](const Vec::Term& a, const Vec::Term& b) { return a.first < b.first; });
  std::vector<Vec::Term> out;
  out.reserve(raw_.size());
  for (auto& t : raw_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  raw_.clear();
  return Vec::from_sorted(std::move(out));
}

// ---- SparseMatrix ----

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.c_[j] = Vec::unit(static_cast<Index>(j));
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<Vec> cols) {
  SparseMatrix m(rows, cols.size());
  m.c_ = std::move(cols);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  SparseMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    VecBuilder b;
    for (std::size_t i = 0; i < r; ++i) b.add(static_cast<Index>(i), rows[i][j]);
    m.c_[j] = b.finish();
  }
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& v : c_) n += v.nnz();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Vec& v) { return v.empty(); });
}

Vec SparseMatrix::apply(const Vec& x) const {
  VecBuilder b;
  for (const auto& [j, c] : x.terms()) b.add(c_[j], c);
  return b.finish();
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::vector<Vec::Term>> rows(rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& [i, x] : c_[j].terms()) rows[i].emplace_back(static_cast<Index>(j), x);
  SparseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) t.c_[i] = Vec::from_sorted(std::move(rows[i]));
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw ComplexError("matrix product: dimension mismatch");
  SparseMatrix r(rows_, o.cols_);
  // dense accumulator over the rows, reused for every column
  std::vector<Scalar> acc(rows_);
  std::vector<char> used(rows_, 0);
  std::vector<Index> touched;
  for (std::size_t j = 0; j < o.cols_; ++j) {
    touched.clear();
    for (const auto& [k, c] : o.c_[j].terms())
      for (const auto& [i, x] : c_[k].terms()) {
        if (!used[i]) {
          used[i] = 1;
          touched.push_back(i);
          acc[i] = x * c;
        } else {
          acc[i] += x * c;
        }
      }
    std::sort(touched.begin(), touched.end());
    std::vector<Vec::Term> out;
    out.reserve(touched.size());
    for (Index i : touched) {
      if (!acc[i].is_zero()) out.emplace_back(i, std::move(acc[i]));
      used[i] = 0;
    }
    r.c_[j] = Vec::from_sorted(std::move(out));
  }
  return r;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ComplexError("matrix sum: dimension mismatch");
  SparseMatrix r = *this;
  r += o;
  return r;
}

SparseMatrix& SparseMatrix::operator+=(const SparseMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ComplexError("matrix sum: dimension mismatch");
  for (std::size_t j = 0; j < cols_; ++j) {
    if (o.c_[j].empty()) continue;
    if (c_[j].empty())
      c_[j] = o.c_[j];
    else
      c_[j].add_scaled(o.c_[j], 1);
  }
  return *this;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(-1); }

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  SparseMatrix r(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) r.c_[j] = c_[j].scaled(c);
  return r;
}

SparseMatrix SparseMatrix::in(const Field& f) const {
  SparseMatrix r(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    VecBuilder b;
    for (const auto& [i, x] : c_[j].terms()) b.add(i, x.in(f));
    r.c_[j] = b.finish();
  }
  return r;
}

std::string SparseMatrix::triplets() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& [i, x] : c_[j].terms()) os << i << ' ' << j << ' ' << x.str() << '\n';
  return os.str();
}

SparseMatrix SparseMatrix::parse_triplets(const std::string& text, std::size_t rows, std::size_t cols,
                                          const Field& f) {
  std::vector<VecBuilder> b(cols);
  std::istringstream is(text);
  std::size_t i, j;
  std::string v;
  while (is >> i >> j >> v) {
    if (i >= rows || j >= cols) throw ComplexError("triplet out of range");
    b[j].add(static_cast<Index>(i), Scalar::parse(v, f));
  }
  SparseMatrix m(rows, cols);
  for (std::size_t k = 0; k < cols; ++k) m.c_[k] = b[k].finish();
  return m;
}

// ---- Echelon ----

Vec Echelon::reduce(Vec v, Vec* combo) const {
  VecBuilder cb;
  while (!v.empty()) {
    auto it = piv_.find(v.max_index());
    if (it == piv_.end()) break;
    Scalar c = v.terms().back().second;
    v.add_scaled(it->second.v, -c);
    if (combo) cb.add(it->second.combo, c);
  }
  if (combo) *combo = cb.finish();
  return v;
}

Vec Echelon::reduce_full(Vec v, Vec* combo) const {
  VecBuilder cb;
  // A pivot only touches indices at or below its key, so sweep downwards.
  Index bound = std::numeric_limits<Index>::max();
  bool first = true;
  while (!v.empty()) {
    const Vec::Term* hit = nullptr;
    for (auto it = v.terms().rbegin(); it != v.terms().rend(); ++it) {
      if (!first && it->first >= bound) continue;
      if (piv_.count(it->first)) {
        hit = &*it;
        break;
      }
    }
    if (!hit) break;
    Index key = hit->first;
    Scalar c = hit->second;
    const Pivot& p = piv_.at(key);
    v.add_scaled(p.v, -c);
    if (combo) cb.add(p.combo, c);
    bound = key;
    first = false;
  }
  if (combo) *combo = cb.finish();
  return v;
}

bool Echelon::insert(Vec v, Index input_id) {
  Vec used;
  v = reduce(std::move(v), track_ ? &used : nullptr);
  if (v.empty()) {
    if (track_) {
      Vec dep = Vec::unit(input_id);
      dep.add_scaled(used, -1);
      deps_.push_back(std::move(dep));
    }
    return false;
  }
  Scalar inv = v.terms().back().second.inverse();
  Pivot p;
  p.v = v.scaled(inv);
  if (track_) {
    Vec c = Vec::unit(input_id);
    c.add_scaled(used, -1);
    p.combo = c.scaled(inv);
  }
  Index key = p.v.max_index();
  piv_.emplace(key, std::move(p));
  return true;
}

// ---- rank ----

namespace {

std::size_t rank_dense(const SparseMatrix& m) {
  std::size_t r = m.rows(), c = m.cols();
  std::vector<std::vector<Scalar>> a(r, std::vector<Scalar>(c));
  for (std::size_t j = 0; j < c; ++j)
    for (const auto& [i, x] : m.col(j).terms()) a[i][j] = x;
  std::size_t rk = 0;
  for (std::size_t j = 0; j < c && rk < r; ++j) {
    std::size_t p = rk;
    while (p < r && a[p][j].is_zero()) ++p;
    if (p == r) continue;
    std::swap(a[p], a[rk]);
    Scalar inv = a[rk][j].inverse();
    for (std::size_t i = rk + 1; i < r; ++i) {
      if (a[i][j].is_zero()) continue;
      Scalar f = a[i][j] * inv;
      for (std::size_t k = j; k < c; ++k)
        if (!a[rk][k].is_zero()) a[i][k] -= f * a[rk][k];
    }
    ++rk;
  }
  return rk;
}

// Markowitz-style elimination: repeatedly pivot in a column of minimal
// count, on the shortest row of that column.
std::size_t rank_markowitz(const SparseMatrix& m) {
  SparseMatrix t = m.transpose();  // columns of t are rows of m
  std::size_t nr = m.rows();
  std::vector<Vec> rows(nr);
  for (std::size_t i = 0; i < nr; ++i) rows[i] = t.col(i);
  std::vector<std::set<Index>> colrows(m.cols());
  for (std::size_t i = 0; i < nr; ++i)
    for (const auto& [j, x] : rows[i].terms()) colrows[j].insert(static_cast<Index>(i));
  std::set<std::pair<std::size_t, Index>> bycount;
  for (std::size_t j = 0; j < colrows.size(); ++j)
    if (!colrows[j].empty()) bycount.emplace(colrows[j].size(), static_cast<Index>(j));
  std::vector<char> done(nr, 0);
  std::size_t rk = 0;

  auto touch = [&](Index j, std::size_t before) {
    bycount.erase({before, j});
    if (!colrows[j].empty()) bycount.emplace(colrows[j].size(), j);
  };

  while (!bycount.empty()) {
    Index pc = bycount.begin()->second;
    Index pr = 0;
    std::size_t best = SIZE_MAX;
    for (Index i : colrows[pc])
      if (rows[i].nnz() < best) {
        best = rows[i].nnz();
        pr = i;
      }
    ++rk;
    done[pr] = 1;
    Vec prow = rows[pr];
    Scalar inv = prow.get(pc).inverse();
    // remove pivot row from column index
    for (const auto& [j, x] : prow.terms()) {
      std::size_t before = colrows[j].size();
      colrows[j].erase(pr);
      touch(j, before);
    }
    std::vector<Index> targets(colrows[pc].begin(), colrows[pc].end());
    for (Index i : targets) {
      Scalar f = rows[i].get(pc) * inv;
      Vec old = rows[i];
      rows[i].add_scaled(prow, -f);
      // update column index for entries that appeared or vanished
      auto a = old.terms().begin(), ae = old.terms().end();
      auto b = rows[i].terms().begin(), be = rows[i].terms().end();
      while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
          std::size_t before = colrows[a->first].size();
          colrows[a->first].erase(i);
          touch(a->first, before);
          ++a;
        } else if (a == ae || b->first < a->first) {
          std::size_t before = colrows[b->first].size();
          colrows[b->first].insert(i);
          touch(b->first, before);
          ++b;
        } else {
          ++a;
          ++b;
        }
      }
    }
    rows[pr] = Vec();
  }
  return rk;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.rows() < 64 && m.cols() < 64) return rank_dense(m);
  return rank_markowitz(m);
}

std::vector<Vec> kernel_basis(const SparseMatrix& m) {
  Echelon e(true);
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.col(j), static_cast<Index>(j));
  return e.dependencies();
}

bool solve(const SparseMatrix& m, const Vec& b, Vec& x) {
  Echelon e(true);
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.col(j), static_cast<Index>(j));
  Vec combo;
  Vec rest = e.reduce(b, &combo);
  if (!rest.empty()) return false;
  x = combo;
  return true;
}

std::vector<std::size_t> independent_columns(const SparseMatrix& m) {
  Echelon e;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (e.insert(m.col(j))) out.push_back(j);
  return out;
}

// ---- complexes ----

std::map<Degree, std::size_t> FiniteComplex::dims() const {
  std::map<Degree, std::size_t> out;
  for (Degree g : degrees) ++out[grading.normalize(g)];
  return out;
}

bool FiniteComplex::homogeneous() const {
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (const auto& [i, x] : d.col(j).terms())
      if (grading.normalize(degrees[i]) != grading.add(degrees[j], grading.one())) return false;
  return true;
}

SparseMatrix submatrix(const SparseMatrix& m, const std::vector<Index>& rows,
                       const std::vector<Index>& cols) {
  std::vector<std::int64_t> pos(m.rows(), -1);
  for (std::size_t k = 0; k < rows.size(); ++k) pos[rows[k]] = static_cast<std::int64_t>(k);
  SparseMatrix s(rows.size(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<Vec::Term> t;
    for (const auto& [i, x] : m.col(cols[k]).terms())
      if (pos[i] >= 0) t.emplace_back(static_cast<Index>(pos[i]), x);
    std::sort(t.begin(), t.end(), [](const Vec::Term& a, const Vec::Term& b) { return a.first < b.first; });
    s.set_col(k, Vec::from_sorted(std::move(t)));
  }
  return s;
}

std::map<Degree, std::size_t> homology_dims(const FiniteComplex& c) {
  if (!c.homogeneous()) throw ComplexError("differential is not homogeneous of degree one");
  if (!c.square_zero()) throw ComplexError("differential does not square to zero");
  std::map<Degree, std::vector<Index>> by;
  for (std::size_t i = 0; i < c.degrees.size(); ++i) by[c.grading.normalize(c.degrees[i])].push_back(static_cast<Index>(i));
  std::map<Degree, std::size_t> out_rank;  // rank of d leaving degree g
  for (const auto& [g, idx] : by) {
    Degree h = c.grading.add(g, 1);
    auto it = by.find(h);
    out_rank[g] = it == by.end() ? 0 : rank(submatrix(c.d, it->second, idx));
  }
  std::map<Degree, std::size_t> out;
  for (const auto& [g, idx] : by) {
    Degree prev = c.grading.add(g, -1);
    std::size_t in = out_rank.count(prev) ? out_rank[prev] : 0;
    out[g] = idx.size() - out_rank[g] - in;
  }
  return out;
}

}  // namespace cdg
