#pragma once
// Exact sparse linear algebra: vectors, column-major matrices, elimination,
// and homology of finite graded complexes.
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grading.hpp"
#include "scalar.hpp"

namespace cdg {

using Index = std::uint32_t;

// Sorted (index, nonzero value) pairs.
class Vec {
 public:
  using Term = std::pair<Index, Scalar>;
  Vec() = default;
  static Vec unit(Index i, Scalar c = 1);

  const std::vector<Term>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }
  std::size_t nnz() const { return t_.size(); }
  Scalar get(Index i) const;
  Index max_index() const { return t_.back().first; }

  Vec& add_scaled(const Vec& o, const Scalar& c);
  Vec scaled(const Scalar& c) const;
  Vec operator-() const { return scaled(-1); }
  friend Vec operator+(const Vec& a, const Vec& b) { Vec r = a; r.add_scaled(b, 1); return r; }
  friend Vec operator-(const Vec& a, const Vec& b) { Vec r = a; r.add_scaled(b, -1); return r; }
  friend bool operator==(const Vec& a, const Vec& b) { return a.t_ == b.t_; }

  // Caller guarantees sorted, unique, nonzero.
  static Vec from_sorted(std::vector<Term> t) { Vec v; v.t_ = std::move(t); return v; }

 private:
  std::vector<Term> t_;
};

// Collects unsorted contributions and merges them.
class VecBuilder {
 public:
  void add(Index i, const Scalar& c) {
    if (!c.is_zero()) raw_.emplace_back(i, c);
  }
  void add(const Vec& v, const Scalar& c = 1) {
    if (c.is_zero()) return;
    for (const auto& [i, x] : v.terms()) raw_.emplace_back(i, c.is_one() ? x : x * c);
  }
  Vec finish();
  bool empty() const { return raw_.empty(); }

 private:
  std::vector<Vec::Term> raw_;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), c_(cols) {}
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_columns(std::size_t rows, std::vector<Vec> cols);
  static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Vec& col(std::size_t j) const { return c_[j]; }
  void set_col(std::size_t j, Vec v) { c_[j] = std::move(v); }
  Scalar at(std::size_t i, std::size_t j) const { return c_[j].get(static_cast<Index>(i)); }
  std::size_t nnz() const;
  bool is_zero() const;

  Vec apply(const Vec& x) const;
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix& operator+=(const SparseMatrix& o);
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Scalar& c) const;
  SparseMatrix in(const Field& f) const;
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.c_ == b.c_;
  }

  // Triplet text: one "row col num/den" line per nonzero, 0-based, column order.
  std::string triplets() const;
  static SparseMatrix parse_triplets(const std::string& text, std::size_t rows, std::size_t cols,
                                     const Field& f);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Vec> c_;
};

// Incremental echelon form of a set of vectors in a fixed ambient space.
// Each stored pivot vector remembers how it was combined from the inputs.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}
  // Returns true if v was independent of what is already stored.
  bool insert(Vec v, Index input_id = 0);
  // Reduces v modulo the span; returns the remainder and the combination
  // (over input ids) that was subtracted.
  Vec reduce(Vec v, Vec* combo = nullptr) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  // Eliminates every pivot index from v, not just the leading ones.
  Vec reduce_full(Vec v, Vec* combo = nullptr) const;
  bool is_pivot(Index i) const { return piv_.count(i) != 0; }
  std::size_t rank() const { return piv_.size(); }
  const std::vector<Vec>& dependencies() const { return deps_; }

 private:
  struct Pivot {
    Vec v;      // leading index is the key, normalized to 1 there
    Vec combo;  // v = sum combo[k] * input_k
  };
  bool track_;
  std::map<Index, Pivot> piv_;
  std::vector<Vec> deps_;  // input combinations that vanish
};

std::size_t rank(const SparseMatrix& m);
// Basis of {x : m x = 0}; its size is cols - rank.
std::vector<Vec> kernel_basis(const SparseMatrix& m);
// Some x with m x = b, if one exists.
bool solve(const SparseMatrix& m, const Vec& b, Vec& x);
// Indices of a maximal independent subset of the columns, in order.
std::vector<std::size_t> independent_columns(const SparseMatrix& m);

// A finite graded complex: one degree label per basis vector and a
// homogeneous degree +one differential.
struct FiniteComplex {
  GradingGroup grading;
  std::vector<Degree> degrees;
  SparseMatrix d;

  std::map<Degree, std::size_t> dims() const;
  bool square_zero() const { return (d * d).is_zero(); }
  bool homogeneous() const;
};

struct ComplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dim ker - dim im in each degree occurring in the complex.
std::map<Degree, std::size_t> homology_dims(const FiniteComplex& c);

// Restriction of a matrix to given row and column index lists.
SparseMatrix submatrix(const SparseMatrix& m, const std::vector<Index>& rows,
                       const std::vector<Index>& cols);

}  // namespace cdg
