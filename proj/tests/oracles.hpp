#pragma once
// Reference computations written directly from textbook formulas, sharing
// nothing with the library except the structure-constant tables they read.
#include <gmpxx.h>

#include <map>
#include <vector>

#include "category.hpp"

namespace cdgtest {

// Rank of a dense rational matrix by plain Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

// Tor^A(k, k) from the reduced bar complex k x Abar^{x i} x k of a
// one-object rational algebra augmented by killing every non-unit basis
// element (so those must span an ideal). Differential
//   a1|...|ai  ->  sum_j (-1)^{j + |a1|+...+|aj|} a1|...|aj a(j+1)|...|ai.
// Result: (weight, internal degree) -> dimension, for weights 0..top.
inline std::map<std::pair<int, long>, std::size_t> reduced_bar_tor(const cdg::CdgCategory& a, int top) {
  const cdg::Index unit = a.unit[0].terms()[0].first;
  std::vector<cdg::Index> abar;
  for (cdg::Index i = 0; i < a.dim(); ++i)
    if (i != unit) abar.push_back(i);

  std::vector<std::vector<std::vector<cdg::Index>>> chains(static_cast<std::size_t>(top) + 2);
  chains[0].push_back({});
  for (int w = 1; w <= top + 1; ++w)
    for (const auto& c : chains[w - 1])
      for (cdg::Index x : abar) {
        auto n = c;
        n.push_back(x);
        chains[w].push_back(n);
      }
  auto degree = [&](const std::vector<cdg::Index>& c) {
    long g = 0;
    for (auto x : c) g += a.basis[x].degree;
    return g;
  };
  auto position = [&](int w, const std::vector<cdg::Index>& c) {
    for (std::size_t k = 0; k < chains[w].size(); ++k)
      if (chains[w][k] == c) return k;
    return chains[w].size();
  };

  // rank of the differential from weight w to w-1, split by internal degree
  auto ranks = [&](int w) {
    std::map<long, std::vector<std::vector<mpq_class>>> by_degree;  // degree -> columns
    std::map<long, std::vector<std::size_t>> rows_of;
    for (std::size_t r = 0; r < chains[w - 1].size(); ++r) rows_of[degree(chains[w - 1][r])].push_back(r);
    std::map<long, std::size_t> out;
    for (const auto& c : chains[w]) {
      std::vector<mpq_class> col(chains[w - 1].size());
      long partial = 0;
      for (std::size_t j = 0; j + 1 < c.size(); ++j) {
        partial += a.basis[c[j]].degree;
        int sign = ((static_cast<long>(j) + 1 + partial) % 2 == 0) ? 1 : -1;
        for (const auto& [b, coef] : a.compose[c[j]][c[j + 1]].terms()) {
          if (b == unit) continue;
          auto t = c;
          t[j] = b;
          t.erase(t.begin() + static_cast<long>(j) + 1);
          col[position(w - 1, t)] += sign * coef.to_mpq();
        }
      }
      by_degree[degree(c)].push_back(col);
    }
    for (auto& [g, cols] : by_degree) {
      std::vector<std::vector<mpq_class>> m;
      for (auto r : rows_of[g]) {
        std::vector<mpq_class> row;
        for (auto& col : cols) row.push_back(col[r]);
        m.push_back(row);
      }
      out[g] = m.empty() ? 0 : dense_rank(m);
    }
    return out;
  };

  std::map<std::pair<int, long>, std::size_t> result;
  std::vector<std::map<long, std::size_t>> rk(static_cast<std::size_t>(top) + 2);
  for (int w = 1; w <= top + 1; ++w) rk[w] = ranks(w);
  for (int w = 0; w <= top; ++w) {
    std::map<long, std::size_t> dims;
    for (const auto& c : chains[w]) ++dims[degree(c)];
    for (const auto& [g, n] : dims) {
      std::size_t h = n - (w > 0 ? rk[w][g] : 0) - rk[w + 1][g];
      if (h) result[{w, g}] = h;
    }
  }
  return result;
}

}  // namespace cdgtest
