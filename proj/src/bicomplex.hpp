#pragma once
// Curved bicomplexes with components del, d, delta, the explicit bar, cobar
// and Hochschild builders, totalization and the functoriality maps.
//
// Homological bicomplexes (bar, Hochschild homology) live in weights -i:
// del lowers i, delta raises it. Cohomological ones (cobar, Hochschild
// cohomology) live in weights +i: del raises i, delta lowers it.
//
// Basis of weight i: lexicographic in (object path, basis path). Chains are
// tuples of basis indices; cochains are pairs (argument tuple, value basis
// element) standing for the map sending that tuple to that element.
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "module.hpp"

namespace cdg {

enum class Orientation { Homological, Cohomological };
enum class TotalizationMode { DirectSum, DirectProduct };
enum class BicomplexKind { Bar, Cobar, HochschildHomology, HochschildCohomology };

struct Bicomplex {
  Orientation orientation = Orientation::Homological;
  BicomplexKind kind = BicomplexKind::Bar;
  GradingGroup grading;
  int truncation = 0;
  bool reduced = false;
  std::vector<std::vector<Degree>> degrees;     // internal degree per basis element, per weight
  std::vector<std::vector<std::vector<Index>>> labels;  // basis tuples per weight
  // Maps indexed by source weight; a map leaving the materialized range
  // has zero rows.
  std::vector<SparseMatrix> del, d, delta;

  std::size_t dim(int i) const { return degrees[static_cast<std::size_t>(i)].size(); }
  // target weight of del / delta from weight i (may be out of range)
  int del_target(int i) const { return orientation == Orientation::Homological ? i - 1 : i + 1; }
  int delta_target(int i) const { return orientation == Orientation::Homological ? i + 1 : i - 1; }
};

struct BicomplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  bool reduced = false;  // drop tuples with a unit basis element in a B slot
};

// N right, M left, both over b.
Bicomplex bar_bicomplex(const CdgModule& n, const CdgModule& m, int t, BuildOptions opt = {});
// L, M left over b.
Bicomplex cobar_bicomplex(const CdgModule& l, const CdgModule& m, int t, BuildOptions opt = {});
// M a left module over tensor(B, opposite(B)), objects (X,Y) at X*|ob|+Y.
Bicomplex hochschild_bicomplex(const CategoryPtr& b, const CdgModule& m, bool cohomology, int t,
                               BuildOptions opt = {});

// sign exponents mod 2
int sign_rho(const std::vector<int>& j, const std::vector<int>& t);
int sign_lambda(const std::vector<int>& j, const std::vector<int>& t);

struct IdentityCheck {
  std::string name;
  int weight = 0;
  bool ok = true;
};
// The five weightwise identities, away from the truncation boundary.
std::vector<IdentityCheck> check_identities(const Bicomplex& bc);

struct Totalization {
  FiniteComplex complex;
  std::vector<std::size_t> offset;  // start of each weight block
  // total degrees whose homology could change if the truncation grew
  std::optional<std::vector<Degree>> reliable;  // unset: no reliable window known
};
Totalization totalize(const Bicomplex& bc, TotalizationMode mode);
// Homology per (weight, internal degree) when d and delta vanish.
std::map<std::pair<int, Degree>, std::size_t> weight_homology(const Bicomplex& bc);
bool has_zero_d_and_delta(const Bicomplex& bc);

// Chain maps between truncated bicomplexes, as blocks (source weight, target weight).
struct BlockMap {
  std::map<std::pair<int, int>, SparseMatrix> blocks;
  SparseMatrix block(int s, int t, std::size_t rows, std::size_t cols) const;
};
// F_*: Br(F*N, B, F*M) -> Br(N, C, M); src must be the bar complex built on
// restrict(F, N) and restrict(F, M).
BlockMap pushforward_bar(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& n,
                         const CdgModule& m);
// F^*: Cb(L, C, M) -> Cb(F*L, B, F*M)
BlockMap pullback_cobar(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& l,
                        const CdgModule& m);
// Hochschild versions; m is the module over C x C^op and ff = F x F^op.
BlockMap pushforward_hochschild(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst,
                                const CdgModule& m);
BlockMap pullback_hochschild(const CdgFunctor& f, const Bicomplex& src, const Bicomplex& dst, const CdgModule& m);
// D_dst F = F D_src on weights below the boundary.
bool is_chain_map(const BlockMap& f, const Bicomplex& src, const Bicomplex& dst, std::string* failure = nullptr);
BlockMap compose_block_maps(const BlockMap& g, const BlockMap& f, const Bicomplex& mid);

// Hom-space of a restricted module: positions of the original basis
// elements of m in restrict(F, m), in order.
std::vector<Index> restricted_origin(const CdgFunctor& f, const CdgModule& m);

// Identity map Tot^sum -> Tot^prod of a DG bicomplex, with both homologies.
struct ComparisonMap {
  SparseMatrix map;
  std::map<Degree, std::size_t> source, target;
  std::map<Degree, std::size_t> image_rank;
};
ComparisonMap comparison_map(const Bicomplex& bc);

}  // namespace cdg
