#pragma once
// CDG- and QDG-modules over a CdgCategory, module constructions, Hom and
// tensor complexes, and the DG-category of projective CDG-modules.
//
// Conventions:
//  * left modules: M(X) -> M(Y) along b: X -> Y, written b.m
//  * right modules: N(Y) -> N(X) along b: X -> Y, written n.b
//  * CDG condition: left d^2 m = h.m, right d^2 n = -n.h
//  * shift: M[n] puts m in degree |m| - n, with d' = (-1)^n d and, on the
//    left, b.'m = (-1)^{n|b|} b.m
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "category.hpp"

namespace cdg {

enum class Side { Left, Right };

struct ModBasis {
  std::string name;
  Index object = 0;
  Degree degree = 0;
};

// Declared presentation of the underlying graded module as a summand of a
// free module: iota: M -> F, pi: F -> M with pi iota = id.
struct FreeGenerator {
  Index object = 0;
  Degree degree = 0;
};
struct SummandPresentation {
  std::vector<FreeGenerator> generators;
  std::vector<Vec> iota;  // per module basis element, coordinates in F
  std::vector<Vec> pi;    // per F basis element, coordinates in M
};

class CdgModule {
 public:
  Side side = Side::Left;
  CategoryPtr base;
  std::vector<ModBasis> basis;
  std::vector<std::vector<Vec>> action;  // action[b][m]: b.m (left) or m.b (right)
  std::vector<Vec> diff;
  std::optional<SummandPresentation> summand;

  std::size_t dim() const { return basis.size(); }
  std::vector<Index> component(Index x) const;
  Index basis_index(const std::string& name) const;
  // Action of a B-vector on a module vector, on the module's side.
  Vec act(const Vec& b, const Vec& m) const;
  Vec d(const Vec& m) const;
  bool homogeneous_in(const Vec& v, Index obj, Degree g) const;
  void reset_tables();
  const GradingGroup& grading() const { return base->grading; }
};

struct ModuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A homogeneous k-linear map between modules, one image per source basis element.
struct ModuleMap {
  Degree degree = 0;
  std::vector<Vec> images;
  Vec apply(const Vec& v) const;
};

ModuleMap compose_maps(const ModuleMap& f, const ModuleMap& g, const GradingGroup& gr);  // f after g
ModuleMap identity_map(std::size_t n);
// B-linearity for the declared degree (left: f(b.m) = (-1)^{|f||b|} b.f(m)).
bool is_linear(const ModuleMap& f, const CdgModule& src, const CdgModule& dst);
// d f - (-1)^{|f|} f d
ModuleMap hom_differential(const ModuleMap& f, const CdgModule& src, const CdgModule& dst);
bool is_closed(const ModuleMap& f, const CdgModule& src, const CdgModule& dst);

// qdg = true skips the d^2 axiom.
ValidationReport validate_module(const CdgModule& m, bool qdg = false);
// left: d^2 - h.,  right: d^2 + .h ; zero iff the module is CDG
std::vector<Vec> module_curvature(const CdgModule& m);
bool is_cdg_module(const CdgModule& m);

CdgModule twist_module(const CdgModule& m, const ModuleMap& tau);
CdgModule shift_module(const CdgModule& m, Degree n);
// Free graded module on generators; the differential is zero.
CdgModule free_graded_module(const CategoryPtr& b, Side side, const std::vector<FreeGenerator>& gens);
// The CDG-module P + d(P) generated by a graded module P (its differential is ignored).
CdgModule free_cdg_module(const CdgModule& p);
// P with differential pi d iota, for a summand P of a QDG-module F.
CdgModule qdg_structure_on_projective(const CdgModule& f, const std::vector<ModBasis>& p_basis,
                                      const ModuleMap& iota, const ModuleMap& pi);
CdgModule representable_qdg(const CategoryPtr& b, Index x);
CdgModule external_tensor(const CdgModule& m1, const CdgModule& m2, const CategoryPtr& tensor_base);
// Left module over tensor(B, opposite(B)): (X,Y) -> Hom(Y,X).
CdgModule diagonal_bimodule(const CategoryPtr& b, const CategoryPtr& tensor_base);
// Right module over tensor(B, opposite(B)): (X,Y) -> Hom(X,Y).
CdgModule diagonal_right_bimodule(const CategoryPtr& b, const CategoryPtr& tensor_base);
CdgModule restrict(const CdgFunctor& f, const CdgModule& m);
// Cone of a closed degree-zero map f: L -> M, on M + L[1].
CdgModule cone(const ModuleMap& f, const CdgModule& l, const CdgModule& m);
// Total module of K -> L -> M (closed maps, exact) on K + L[-1] + M[-2].
CdgModule total_of_exact_triple(const CdgModule& k, const CdgModule& l, const CdgModule& m,
                                const ModuleMap& f, const ModuleMap& g);

// Graded space of B-linear maps with the Hom differential.
struct HomComplex {
  std::vector<ModuleMap> basis;
  FiniteComplex complex;
  // coordinates of a B-linear homogeneous map in the basis
  Vec coordinates(const ModuleMap& f) const;
  std::vector<Vec> flat;  // basis maps flattened to (src,dst) pair coordinates
  std::size_t src_dim = 0, dst_dim = 0;
  std::shared_ptr<const Echelon> echelon;  // over flat, tracking basis ids
};
// differential = false leaves complex.d empty (for graded modules without a CDG structure).
HomComplex hom_complex(const CdgModule& l, const CdgModule& m, const std::vector<ModuleMap>& prefer = {},
                       bool differential = true);
// H with dH + Hd = id, if the module is contractible.
std::optional<ModuleMap> contracting_homotopy(const CdgModule& m);

// N tensor_B M as a quotient of the sum of N(X) x M(X).
struct TensorComplex {
  FiniteComplex complex;
  std::vector<Index> survivors;  // pair indices spanning the quotient
  std::size_t n_dim = 0, m_dim = 0;
  // Map a pair vector (index n*m_dim + m) into quotient coordinates.
  Vec project(const Vec& pairs) const;
  struct Impl;
  std::shared_ptr<Impl> impl;
};
TensorComplex tensor_over_base(const CdgModule& n, const CdgModule& m);

// Restriction of the action and differential to a homogeneous subspace
// given by basis vectors (each inside a single object and degree).
CdgModule submodule(const CdgModule& m, const std::vector<Vec>& gens, std::vector<Vec>* inclusion = nullptr);
// Kernel of a degree-zero B-linear map as a submodule.
CdgModule kernel_module(const ModuleMap& f, const CdgModule& src, const CdgModule& dst, std::vector<Vec>* inclusion);

// DG (qdg = false) or CDG (qdg = true) category of right modules, each with a
// declared summand presentation.
CdgCategory mf_category(const CategoryPtr& b, const std::vector<CdgModule>& objects, bool qdg,
                        const std::vector<std::string>& names = {});

}  // namespace cdg
