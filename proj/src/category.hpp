#pragma once
// Small CDG-categories with finite homogeneous bases, and CDG/QDG-functors.
#include <memory>
#include <string>
#include <vector>

#include "grading.hpp"
#include "linalg.hpp"

namespace cdg {

struct BasisElem {
  std::string name;
  Index src = 0, dst = 0;  // morphism src -> dst
  Degree degree = 0;
};

struct ValidationReport {
  struct Item {
    std::string axiom;
    bool ok = true;
    std::string witness;
  };
  std::vector<Item> items;
  bool ok() const;
  void record(const std::string& axiom, bool ok, const std::string& witness = {});
  std::string text() const;
};

struct CategoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Composition is written fg = f after g, for g: X -> Y and f: Y -> Z.
// A CDG-ring is the one-object case.
class CdgCategory {
 public:
  Field field;
  GradingGroup grading;
  std::vector<std::string> objects;
  std::vector<BasisElem> basis;
  std::vector<std::vector<Vec>> compose;  // compose[f][g] = fg
  std::vector<Vec> diff;                  // d(f) per basis element
  std::vector<Vec> curvature;             // h_X per object
  std::vector<Vec> unit;                  // id_X per object

  std::size_t dim() const { return basis.size(); }
  std::size_t num_objects() const { return objects.size(); }
  Index object_index(const std::string& name) const;
  Index basis_index(const std::string& name) const;
  // basis elements X -> Y
  std::vector<Index> hom(Index x, Index y) const;
  std::size_t hom_dim(Index x, Index y) const { return hom(x, y).size(); }

  Vec mul(const Vec& a, const Vec& b) const;
  Vec d(const Vec& a) const;
  // Degree of a homogeneous vector; throws when it is not homogeneous.
  Degree degree_of(const Vec& v) const;
  bool homogeneous_in(const Vec& v, Index x, Index y, Degree g) const;

  // Allocate empty tables for the current basis and objects.
  void reset_tables();
  std::string vec_str(const Vec& v) const;
};

using CategoryPtr = std::shared_ptr<const CdgCategory>;

ValidationReport validate(const CdgCategory& c);
CdgCategory opposite(const CdgCategory& c);
CdgCategory tensor(const CdgCategory& c, const CdgCategory& d);
// tau: one degree-one element of hom(X,X) per object
CdgCategory change_connection(const CdgCategory& b, const std::vector<Vec>& tau);
CdgCategory curvature_shift(const CdgCategory& b, const Scalar& c);
CdgCategory pushforward(const GradingMorphism& phi, const CdgCategory& b);
// Exact equality of all structure constants.
bool same_structure(const CdgCategory& a, const CdgCategory& b);
// The unit ring k as a one-object category.
CdgCategory ground_ring(const Field& f, const GradingGroup& g, const Scalar& curvature = 0);

// (F, a): objects and basis morphisms mapped linearly, plus a connection
// element a_X in hom(F X, F X) of degree one per source object.
struct CdgFunctor {
  CategoryPtr src, dst;
  std::vector<Index> obj_map;
  std::vector<Vec> mor_map;  // per source basis element
  std::vector<Vec> a;        // per source object

  Vec apply(const Vec& v) const;
  bool strict() const;
};

CdgFunctor identity_functor(const CategoryPtr& c);
// (Id, tau): B -> change_connection(B, -tau); the target is allocated here.
CdgFunctor identity_with_connection(const CategoryPtr& b, const std::vector<Vec>& tau);
// Checks functoriality and compatibility with d; the CDG item tests curvature.
ValidationReport validate_functor(const CdgFunctor& f);
// (h_F)_X = h_{F X} + d a_X + a_X^2 - F(h_X)
std::vector<Vec> functor_curvature(const CdgFunctor& f);
bool is_cdg(const CdgFunctor& f);
// G after F, with c_X = G(a_X) + b_{F X}
CdgFunctor compose_functors(const CdgFunctor& f, const CdgFunctor& g);
// (F^op, -a) between the given opposite categories
CdgFunctor opposite_functor(const CdgFunctor& f, const CategoryPtr& src_op, const CategoryPtr& dst_op);
// F' x F'' with connection a' x id + id x a''
CdgFunctor tensor_functors(const CdgFunctor& f, const CdgFunctor& g, const CategoryPtr& src,
                           const CategoryPtr& dst);

}  // namespace cdg
