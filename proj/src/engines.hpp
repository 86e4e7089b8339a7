#pragma once
// Derived functors: projective resolutions and Tor/Ext/HH of the second kind,
// truncated bar computations of the first kind, and the comparison checks.
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bicomplex.hpp"

namespace cdg {

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Something that should hold mathematically did not (e.g. no section exists
// where one was declared).
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { FiniteExact, TruncationStabilized, Inconclusive };
std::string method_name(Method m);

struct HomologyReport {
  Method method = Method::FiniteExact;
  GradingGroup grading;
  std::map<Degree, std::size_t> table;
  int t1 = 0, t2 = 0;  // truncations compared (first kind)
  std::vector<std::string> notes;
  // (homological weight, internal degree) -> dim, when the bicomplex splits by weight
  std::map<std::pair<int, Degree>, std::size_t> weights;

  std::size_t total() const;
  // "k", "k^2", "k(odd)", "0", or a sum of such terms
  std::string short_form() const;
  std::string text() const;
  bool same_table(const HomologyReport& o) const;
};

// Jacobson radical of the graded algebra underlying B (differential ignored).
std::vector<Vec> graded_radical(const CdgCategory& b);

struct GradedCover {
  std::vector<FreeGenerator> generators;
  std::vector<Vec> images;  // image of each generator in the module
  CdgModule free;            // free graded module on the generators
  ModuleMap map;             // free -> module, B-linear of degree zero
};
// Surjection from a free graded module, generators chosen through the top M / rad M.
GradedCover graded_cover(const CdgModule& m);
// A B-linear degree-zero section of the cover, if the underlying module is projective.
std::optional<ModuleMap> splitting(const GradedCover& cover, const CdgModule& m);
bool is_graded_projective(const CdgModule& m);

struct Resolution {
  CdgModule target;
  std::vector<CdgModule> terms;  // terms[0] -> target, terms[k] -> terms[k-1]
  std::vector<ModuleMap> maps;
  bool complete = false;
  int depth = 0;  // number of stages built
  std::vector<std::size_t> kernel_dims;
};
Resolution projective_resolution(const CdgModule& m, int max_depth = 20);

HomologyReport tor_second_kind(const CdgModule& n, const CdgModule& m, int max_depth = 20);
HomologyReport ext_second_kind(const CdgModule& l, const CdgModule& m, int max_depth = 20);
// m: module over tensor(B, opposite(B)); null means the diagonal.
HomologyReport hh_second_kind(const CategoryPtr& b, const CdgModule* m, bool cohomology, int max_depth = 20);

HomologyReport tor_first_kind(const CdgModule& n, const CdgModule& m, int t);
HomologyReport ext_first_kind(const CdgModule& l, const CdgModule& m, int t);
HomologyReport hh_first_kind(const CategoryPtr& c, const CdgModule* m, bool cohomology, int t);

struct Comparison {
  bool equal = false;
  HomologyReport left, right;
  std::vector<std::string> notes;
  std::string line() const;  // "EQUAL: k vs k" or "UNEQUAL: ..."
};
Comparison compare_hh_B_vs_C(const CategoryPtr& b, const std::vector<CdgModule>& objects);
Comparison curvature_shift_check(const CategoryPtr& b, const Scalar& c);
Comparison pushforward_compat_check(const GradingMorphism& phi, const CategoryPtr& b, int t);

struct ProbeReport {
  bool exact = true;
  std::vector<std::string> lines;
};
// Exactness of the delta columns of bar and cobar bicomplexes in weights [1, t-1].
ProbeReport delta_acyclicity_probe(const CategoryPtr& b, const CdgModule& n, const CdgModule& m, int t);

// The tensor category B x B^op with its factors kept alive.
struct Enveloping {
  CategoryPtr b, op, env;
};
Enveloping enveloping(const CategoryPtr& b);

}  // namespace cdg
