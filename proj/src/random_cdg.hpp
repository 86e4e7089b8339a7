#pragma once
// Seeded random CDG-categories built from small templates, random strict
// isomorphisms (basis changes), random connections and free CDG-modules.
#include <random>
#include <string>

#include "module.hpp"

namespace cdg {

using Rng = std::mt19937_64;

struct RandomCategory {
  CategoryPtr category;
  std::string description;
};

struct RandomOptions {
  Field field;
  GradingGroup grading;
  std::size_t max_dim = 4;
  bool curved = true;         // allow connections and curvature shifts
  bool multi_object = true;   // allow the two-object template
};

RandomCategory random_category(Rng& rng, const RandomOptions& opt);

// A random homogeneous change of basis fixing the units, as a strict
// isomorphism b -> b'; the target is allocated here.
CdgFunctor random_basis_change(Rng& rng, const CategoryPtr& b);
// A random degree-one endomorphism per object (zero where none exists).
std::vector<Vec> random_connection(Rng& rng, const CdgCategory& b);

// Free CDG-module on one or two random generators.
CdgModule random_free_module(Rng& rng, const CategoryPtr& b, Side side, std::size_t max_gens = 1);

}  // namespace cdg
