#include "grading.hpp"

namespace cdg {

GradingGroup GradingGroup::parse(const std::string& s) {
  if (s == "Z") return integers();
  if (s == "Z/2" || s == "Z2") return mod_two();
  throw GradingError("unknown grading group '" + s + "'");
}

std::string GradingGroup::degree_label(Degree g) const {
  if (is_mod_two()) return normalize(g) ? "odd" : "even";
  return std::to_string(g);
}

GradingMorphism GradingMorphism::make(GradingGroup source, GradingGroup target) {
  // The only unital maps between Z and Z/2 are Z->Z, Z->Z/2, Z/2->Z/2.
  // Z/2 -> Z would have to send an element of order 2 to 1.
  if (source.is_mod_two() && !target.is_mod_two())
    throw GradingError("no unital homomorphism Z/2 -> Z");
  // sigma pulls back: parity of a reduced integer equals its parity in Z.
  for (Degree a = -3; a <= 3; ++a)
    for (Degree b = -3; b <= 3; ++b)
      if (source.sigma(a, b) != target.sigma(target.normalize(a), target.normalize(b)))
        throw GradingError("sigma does not pull back along the grading morphism");
  return GradingMorphism(source, target);
}

}  // namespace cdg
