#pragma once
// Grading group data: the group of degrees, the parity form sigma and the
// distinguished degree "one" that differentials raise by.
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdg {

enum class GradingKind { Integer, ModTwo };

// A degree is a plain integer; in the Z/2 case it is kept reduced to {0,1}.
using Degree = std::int64_t;

class GradingGroup {
 public:
  constexpr explicit GradingGroup(GradingKind k = GradingKind::Integer) : kind_(k) {}

  static GradingGroup integers() { return GradingGroup(GradingKind::Integer); }
  static GradingGroup mod_two() { return GradingGroup(GradingKind::ModTwo); }
  static GradingGroup parse(const std::string& s);

  GradingKind kind() const { return kind_; }
  bool is_mod_two() const { return kind_ == GradingKind::ModTwo; }
  std::string name() const { return is_mod_two() ? "Z/2" : "Z"; }

  Degree one() const { return 1; }
  Degree normalize(Degree g) const {
    if (!is_mod_two()) return g;
    Degree r = g % 2;
    return r < 0 ? r + 2 : r;
  }
  Degree add(Degree a, Degree b) const { return normalize(a + b); }
  Degree neg(Degree a) const { return normalize(-a); }
  Degree embed_int(std::int64_t n) const { return normalize(n); }

  // sigma(a,b) in Z/2. Both shipped groups use the product of the parities.
  int sigma(Degree a, Degree b) const { return static_cast<int>(((a & 1) * (b & 1)) & 1); }
  int parity(Degree g) const { return sigma(one(), g); }
  // (-1)^{sigma(a,b)}
  int koszul_sign(Degree a, Degree b) const { return sigma(a, b) ? -1 : 1; }

  std::string degree_label(Degree g) const;

  friend bool operator==(const GradingGroup&, const GradingGroup&) = default;

 private:
  GradingKind kind_;
};

// A unital homomorphism of grading groups along which sigma pulls back.
class GradingMorphism {
 public:
  GradingGroup source() const { return src_; }
  GradingGroup target() const { return dst_; }
  Degree apply(Degree g) const { return dst_.normalize(g); }

  static GradingMorphism make(GradingGroup source, GradingGroup target);

 private:
  GradingMorphism(GradingGroup s, GradingGroup t) : src_(s), dst_(t) {}
  GradingGroup src_, dst_;
};

struct GradingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign_of_parity(int p) { return (p & 1) ? -1 : 1; }

}  // namespace cdg
