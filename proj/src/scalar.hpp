#pragma once
// Exact scalars over Q or F_p. Rationals keep a machine-word fast path and
// spill into GMP when a numerator or denominator outgrows 63 bits.
#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace cdg {

class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);
  static Field parse(const std::string& s);  // "Q" or "Fp:<p>"

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return p_ ? "Fp:" + std::to_string(p_) : "Q"; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_ = 0;
};

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : n_(v) {}  // NOLINT: integers convert implicitly
  Scalar(long v) : n_(v) {}
  Scalar(long long v) : n_(v) {}
  Scalar(const mpq_class& q);
  static Scalar rational(std::int64_t num, std::int64_t den);
  static Scalar residue(std::int64_t v, std::uint32_t p);
  // integer or "a/b" string, interpreted in the given field
  static Scalar parse(const std::string& s, const Field& f);
  static Scalar from_int(std::int64_t v, const Field& f);

  Scalar(const Scalar& o) : n_(o.n_), d_(o.d_), p_(o.p_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      n_ = o.n_; d_ = o.d_; p_ = o.p_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && (p_ || d_ == 1); }
  bool is_prime_field() const { return p_ != 0; }
  std::uint32_t modulus() const { return p_; }

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Coerce into the given field (rationals reduce mod p).
  Scalar in(const Field& f) const;
  mpq_class to_mpq() const;  // rationals only
  std::string str() const;   // "n" or "n/d"; residues print as integers

 private:
  void normalize_small();
  Scalar as_residue(std::uint32_t p) const;
  void from_mpq(mpq_class q);

  std::int64_t n_ = 0;  // numerator, or residue when p_ != 0
  std::int64_t d_ = 1;  // positive denominator (rationals)
  std::uint32_t p_ = 0;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace cdg
