#include "scalar.hpp"

#include <cctype>
#include <limits>
#include <numeric>

namespace cdg {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::int64_t mod_reduce(__int128 v, std::uint32_t p) {
  __int128 r = v % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r);
}

std::int64_t mod_pow(std::int64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1, x = static_cast<std::uint64_t>(b) % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

std::int64_t residue_of(const mpq_class& q, std::uint32_t p) {
  mpz_class n = q.get_num() % p, d = q.get_den() % p;
  std::int64_t nn = n.get_si(), dd = d.get_si();
  if (nn < 0) nn += p;
  if (dd < 0) dd += p;
  if (dd == 0) throw FieldError("denominator divisible by the characteristic");
  return static_cast<std::int64_t>(static_cast<__int128>(nn) * mod_pow(dd, p - 2, p) % p);
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) throw FieldError("Fp needs a prime p < 2^31");
  Field f;
  f.p_ = p;
  return f;
}

Field Field::parse(const std::string& s) {
  if (s == "Q") return rationals();
  // Accepted spellings of a prime field: Fp:5, F_5, F5.
  std::string digits;
  if (s.rfind("Fp:", 0) == 0)
    digits = s.substr(3);
  else if (s.rfind("F_", 0) == 0)
    digits = s.substr(2);
  else if (s.size() > 1 && s[0] == 'F' && std::isdigit(static_cast<unsigned char>(s[1])))
    digits = s.substr(1);
  if (!digits.empty()) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(digits);
    } catch (...) {
      throw FieldError("bad field '" + s + "'");
    }
    if (p >= (1ull << 31)) throw FieldError("Fp needs a prime p < 2^31");
    return prime(static_cast<std::uint32_t>(p));
  }
  throw FieldError("unknown field '" + s + "'");
}

Scalar::Scalar(const mpq_class& q) { from_mpq(q); }

void Scalar::from_mpq(mpq_class q) {
  q.canonicalize();
  p_ = 0;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    n_ = q.get_num().get_si();
    d_ = q.get_den().get_si();
    big_.reset();
  } else {
    n_ = 0;
    d_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw FieldError("zero denominator");
  Scalar s;
  s.n_ = num;
  s.d_ = den;
  s.normalize_small();
  return s;
}

Scalar Scalar::residue(std::int64_t v, std::uint32_t p) {
  Scalar s;
  s.p_ = p;
  s.n_ = mod_reduce(v, p);
  return s;
}

Scalar Scalar::from_int(std::int64_t v, const Field& f) {
  return f.is_rational() ? Scalar(static_cast<long long>(v)) : residue(v, f.characteristic());
}

Scalar Scalar::parse(const std::string& s, const Field& f) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw FieldError("bad scalar '" + s + "'");
  if (q.get_den() == 0) throw FieldError("zero denominator in '" + s + "'");
  return Scalar(q).in(f);
}

void Scalar::normalize_small() {
  if (d_ < 0) {
    n_ = -n_;
    d_ = -d_;
  }
  std::int64_t g = std::gcd(n_, d_);
  if (g > 1) {
    n_ /= g;
    d_ /= g;
  }
  if (n_ == 0) d_ = 1;
}

mpq_class Scalar::to_mpq() const {
  if (p_) throw FieldError("residue has no rational value");
  if (big_) return *big_;
  mpq_class q(static_cast<long>(n_), static_cast<unsigned long>(d_));
  q.canonicalize();
  return q;
}

Scalar Scalar::in(const Field& f) const {
  if (f.is_rational()) {
    if (p_) throw FieldError("cannot lift a residue to Q");
    return *this;
  }
  return as_residue(f.characteristic());
}

Scalar Scalar::as_residue(std::uint32_t p) const {
  if (p_) {
    if (p_ != p) throw FieldError("mixed characteristics");
    return *this;
  }
  if (big_) return residue(residue_of(*big_, p), p);
  std::int64_t dr = mod_reduce(d_, p);
  if (dr == 0) throw FieldError("denominator divisible by the characteristic");
  return residue(static_cast<__int128>(mod_reduce(n_, p)) * mod_pow(dr, p - 2, p) % p, p);
}

Scalar Scalar::operator-() const {
  Scalar r;
  if (p_) return residue(n_ ? p_ - n_ : 0, p_);
  if (big_) {
    r.from_mpq(-*big_);
    return r;
  }
  r.n_ = -n_;
  r.d_ = d_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  if (p_) return residue(mod_pow(n_, p_ - 2, p_), p_);
  if (big_) {
    Scalar r;
    r.from_mpq(1 / *big_);
    return r;
  }
  return rational(d_, n_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.p_ || b.p_) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    Scalar x = a.as_residue(p), y = b.as_residue(p);
    std::int64_t s = x.n_ + y.n_;
    if (s >= p) s -= p;
    return Scalar::residue(s, p);
  }
  if (!a.big_ && !b.big_) {
    if (a.d_ == 1 && b.d_ == 1) {
      __int128 s = static_cast<__int128>(a.n_) + b.n_;
      if (fits(s)) {
        Scalar r;
        r.n_ = static_cast<std::int64_t>(s);
        return r;
      }
    } else {
      __int128 num = static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_;
      __int128 den = static_cast<__int128>(a.d_) * b.d_;
      if (fits(num) && fits(den)) return Scalar::rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    }
  }
  Scalar r;
  r.from_mpq(a.to_mpq() + b.to_mpq());
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.p_ || b.p_) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    Scalar x = a.as_residue(p), y = b.as_residue(p);
    return Scalar::residue(static_cast<std::int64_t>(static_cast<__int128>(x.n_) * y.n_ % p), p);
  }
  if (!a.big_ && !b.big_) {
    __int128 num = static_cast<__int128>(a.n_) * b.n_;
    __int128 den = static_cast<__int128>(a.d_) * b.d_;
    if (fits(num) && fits(den)) {
      if (den == 1) {
        Scalar r;
        r.n_ = static_cast<std::int64_t>(num);
        return r;
      }
      return Scalar::rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    }
  }
  Scalar r;
  r.from_mpq(a.to_mpq() * b.to_mpq());
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ || b.p_) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    return a.as_residue(p).n_ == b.as_residue(p).n_;
  }
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  return a.to_mpq() == b.to_mpq();
}

std::string Scalar::str() const {
  if (p_) return std::to_string(n_);
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

}  // namespace cdg
