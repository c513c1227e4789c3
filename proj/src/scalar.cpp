#include "skewcalc/scalar.hpp"

#include <sstream>

#include "skewcalc/error.hpp"

namespace skewcalc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "division by zero in gf(" + std::to_string(p) + ")");
  return powmod(a, p - 2, p);
}

u64 reduce_mpz(const mpz_class& n, u64 p) {
  mpz_class r = n % mpz_class(std::to_string(p));
  if (r < 0) r += mpz_class(std::to_string(p));
  return std::stoull(r.get_str());
}

u64 reduce_mpq(const mpq_class& x, u64 p) {
  const u64 num = reduce_mpz(x.get_num(), p);
  const u64 den = reduce_mpz(x.get_den(), p);
  return mulmod(num, invmod(den, p), p);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 s : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % s == 0) return n == s;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are deterministic for all 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldDescriptor FieldDescriptor::prime(u64 p) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::BadParams, "gf(" + std::to_string(p) + "): modulus is not prime");
  return {FieldKind::Prime, p};
}

FieldDescriptor FieldDescriptor::cyclotomic(u64 ell) {
  if (ell < 2) throw Error(ErrorCode::BadParams, "cyclotomic order must be at least 2");
  return {FieldKind::Cyclotomic, ell};
}

std::string FieldDescriptor::to_string() const {
  switch (kind) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Prime: return "gf(" + std::to_string(modulus) + ")";
    case FieldKind::RatFunc: return "ratfunc(q)";
    case FieldKind::Cyclotomic: return "cyclotomic(" + std::to_string(modulus) + ")";
  }
  return "?";
}

RatFunc Scalar::canonical_ratfunc(QPoly num, QPoly den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) return RatFunc{QPoly(), QPoly(mpq_class(1))};
  if (!den.is_constant()) {
    if (den.is_monomial()) {
      const std::size_t k = std::min(num.valuation(), static_cast<std::size_t>(den.degree()));
      if (k > 0) {
        num = num.shift_down(k);
        den = den.shift_down(k);
      }
    } else {
      QPoly g = QPoly::gcd(num, den);
      if (!g.is_one()) {
        QPoly quo, r;
        QPoly::divmod(num, g, quo, r);
        num = quo;
        QPoly::divmod(den, g, quo, r);
        den = quo;
      }
    }
  }
  const mpq_class lc = den.leading();
  if (lc != 1) {
    const mpq_class inv = mpq_class(1) / lc;
    num *= inv;
    den *= inv;
  }
  return RatFunc{std::move(num), std::move(den)};
}

Scalar Scalar::zero(const FieldDescriptor& f) { return from_int(f, 0); }
Scalar Scalar::one(const FieldDescriptor& f) { return from_int(f, 1); }
Scalar Scalar::from_int(const FieldDescriptor& f, long n) { return from_integer(f, mpz_class(n)); }
Scalar Scalar::from_integer(const FieldDescriptor& f, const mpz_class& n) { return from_rational(f, mpq_class(n)); }

Scalar Scalar::from_rational(const FieldDescriptor& f, const mpq_class& r0) {
  mpq_class r = r0;
  r.canonicalize();
  switch (f.kind) {
    case FieldKind::Rational: return Scalar(f, r);
    case FieldKind::Prime: return Scalar(f, reduce_mpq(r, f.modulus));
    case FieldKind::RatFunc: return Scalar(f, RatFunc{QPoly(r), QPoly(mpq_class(1))});
    case FieldKind::Cyclotomic: return Scalar(f, QPoly(r));
  }
  throw Error(ErrorCode::Internal, "unknown field kind");
}

Scalar Scalar::q(const FieldDescriptor& f) {
  if (!f.has_q()) throw Error(ErrorCode::FieldMismatch, "symbol q is not available in field " + f.to_string());
  return from_qpoly(f, QPoly::variable());
}

Scalar Scalar::from_qpoly(const FieldDescriptor& f, const QPoly& p) {
  switch (f.kind) {
    case FieldKind::RatFunc: return Scalar(f, RatFunc{p, QPoly(mpq_class(1))});
    case FieldKind::Cyclotomic: return Scalar(f, QPoly::rem(p, cyclotomic_polynomial(f.modulus)));
    default:
      if (!p.is_constant()) throw Error(ErrorCode::FieldMismatch, "polynomial in q outside a field with q");
      return from_rational(f, p.coeff(0));
  }
}

Scalar Scalar::from_ratfunc(const QPoly& num, const QPoly& den) {
  return Scalar(FieldDescriptor::ratfunc(), canonical_ratfunc(num, den));
}

void Scalar::check_same_field(const Scalar& b) const {
  if (field_ != b.field_)
    throw Error(ErrorCode::FieldMismatch, "operands in " + field_.to_string() + " and " + b.field_.to_string());
}

bool Scalar::is_zero() const {
  switch (field_.kind) {
    case FieldKind::Rational: return std::get<mpq_class>(value_) == 0;
    case FieldKind::Prime: return std::get<u64>(value_) == 0;
    case FieldKind::RatFunc: return std::get<RatFunc>(value_).num.is_zero();
    case FieldKind::Cyclotomic: return std::get<QPoly>(value_).is_zero();
  }
  return false;
}

bool Scalar::is_one() const {
  switch (field_.kind) {
    case FieldKind::Rational: return std::get<mpq_class>(value_) == 1;
    case FieldKind::Prime: return std::get<u64>(value_) == 1;
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      return r.num.is_one() && r.den.is_one();
    }
    case FieldKind::Cyclotomic: return std::get<QPoly>(value_).is_one();
  }
  return false;
}

bool Scalar::is_constant() const {
  switch (field_.kind) {
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      return r.num.is_constant() && r.den.is_one();
    }
    case FieldKind::Cyclotomic: return std::get<QPoly>(value_).is_constant();
    default: return true;
  }
}

mpq_class Scalar::to_rational() const {
  if (!is_constant()) throw Error(ErrorCode::FieldMismatch, "scalar " + to_string() + " is not a constant");
  switch (field_.kind) {
    case FieldKind::Rational: return std::get<mpq_class>(value_);
    case FieldKind::Prime: return mpq_class(mpz_class(std::to_string(std::get<u64>(value_))));
    case FieldKind::RatFunc: return std::get<RatFunc>(value_).num.coeff(0);
    case FieldKind::Cyclotomic: return std::get<QPoly>(value_).coeff(0);
  }
  return 0;
}

Scalar Scalar::operator-() const {
  switch (field_.kind) {
    case FieldKind::Rational: return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
    case FieldKind::Prime: {
      const u64 v = std::get<u64>(value_);
      return Scalar(field_, v == 0 ? u64{0} : field_.modulus - v);
    }
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      return Scalar(field_, RatFunc{-r.num, r.den});
    }
    case FieldKind::Cyclotomic: return Scalar(field_, -std::get<QPoly>(value_));
  }
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  const FieldDescriptor& f = a.field_;
  switch (f.kind) {
    case FieldKind::Rational:
      return Scalar(f, mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_)));
    case FieldKind::Prime: {
      const u64 p = f.modulus;
      const u64 x = std::get<u64>(a.value_), y = std::get<u64>(b.value_);
      return Scalar(f, x >= p - y ? x - (p - y) : x + y);
    }
    case FieldKind::RatFunc: {
      const auto& x = std::get<RatFunc>(a.value_);
      const auto& y = std::get<RatFunc>(b.value_);
      if (x.num.is_zero()) return b;
      if (y.num.is_zero()) return a;
      if (x.den == y.den) {
        if (x.den.is_one()) return Scalar(f, RatFunc{x.num + y.num, x.den});
        return Scalar(f, Scalar::canonical_ratfunc(x.num + y.num, x.den));
      }
      return Scalar(f, Scalar::canonical_ratfunc(x.num * y.den + y.num * x.den, x.den * y.den));
    }
    case FieldKind::Cyclotomic: return Scalar(f, std::get<QPoly>(a.value_) + std::get<QPoly>(b.value_));
  }
  throw Error(ErrorCode::Internal, "unknown field kind");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  const FieldDescriptor& f = a.field_;
  switch (f.kind) {
    case FieldKind::Rational:
      return Scalar(f, mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_)));
    case FieldKind::Prime: return Scalar(f, mulmod(std::get<u64>(a.value_), std::get<u64>(b.value_), f.modulus));
    case FieldKind::RatFunc: {
      const auto& x = std::get<RatFunc>(a.value_);
      const auto& y = std::get<RatFunc>(b.value_);
      if (x.num.is_zero() || y.num.is_zero()) return Scalar::zero(f);
      if (x.den.is_one() && y.den.is_one()) return Scalar(f, RatFunc{x.num * y.num, x.den});
      return Scalar(f, Scalar::canonical_ratfunc(x.num * y.num, x.den * y.den));
    }
    case FieldKind::Cyclotomic:
      return Scalar(f, QPoly::rem(std::get<QPoly>(a.value_) * std::get<QPoly>(b.value_), cyclotomic_polynomial(f.modulus)));
  }
  throw Error(ErrorCode::Internal, "unknown field kind");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  switch (field_.kind) {
    case FieldKind::Rational: return Scalar(field_, mpq_class(mpq_class(1) / std::get<mpq_class>(value_)));
    case FieldKind::Prime: return Scalar(field_, invmod(std::get<u64>(value_), field_.modulus));
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      return Scalar(field_, canonical_ratfunc(r.den, r.num));
    }
    case FieldKind::Cyclotomic: {
      QPoly g;
      QPoly inv = QPoly::ext_gcd_inverse(std::get<QPoly>(value_), cyclotomic_polynomial(field_.modulus), g);
      if (!g.is_one()) throw Error(ErrorCode::DivisionByZero, "non-invertible cyclotomic element");
      return Scalar(field_, inv);
    }
  }
  throw Error(ErrorCode::Internal, "unknown field kind");
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  return a * b.inverse();
}

Scalar Scalar::pow(long n) const {
  Scalar base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Scalar r = one(field_);
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  switch (a.field_.kind) {
    case FieldKind::Rational: return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
    case FieldKind::Prime: return std::get<u64>(a.value_) == std::get<u64>(b.value_);
    case FieldKind::RatFunc: {
      const auto& x = std::get<RatFunc>(a.value_);
      const auto& y = std::get<RatFunc>(b.value_);
      return x.num == y.num && x.den == y.den;
    }
    case FieldKind::Cyclotomic: return std::get<QPoly>(a.value_) == std::get<QPoly>(b.value_);
  }
  return false;
}

std::string Scalar::to_string() const {
  switch (field_.kind) {
    case FieldKind::Rational: return rational_to_string(std::get<mpq_class>(value_));
    case FieldKind::Prime: return std::to_string(std::get<u64>(value_));
    case FieldKind::Cyclotomic: return std::get<QPoly>(value_).to_string();
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      if (r.den.is_one()) return r.num.to_string();
      std::string num = r.num.to_string();
      if (!r.num.is_monomial()) num = "(" + num + ")";
      std::string den = r.den.to_string();
      if (!r.den.is_monomial()) den = "(" + den + ")";
      return num + "/" + den;
    }
  }
  return "?";
}

bool Scalar::needs_parens() const {
  switch (field_.kind) {
    case FieldKind::Cyclotomic: {
      const auto& p = std::get<QPoly>(value_);
      return !p.is_zero() && !p.is_monomial();
    }
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      return r.den.is_one() && !r.num.is_zero() && !r.num.is_monomial();
    }
    default: return false;
  }
}

Scalar Scalar::canonicalized() const {
  switch (field_.kind) {
    case FieldKind::Rational: {
      mpq_class v = std::get<mpq_class>(value_);
      v.canonicalize();
      return Scalar(field_, v);
    }
    case FieldKind::Prime: return Scalar(field_, std::get<u64>(value_) % field_.modulus);
    case FieldKind::RatFunc: {
      const auto& r = std::get<RatFunc>(value_);
      return Scalar(field_, canonical_ratfunc(r.num, r.den));
    }
    case FieldKind::Cyclotomic:
      return Scalar(field_, QPoly::rem(std::get<QPoly>(value_), cyclotomic_polynomial(field_.modulus)));
  }
  return *this;
}

}  // namespace skewcalc
