#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "skewcalc/qpoly.hpp"

namespace skewcalc {

enum class FieldKind { Rational, Prime, RatFunc, Cyclotomic };

/// Coefficient field. `modulus` is p for Prime and ell for Cyclotomic, 0 otherwise.
struct FieldDescriptor {
  FieldKind kind = FieldKind::Rational;
  std::uint64_t modulus = 0;

  static FieldDescriptor rational() { return {FieldKind::Rational, 0}; }
  /// Throws BAD_PARAMS unless p is prime.
  static FieldDescriptor prime(std::uint64_t p);
  static FieldDescriptor ratfunc() { return {FieldKind::RatFunc, 0}; }
  /// Throws BAD_PARAMS unless ell >= 2.
  static FieldDescriptor cyclotomic(std::uint64_t ell);

  bool has_q() const noexcept { return kind == FieldKind::RatFunc || kind == FieldKind::Cyclotomic; }
  std::uint64_t characteristic() const noexcept { return kind == FieldKind::Prime ? modulus : 0; }
  /// Keyword form used by the file grammar: rational, gf(P), ratfunc(q), cyclotomic(L).
  std::string to_string() const;

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
    return a.kind == b.kind && a.modulus == b.modulus;
  }
  friend bool operator!=(const FieldDescriptor& a, const FieldDescriptor& b) { return !(a == b); }
};

bool is_prime_u64(std::uint64_t n);

/// Reduced fraction num/den of polynomials in q, den monic, gcd(num, den) = 1.
struct RatFunc {
  QPoly num;
  QPoly den{mpq_class(1)};
};

/// Immutable exact field element in canonical form.
class Scalar {
 public:
  using Value = std::variant<mpq_class, std::uint64_t, RatFunc, QPoly>;

  /// Zero of the rational field; exists so containers can default-construct.
  Scalar() : field_(FieldDescriptor::rational()), value_(mpq_class(0)) {}

  static Scalar zero(const FieldDescriptor& f);
  static Scalar one(const FieldDescriptor& f);
  static Scalar from_int(const FieldDescriptor& f, long n);
  static Scalar from_integer(const FieldDescriptor& f, const mpz_class& n);
  static Scalar from_rational(const FieldDescriptor& f, const mpq_class& r);
  /// The distinguished scalar q; FIELD_MISMATCH for fields without q.
  static Scalar q(const FieldDescriptor& f);
  static Scalar from_qpoly(const FieldDescriptor& f, const QPoly& p);
  static Scalar from_ratfunc(const QPoly& num, const QPoly& den);

  const FieldDescriptor& field() const noexcept { return field_; }
  const Value& value() const noexcept { return value_; }

  bool is_zero() const;
  bool is_one() const;
  /// True if the value lies in the prime subfield (rational constants, or any residue).
  bool is_constant() const;
  /// The value as a rational when it is constant; throws FIELD_MISMATCH otherwise.
  mpq_class to_rational() const;

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(long n) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Parseable rendering in the coefficient grammar.
  std::string to_string() const;
  /// True when the rendering has a top-level sum and must be parenthesized as a factor.
  bool needs_parens() const;
  /// Canonical form of an arbitrary value; idempotent on canonical input.
  Scalar canonicalized() const;

 private:
  Scalar(FieldDescriptor f, Value v) : field_(f), value_(std::move(v)) {}
  static RatFunc canonical_ratfunc(QPoly num, QPoly den);
  void check_same_field(const Scalar& b) const;

  FieldDescriptor field_;
  Value value_;
};

}  // namespace skewcalc
