#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace skewcalc {

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upward with no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const mpq_class& constant);
  explicit QPoly(std::vector<mpq_class> coeffs);

  static QPoly monomial(const mpq_class& coeff, std::size_t degree);
  static QPoly variable() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const;
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const mpq_class& leading() const { return coeffs_.back(); }
  mpq_class coeff(std::size_t k) const;
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  /// Multiplicity of 0 as a root (index of the lowest nonzero coefficient).
  std::size_t valuation() const;
  /// True when the polynomial is c*q^k for a single k.
  bool is_monomial() const;

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& rhs);
  QPoly& operator-=(const QPoly& rhs);
  QPoly& operator*=(const mpq_class& s);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const mpq_class& s) { return a *= s; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

  QPoly monic() const;
  /// Drops the lowest `k` coefficients, i.e. divides by q^k (caller ensures exactness).
  QPoly shift_down(std::size_t k) const;
  mpq_class eval(const mpq_class& x) const;

  /// Euclidean division; throws DIVISION_BY_ZERO when `divisor` is zero.
  static void divmod(const QPoly& a, const QPoly& divisor, QPoly& quotient, QPoly& remainder);
  static QPoly rem(const QPoly& a, const QPoly& divisor);
  /// Monic gcd; gcd(0, 0) = 0.
  static QPoly gcd(const QPoly& a, const QPoly& b);
  /// Returns g = gcd(a, b) (monic) and s with s*a = g mod b.
  static QPoly ext_gcd_inverse(const QPoly& a, const QPoly& modulus, QPoly& g);

  std::string to_string(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// The ell-th cyclotomic polynomial, cached.
const QPoly& cyclotomic_polynomial(unsigned long ell);

std::string rational_to_string(const mpq_class& r);

}  // namespace skewcalc
