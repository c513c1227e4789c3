#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "skewcalc/scalar.hpp"

namespace skewcalc {

/// Exponent vector over the declared generators; negative entries only for
/// invertible generators.
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(std::size_t m) : e(m, 0) {}
  explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

  std::size_t size() const noexcept { return e.size(); }
  /// Sum of absolute exponents.
  long degree() const noexcept;
  bool is_one() const noexcept;
  /// Highest index with nonzero exponent, or -1.
  int top() const noexcept;
  /// Lowest index with nonzero exponent, or -1.
  int bottom() const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
  friend Monomial operator+(const Monomial& a, const Monomial& b);
};

/// Canonical term order: by degree, then earlier generators first within a
/// degree (x before y, x^2 before x*y).
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse linear combination with no zero coefficients.
using Terms = std::map<Monomial, Scalar, MonomialLess>;

void add_term(Terms& t, const Monomial& m, const Scalar& c);
void add_scaled(Terms& acc, const Terms& t, const Scalar& c);
Terms scale_terms(const Terms& t, const Scalar& c);
/// -1 for the empty combination.
long terms_degree(const Terms& t);

/// Renders "x^2*y*z^-1"; "1" for the empty monomial.
std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names);
/// Renders a combination highest degree first; "0" when empty.
std::string terms_to_string(const Terms& t, const std::vector<std::string>& names);

}  // namespace skewcalc
