#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skewcalc/error.hpp"
#include "skewcalc/expr.hpp"
#include "skewcalc/presentation.hpp"

namespace skewcalc {

struct ValidationOptions {
  /// Degree bound for exhibiting inverses of tower automorphisms.
  int sigma_degree_bound = 3;
};

struct ValidationReport {
  bool pass = true;
  std::optional<ErrorCode> code;
  std::string witness;
  /// Number of overlap ambiguities checked by the diamond test.
  std::size_t overlaps_checked = 0;
  /// "BOUNDED_CERTIFIED" when every tower automorphism has an exhibited
  /// inverse on generators, "NONE" without a tower.
  std::string sigma_status = "NONE";
};

/// Runs all presentation checks and reports the first failure without throwing.
ValidationReport validate_presentation(const Presentation& p, const ValidationOptions& opts = {});

class Element;

/// A validated presentation together with its normal-form rewriting engine.
/// Immutable after construction; the product caches are internally locked.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  /// Validates and throws the failing check's error code.
  static std::shared_ptr<const Algebra> create(Presentation p, const ValidationOptions& opts = {});
  /// Structural checks only; used while validating.
  static std::shared_ptr<const Algebra> create_unchecked(Presentation p);

  const Presentation& presentation() const noexcept { return p_; }
  const FieldDescriptor& field() const noexcept { return p_.field; }
  std::size_t size() const noexcept { return p_.gens.size(); }
  const ValidationReport& validation() const noexcept { return report_; }

  const Scalar& leading(int j, int i) const { return lead_[j][i]; }
  const Terms& tail(int j, int i) const { return tail_[j][i]; }
  /// Right-hand side of g_i * g_{i+1}, or nullptr.
  const Terms* reduction(int i) const;

  bool is_valid_monomial(const Monomial& m) const;
  bool is_normal(const Monomial& m) const;
  Monomial letter(int i, int sign) const;

  /// Normal form of m * g_i^{sign}.
  Terms mul_letter(const Monomial& m, int i, int sign) const;
  Terms mul_mono(const Monomial& a, const Monomial& b) const;
  Terms mul(const Terms& a, const Terms& b) const;

  Element zero() const;
  Element one() const;
  Element scalar(const Scalar& c) const;
  Element gen(int i) const;
  /// Throws VALIDATION_ERROR for unknown names.
  Element gen(const std::string& name) const;
  Element gen_inverse(int i) const;
  Element monomial(const Monomial& m) const;
  Element element(Terms t) const;
  /// Evaluates an expression over generator names and q.
  Element evaluate(const ExprNode& n) const;
  Element parse(const std::string& text) const;

  /// All normal monomials of degree <= d in canonical order.
  std::vector<Monomial> filtration_basis(int d) const;

 private:
  explicit Algebra(Presentation p);
  void build_tables();

  Presentation p_;
  ValidationReport report_;
  std::vector<std::vector<Scalar>> lead_;
  std::vector<std::vector<Terms>> tail_;
  std::vector<std::optional<Terms>> reduction_;

  mutable std::mutex cache_mu_;
  mutable std::unordered_map<Monomial, Terms, MonomialHash> letter_cache_;
  mutable std::unordered_map<Monomial, Terms, MonomialHash> mono_cache_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Canonical normal-form element of an algebra.
class Element {
 public:
  Element() = default;
  Element(AlgebraPtr alg, Terms t);

  const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
  const Algebra& algebra() const { return *alg_; }
  const Terms& terms() const noexcept { return t_; }
  bool is_zero() const noexcept { return t_.empty(); }
  /// Maximum term degree; -1 stands for minus infinity on zero.
  long degree() const { return terms_degree(t_); }
  bool is_scalar() const;
  Scalar coeff(const Monomial& m) const;
  std::string to_string() const;

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& c, const Element& a);
  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  void check_same(const Element& b) const;
  AlgebraPtr alg_;
  Terms t_;
};

Element commutator(const Element& a, const Element& b);
/// Non-negative powers of any element; negative powers of unit monomials.
Element power(const Element& a, long n);
/// Inverse of c * m with m supported on invertible generators.
Element unit_monomial_inverse(const Element& a);
/// True if `a` is a nonzero scalar times a monomial in invertible generators.
bool is_unit_monomial(const Element& a);

/// Evaluates an expression as a combination of ordered monomials without
/// rewriting; products must already be in ascending generator order.
Terms parse_normal_terms(const Presentation& p, const ExprNode& n);

/// Words compared by length then lexicographically on letters (index, sign).
bool word_less(const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b);
std::vector<std::pair<int, int>> monomial_word(const Monomial& m);

}  // namespace skewcalc
