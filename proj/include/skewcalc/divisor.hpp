#pragma once

#include <string>
#include <vector>

#include "skewcalc/algebra.hpp"
#include "skewcalc/linalg.hpp"

namespace skewcalc {

/// f = a * g * b with a, b scalar multiples of monomials.
struct SubwordHit {
  Element f;
  Element a;
  Element g;
  Element b;
  /// Re-checks the factorization by an independent multiplication.
  bool verify() const { return a * g * b == f; }
};

struct SubwordCaps {
  int max_deg_a = 1;
  int max_deg_b = 1;
};

/// Every hit f = m_a * g * m_b with monomials inside the caps and deg g <= degree_cap.
/// Throws NOT_A_DOMAIN without the DOMAIN flag or on a zero-divisor witness.
std::vector<SubwordHit> subword_search(const Algebra& alg, const Element& f, const SubwordCaps& caps, int degree_cap);

/// Span of the unital subalgebra generated by a set, truncated at a degree cap.
class BoundedSubalgebra {
 public:
  BoundedSubalgebra(const Algebra& alg, int degree_cap, std::size_t ceiling = 100000);

  /// Adjoins generators and re-closes. Returns the number of new dimensions.
  std::size_t add_generators(const std::vector<Element>& gens);
  bool contains(const Element& e) const { return span_.contains(e.terms()); }
  std::size_t dim() const { return span_.rank(); }
  /// Reduced echelon basis in canonical order.
  std::vector<Element> basis() const;

 private:
  void absorb(const Terms& v, std::vector<Terms>& frontier);
  const Algebra& alg_;
  int cap_;
  std::size_t ceiling_;
  Echelon span_;
  std::vector<Terms> vectors_;
  std::vector<Terms> gens_;
};

/// Basis of the subalgebra generated by S within degree_cap.
std::vector<Element> subalgebra_closure_bounded(const Algebra& alg, const std::vector<Element>& S, int degree_cap);

struct ClosureRound {
  std::vector<SubwordHit> new_subwords;
  std::size_t span_dim = 0;
};

enum class ClosureStatus { Full, Inconclusive };
std::string closure_status_name(ClosureStatus s);

struct ClosureCaps {
  int degree_cap = 4;
  int max_rounds = 4;
  SubwordCaps subword;
};

struct ClosureReport {
  std::vector<Element> F;
  ClosureCaps caps;
  std::vector<ClosureRound> rounds;
  ClosureStatus status = ClosureStatus::Inconclusive;
  std::vector<Element> certified_basis;
  std::string approximation =
      "subwords searched with monomial a, b on a spanning set of each certified span, truncated at the degree cap";
};

ClosureReport divisor_closure(const Algebra& alg, const std::vector<Element>& F, const ClosureCaps& caps);

struct ControllingResult {
  bool controlling = false;
  ClosureReport report;
};

ControllingResult is_controlling(const Algebra& alg, const std::vector<Element>& F, const ClosureCaps& caps);

}  // namespace skewcalc
