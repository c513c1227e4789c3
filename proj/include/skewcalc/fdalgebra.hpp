#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewcalc/invariants.hpp"
#include "skewcalc/linalg.hpp"
#include "skewcalc/presentation.hpp"

namespace skewcalc {

/// Commutative, associative, unital algebra given by structure constants:
/// e_i * e_j = sum_k table[i][j][k] e_k.
class FiniteDimAlgebra {
 public:
  /// Checks commutativity, associativity and the unit; VALIDATION_ERROR names the failing basis triple.
  static FiniteDimAlgebra create(FieldDescriptor field, std::vector<std::string> names,
                                 std::vector<std::vector<Vec>> table, Vec unit);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const Vec& unit() const noexcept { return unit_; }
  const Vec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }

  Vec zero() const { return zero_vec(field_, dim()); }
  Vec basis_vector(std::size_t i) const;
  Vec scalar(const Scalar& c) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec scale(const Scalar& c, const Vec& a) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec power(const Vec& a, unsigned long n) const;
  /// Matrix of multiplication by a; column j holds a * e_j.
  Mat mult_matrix(const Vec& a) const;
  Scalar trace(const Vec& a) const;
  std::optional<Vec> inverse(const Vec& a) const;
  bool is_unit(const Vec& a) const { return inverse(a).has_value(); }

  /// Parses an expression over the basis names (the name "1" is the unit).
  Vec parse(const std::string& text) const;
  std::string to_string(const Vec& v) const;

 private:
  FieldDescriptor field_;
  std::vector<std::string> names_;
  std::vector<std::vector<Vec>> table_;
  Vec unit_;
};

/// k^n with orthogonal idempotent basis e1..en.
FiniteDimAlgebra fd_split(const FieldDescriptor& field, std::size_t n);
/// k[var]/(f) with f given by coefficients, constant first; f is made monic.
FiniteDimAlgebra fd_univariate_quotient(const FieldDescriptor& field, const std::string& var, const std::vector<Scalar>& f);
/// k[vars]/I for a monomial ideal I, given by its standard monomials (an order ideal).
FiniteDimAlgebra fd_monomial_quotient(const FieldDescriptor& field, const std::vector<std::string>& vars,
                                      const std::vector<std::vector<int>>& standard);

struct NilradicalResult {
  std::vector<Vec> basis;
  std::size_t quotient_dim = 0;
  /// "trace-form" in characteristic 0, "frobenius-kernel" over gf(p).
  std::string method;
  bool certified = true;
  std::string note;
};

/// Basis of N(a); every basis element is checked nilpotent before returning.
NilradicalResult nilradical(const FiniteDimAlgebra& a);
bool is_vnr(const FiniteDimAlgebra& a);

struct LocalFactor {
  Vec idempotent;
  FiniteDimAlgebra algebra;
  std::size_t residue_degree = 1;
  std::string certificate;
};

struct LocalDecomposition {
  /// DECOMPOSED when every residue field is the base field, NOT_DECOMPOSED when
  /// some local factor has a proper extension as residue field.
  std::string status;
  std::vector<LocalFactor> factors;
  bool sum_is_one = false;
  bool orthogonal = false;
  bool idempotent = false;
};

/// Splits into local factors via coprime factors of minimal polynomials.
/// FACTORIZATION_INCOMPLETE when a factor can neither be split nor certified local.
LocalDecomposition local_decomposition(const FiniteDimAlgebra& a, std::uint64_t seed = 1);

struct UnitsResult {
  Tri status = Tri::Unknown;
  std::string method;
  std::vector<std::string> witness;
};

UnitsResult units_generated(const FiniteDimAlgebra& a);
/// Structural answer for catalog families (Laurent: TRUE, polynomial: FALSE).
UnitsResult units_generated(const Presentation& p);

struct GeneratingSetResult {
  bool generates = false;
  std::vector<bool> recovered;
  std::size_t span_dim = 0;
};

/// Whether t_1..t_n lie in the subalgebra of b[t_1..t_n] generated by b and f_list,
/// truncated at total t-degree degree_cap. Polynomials use basis names of b and t1..tn
/// (plain t when n = 1).
GeneratingSetResult verify_generating_set(const FiniteDimAlgebra& b, int n, const std::vector<std::string>& f_list,
                                          int degree_cap);

}  // namespace skewcalc
