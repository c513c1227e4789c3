#pragma once

// Shared helpers for the test binaries: seeded generators, the family
// catalog used by property suites, and fixture paths.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "skewcalc/algebra.hpp"
#include "skewcalc/families.hpp"

namespace testing_support {

using namespace skewcalc;

/// SKEWCALC_TEST_SEED overrides the fixed default.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("SKEWCALC_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20260101;
}

inline std::string fixture_path(const std::string& name) { return std::string(SKEWCALC_FIXTURE_DIR) + "/" + name; }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

  /// Small nonzero scalar; involves q when the field has one.
  Scalar scalar(const FieldDescriptor& f) {
    long n = uniform(-3, 3);
    if (n == 0) n = 1;
    Scalar c = Scalar::from_int(f, n);
    if (f.has_q() && coin()) c = c * Scalar::q(f).pow(uniform(-2, 2));
    if (f.kind == FieldKind::Rational && coin()) c = c / Scalar::from_int(f, uniform(1, 4));
    if (c.is_zero()) c = Scalar::one(f);
    return c;
  }

  Element element(const Algebra& alg, int max_deg, int max_terms) {
    const auto basis = alg.filtration_basis(max_deg);
    Terms t;
    const long k = uniform(1, max_terms);
    for (long i = 0; i < k; ++i)
      add_term(t, basis[static_cast<std::size_t>(uniform(0, static_cast<long>(basis.size()) - 1))], scalar(alg.field()));
    return alg.element(std::move(t));
  }

 private:
  std::mt19937_64 rng_;
};

struct NamedAlgebra {
  std::string label;
  AlgebraPtr alg;
};

/// One representative per built-in family, plus a root-of-unity torus and an Ore tower.
inline std::vector<NamedAlgebra> family_catalog() {
  const auto R = FieldDescriptor::ratfunc();
  const auto Q = FieldDescriptor::rational();
  const Scalar q = Scalar::q(R);
  std::vector<NamedAlgebra> out;
  out.push_back({"POLY(3)", build_family(poly_spec(3))});
  out.push_back({"LAURENT(2)", build_family(laurent_spec(2))});
  out.push_back({"SKEW_POLY(3)", build_family(skew_poly_spec({{Scalar::one(Q), Scalar::from_int(Q, -1), Scalar::from_int(Q, 2)},
                                                              {Scalar::from_int(Q, -1), Scalar::one(Q), Scalar::from_rational(Q, mpq_class(1, 3))},
                                                              {Scalar::from_rational(Q, mpq_class(1, 2)), Scalar::from_int(Q, 3), Scalar::one(Q)}}))});
  out.push_back({"QUANTUM_TORUS(2,q)", build_family(quantum_torus_spec(uniform_q_matrix(2, q)))});
  out.push_back({"QUANTUM_TORUS(2,l=3)", build_family(quantum_torus_root_spec(2, 3, {{0, 1}, {-1, 0}}))});
  out.push_back({"WEYL1", build_family(weyl1_spec())});
  out.push_back({"QUANTUM_WEYL1(q)", build_family(quantum_weyl1_spec(q))});
  out.push_back({"LOCALIZED_QWEYL1(q)", build_family(localized_qweyl1_spec(q))});
  out.push_back({"LOCALIZED_QWEYL1(l=3)", build_family(localized_qweyl1_spec(Scalar::q(FieldDescriptor::cyclotomic(3))))});
  out.push_back({"MINUS_ONE_PLANE", build_family(minus_one_plane_spec())});
  out.push_back({"GWA(h-1,q)", build_family(gwa_spec({{1, Scalar::one(R)}, {0, Scalar::from_int(R, -1)}}, q))});
  out.push_back({"QUANTUM_WEYL(2)", build_family(finite_rank_quantum_weyl_spec({q, q * q}))});
  return out;
}

}  // namespace testing_support
