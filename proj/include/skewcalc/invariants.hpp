#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "skewcalc/algebra.hpp"

namespace skewcalc {

struct CenterBasis {
  int degree_bound = 0;
  /// Reduced echelon basis, ordered by leading monomial.
  std::vector<Element> basis;
  /// "monomial" when every basis element is a single monomial.
  std::string structure;
};

/// Exact basis of {f : deg f <= d, [f, g] = 0 for every generator g}.
CenterBasis center_bounded(const Algebra& alg, int d);

struct TorusCenter {
  /// Rows of the Hermite normal form of the central sublattice L.
  std::vector<std::vector<mpz_class>> basis;
  mpz_class index;
  bool contains(const std::vector<long>& u) const;
};

/// Central sublattice of the quantum torus with q_ij = zeta_ell^{a_ij}:
/// L = {u : sum_j a_ij u_j = 0 mod ell for every i}.
TorusCenter center_torus(int n, std::uint64_t ell, const std::vector<std::vector<long>>& a);

/// Canonical row Hermite normal form: upper triangular, positive pivots,
/// entries above each pivot reduced into [0, pivot). Zero rows removed.
std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> rows);

struct GrowthTable {
  std::vector<std::size_t> dims;
  std::string gen_space;
  bool exact = true;
};

/// dims[n] = dim V^n for V = span(1, generators, inverses of invertible generators).
GrowthTable growth_dims(const Algebra& alg, int N, std::size_t ceiling = 200000);

struct GkEstimate {
  /// "finite-difference" when the tail window is exactly polynomial, else "log-log".
  std::string method;
  /// Polynomial degree, or the log-log slope.
  double estimate = 0;
  std::optional<int> snapped;
  double slope = 0;
  double residual = 0;
  std::size_t window_start = 0;
  std::size_t window_end = 0;
};

/// Windowed growth estimate over the tail half of the table (at least 6 entries).
/// Snaps to an integer when within 0.25.
GkEstimate gk_estimate(const GrowthTable& table);

struct LocalityResult {
  bool certified = false;  // TRUE vs UNKNOWN
  std::vector<Element> witness;
  std::vector<long> degree_trace;
};

/// Applies the endomorphism given by generator images to an element.
Element apply_endomorphism(const Algebra& alg, const std::vector<Element>& images, const Element& f);
/// Applies a derivation (sigma = identity) given by generator images.
Element apply_derivation(const Algebra& alg, const std::vector<Element>& images, const Element& f);

/// Searches for a sigma-stable finite-dimensional space containing 1 and the generators.
LocalityResult is_locally_algebraic(const Algebra& alg, const std::vector<Element>& sigma, int bound);

enum class Tri { True, False, Unknown };
std::string tri_name(Tri t);

struct NilpotencyResult {
  Tri status = Tri::Unknown;
  /// For TRUE: smallest k with delta^k killing every generator.
  int k = 0;
  /// For FALSE: generator and cycle indices i < j with delta^j(g) = c delta^i(g) != 0.
  std::string cycle;
  std::vector<std::vector<long>> degree_trace;
};

NilpotencyResult is_locally_nilpotent(const Algebra& alg, const std::vector<Element>& delta, int bound);

enum class StratKind { Finite, Ore };

struct StratTower {
  std::vector<StratKind> steps;
};

int stratiform_length(const StratTower& t);
StratTower tower_compose(const StratTower& t, int ore_steps);
/// Tower recorded by the STRATIFORM flag (empty tower without the flag).
StratTower strat_tower(const Presentation& p);

}  // namespace skewcalc
