#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewcalc/monomial.hpp"
#include "skewcalc/scalar.hpp"

namespace skewcalc {

struct GeneratorInfo {
  std::string name;
  bool invertible = false;
};

/// g_j * g_i = leading * g_i * g_j + tail, with j > i (0-based indices).
struct RewriteRule {
  int j = 0;
  int i = 0;
  Scalar leading;
  Terms tail;
};

/// Eliminated relation g_i * g_{i+1} = rhs for algebras whose basis is not the
/// full set of ordered monomials (localized quantum Weyl, generalized Weyl).
/// Normal monomials never contain both g_i and g_{i+1}.
struct ReductionRule {
  int i = 0;
  Terms rhs;
};

/// One Ore step t = gens[base_size] over gens[0..base_size).
struct OreStep {
  int base_size = 0;
  std::vector<Terms> sigma;
  std::vector<Terms> delta;
};

enum class Flag { Domain, Noetherian, Affine, Simple, Azumaya, MlFull, UnitsTrivial, Stratiform };

std::string flag_name(Flag f);
std::optional<Flag> flag_from_name(const std::string& name);

struct FlagEntry {
  Flag flag = Flag::Domain;
  int length = 0;  // STRATIFORM only
  std::string provenance;
};

enum class FamilyId {
  Poly,
  Laurent,
  SkewPoly,
  QuantumTorus,
  Weyl1,
  QuantumWeyl1,
  LocalizedQWeyl1,
  MinusOnePlane,
  Gwa,
  FiniteRankQWeyl,
};

std::string family_keyword(FamilyId id);
std::optional<FamilyId> family_from_keyword(const std::string& kw);

/// Parameters of a named family. Unused fields keep their defaults.
struct FamilySpec {
  FamilyId id = FamilyId::Poly;
  FieldDescriptor field;
  int n = 0;
  /// Commutation scalars q_ij for SKEW_POLY / QUANTUM_TORUS (n x n).
  std::vector<std::vector<Scalar>> Q;
  /// Root-of-unity data: q_ij = zeta_ell^{a_ij}; ell = 0 when absent.
  std::uint64_t ell = 0;
  std::vector<std::vector<long>> a;
  /// q for the quantum Weyl / GWA families.
  std::optional<Scalar> q;
  /// q_i for the finite-rank quantum Weyl algebra.
  std::vector<Scalar> q_list;
  /// GWA defining polynomial a(h) as exponent -> coefficient, exponents in {-1, 0, 1}.
  std::map<int, Scalar> gwa_a;
};

struct Presentation {
  std::string name;
  FieldDescriptor field;
  std::vector<GeneratorInfo> gens;
  /// Non-default descending rules; every other pair commutes.
  std::vector<RewriteRule> rules;
  std::vector<ReductionRule> reductions;
  std::vector<OreStep> tower;
  std::vector<FlagEntry> flags;
  std::optional<FamilySpec> family;
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return gens.size(); }
  std::vector<std::string> names() const;
  /// -1 when absent.
  int index_of(const std::string& name) const;
  bool has_flag(Flag f) const;
  const FlagEntry* find_flag(Flag f) const;
  void set_flag(Flag f, const std::string& provenance, int length = 0);
};

}  // namespace skewcalc
