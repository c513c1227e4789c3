#pragma once

#include <map>
#include <vector>

#include "skewcalc/algebra.hpp"

namespace skewcalc {

/// Builds, validates and flags a named family. Throws BAD_PARAMS for invalid
/// parameters and UNSUPPORTED_GWA for GWA polynomials outside span{h^-1, 1, h}.
AlgebraPtr build_family(const FamilySpec& spec);

FamilySpec poly_spec(int n, const FieldDescriptor& f = FieldDescriptor::rational());
FamilySpec laurent_spec(int n, const FieldDescriptor& f = FieldDescriptor::rational());
FamilySpec skew_poly_spec(const std::vector<std::vector<Scalar>>& Q);
FamilySpec quantum_torus_spec(const std::vector<std::vector<Scalar>>& Q);
/// q_ij = zeta_ell^{a_ij}; over the rationals when ell = 1, CYCLOTOMIC(ell) otherwise.
FamilySpec quantum_torus_root_spec(int n, std::uint64_t ell, const std::vector<std::vector<long>>& a);
FamilySpec weyl1_spec(const FieldDescriptor& f = FieldDescriptor::rational());
FamilySpec quantum_weyl1_spec(const Scalar& q);
FamilySpec localized_qweyl1_spec(const Scalar& q);
FamilySpec minus_one_plane_spec(const FieldDescriptor& f = FieldDescriptor::rational());
/// a(h) = sum a[k] h^k.
FamilySpec gwa_spec(const std::map<int, Scalar>& a, const Scalar& q);
FamilySpec finite_rank_quantum_weyl_spec(const std::vector<Scalar>& q_list);

/// Uniform q_ij = q for i < j.
std::vector<std::vector<Scalar>> uniform_q_matrix(int n, const Scalar& q);

/// Generator names used by the family builders.
std::vector<std::string> family_generator_names(FamilyId id, int n);

}  // namespace skewcalc
