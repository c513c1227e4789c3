#include "skewcalc/families.hpp"

#include "skewcalc/linalg.hpp"

namespace skewcalc {

namespace {

const char* kCatalog = "family catalog";

Monomial mono(std::size_t m, std::initializer_list<std::pair<int, int>> exps) {
  Monomial r(m);
  for (const auto& [i, e] : exps) r.e[i] = e;
  return r;
}

void set_standard_flags(Presentation& p, int strat_len, const std::string& why) {
  p.set_flag(Flag::Domain, std::string(kCatalog) + ": " + why);
  p.set_flag(Flag::Noetherian, std::string(kCatalog) + ": " + why);
  p.set_flag(Flag::Affine, std::string(kCatalog) + ": finitely generated by construction");
  p.set_flag(Flag::Stratiform, std::string(kCatalog) + ": stratiform length from the standard Ore tower", strat_len);
}

void check_q_matrix(const std::vector<std::vector<Scalar>>& Q) {
  const std::size_t n = Q.size();
  if (n == 0) throw Error(ErrorCode::BadParams, "commutation matrix must be nonempty");
  const FieldDescriptor f = Q[0].empty() ? FieldDescriptor::rational() : Q[0][0].field();
  for (std::size_t i = 0; i < n; ++i) {
    if (Q[i].size() != n) throw Error(ErrorCode::BadParams, "commutation matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (Q[i][j].field() != f) throw Error(ErrorCode::FieldMismatch, "commutation scalars in different fields");
      if (Q[i][j].is_zero()) throw Error(ErrorCode::BadParams, "commutation scalars must be nonzero");
    }
    if (!Q[i][i].is_one()) throw Error(ErrorCode::BadParams, "q_ii must be 1");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(Q[j][i] * Q[i][j]).is_one()) throw Error(ErrorCode::BadParams, "q_ji must equal q_ij^-1");
}

std::vector<GeneratorInfo> gen_list(const std::vector<std::string>& names, bool inv) {
  std::vector<GeneratorInfo> out;
  for (const auto& n : names) out.push_back(GeneratorInfo{n, inv});
  return out;
}

Presentation q_commuting(const std::string& name, const std::vector<std::vector<Scalar>>& Q,
                         const std::vector<std::string>& names, bool inv) {
  check_q_matrix(Q);
  Presentation p;
  p.name = name;
  p.field = Q[0][0].field();
  p.gens = gen_list(names, inv);
  for (std::size_t j = 0; j < Q.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!Q[i][j].is_one()) p.rules.push_back(RewriteRule{static_cast<int>(j), static_cast<int>(i), Q[i][j], {}});
  return p;
}

void require_generic_q(const Scalar& q) {
  if (q.is_zero() || q.is_one()) throw Error(ErrorCode::BadParams, "q must differ from 0 and 1");
}

Presentation qweyl_presentation(const Scalar& q) {
  require_generic_q(q);
  // x*y - q*y*x = 1 rearranged: y*x = q^-1*x*y - q^-1.
  Presentation p;
  p.name = "quantum_weyl1";
  p.field = q.field();
  p.gens = gen_list({"x", "y"}, false);
  const Scalar qi = q.inverse();
  p.rules.push_back(RewriteRule{1, 0, qi, Terms{{Monomial(2), -qi}}});
  return p;
}

/// Scalar c with a = c*b, or nullopt.
std::optional<Scalar> proportional(const Element& a, const Element& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [m, lb] = *b.terms().rbegin();
  const Scalar c = a.coeff(m) / lb;
  if (a == c * b) return c;
  return std::nullopt;
}

/// Writes `target` as alpha*z + beta inside the span {z, 1}.
Terms express_in_z(const Element& target, const Element& z, std::size_t m) {
  const AlgebraPtr& alg = target.algebra_ptr();
  Echelon ech(alg->field(), true);
  ech.insert(z.terms(), 0);
  ech.insert(alg->one().terms(), 1);
  Combo combo;
  if (!ech.reduce_tracked(target.terms(), combo).empty())
    throw Error(ErrorCode::Internal, "product is not affine in z");
  Terms out;
  for (const auto& [label, c] : combo) add_term(out, label == 0 ? mono(m, {{2, 1}}) : Monomial(m), c);
  return out;
}

Presentation localized_presentation(const Scalar& q) {
  auto a1 = Algebra::create(qweyl_presentation(q));
  const Element x = a1->gen(0), y = a1->gen(1);
  const Element z = x * y - y * x;
  const auto cx = proportional(z * x, x * z);
  const auto cy = proportional(z * y, y * z);
  if (!cx || !cy) throw Error(ErrorCode::Internal, "z is not normal in the quantum Weyl algebra");
  Presentation p;
  p.name = "localized_qweyl1";
  p.field = q.field();
  p.gens = {GeneratorInfo{"x", false}, GeneratorInfo{"y", false}, GeneratorInfo{"z", true}};
  p.rules.push_back(RewriteRule{1, 0, Scalar::zero(p.field), express_in_z(y * x, z, 3)});
  p.rules.push_back(RewriteRule{2, 0, *cx, {}});
  p.rules.push_back(RewriteRule{2, 1, *cy, {}});
  p.reductions.push_back(ReductionRule{0, express_in_z(x * y, z, 3)});
  p.notes.push_back("z = x*y - y*x; commutation scalars of z derived in the quantum Weyl algebra");
  return p;
}

Presentation gwa_presentation(const std::map<int, Scalar>& a, const Scalar& q) {
  if (q.is_zero()) throw Error(ErrorCode::BadParams, "GWA parameter q must be nonzero");
  bool nonzero = false;
  for (const auto& [k, c] : a) {
    if (c.field() != q.field()) throw Error(ErrorCode::FieldMismatch, "GWA coefficients in another field");
    if (c.is_zero()) continue;
    if (k < -1 || k > 1) throw Error(ErrorCode::UnsupportedGwa, "a(h) must lie in span{h^-1, 1, h}");
    nonzero = true;
  }
  if (!nonzero) throw Error(ErrorCode::UnsupportedGwa, "a(h) must be nonzero");
  Presentation p;
  p.name = "gwa";
  p.field = q.field();
  p.gens = {GeneratorInfo{"x", false}, GeneratorInfo{"y", false}, GeneratorInfo{"h", true}};
  Terms ah, aqh;
  for (const auto& [k, c] : a) {
    add_term(ah, mono(3, {{2, k}}), c);
    add_term(aqh, mono(3, {{2, k}}), c * q.pow(k));
  }
  const Scalar qi = q.inverse();
  p.rules.push_back(RewriteRule{1, 0, Scalar::zero(p.field), ah});
  p.rules.push_back(RewriteRule{2, 0, qi, {}});
  p.rules.push_back(RewriteRule{2, 1, q, {}});
  p.reductions.push_back(ReductionRule{0, aqh});
  p.notes.push_back("uses x*h = q*h*x and y*h = q^-1*h*y");
  return p;
}

}  // namespace

std::vector<std::string> family_generator_names(FamilyId id, int n) {
  std::vector<std::string> out;
  switch (id) {
    case FamilyId::Poly:
    case FamilyId::Laurent:
      if (n <= 3) {
        for (int i = 0; i < n; ++i) out.push_back(std::string(1, "xyz"[i]));
        return out;
      }
      [[fallthrough]];
    case FamilyId::SkewPoly:
    case FamilyId::QuantumTorus:
      for (int i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
      return out;
    case FamilyId::Weyl1:
    case FamilyId::QuantumWeyl1:
    case FamilyId::MinusOnePlane: return {"x", "y"};
    case FamilyId::LocalizedQWeyl1: return {"x", "y", "z"};
    case FamilyId::Gwa: return {"x", "y", "h"};
    case FamilyId::FiniteRankQWeyl:
      for (int i = 1; i <= n; ++i) {
        out.push_back("x" + std::to_string(i));
        out.push_back("y" + std::to_string(i));
      }
      return out;
  }
  return out;
}

std::vector<std::vector<Scalar>> uniform_q_matrix(int n, const Scalar& q) {
  const FieldDescriptor f = q.field();
  std::vector<std::vector<Scalar>> Q(n, std::vector<Scalar>(n, Scalar::one(f)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Q[i][j] = q;
      Q[j][i] = q.inverse();
    }
  return Q;
}

FamilySpec poly_spec(int n, const FieldDescriptor& f) {
  FamilySpec s;
  s.id = FamilyId::Poly;
  s.field = f;
  s.n = n;
  return s;
}

FamilySpec laurent_spec(int n, const FieldDescriptor& f) {
  FamilySpec s = poly_spec(n, f);
  s.id = FamilyId::Laurent;
  return s;
}

FamilySpec skew_poly_spec(const std::vector<std::vector<Scalar>>& Q) {
  FamilySpec s;
  s.id = FamilyId::SkewPoly;
  s.n = static_cast<int>(Q.size());
  s.field = Q.empty() || Q[0].empty() ? FieldDescriptor::rational() : Q[0][0].field();
  s.Q = Q;
  return s;
}

FamilySpec quantum_torus_spec(const std::vector<std::vector<Scalar>>& Q) {
  FamilySpec s = skew_poly_spec(Q);
  s.id = FamilyId::QuantumTorus;
  return s;
}

FamilySpec quantum_torus_root_spec(int n, std::uint64_t ell, const std::vector<std::vector<long>>& a) {
  if (ell < 1) throw Error(ErrorCode::BadParams, "root of unity order must be positive");
  if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::BadParams, "exponent matrix must be n x n");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) throw Error(ErrorCode::BadParams, "exponent matrix must be n x n");
    for (int j = 0; j < n; ++j)
      if (a[i][j] != -a[j][i]) throw Error(ErrorCode::BadParams, "exponent matrix must be antisymmetric");
  }
  const FieldDescriptor f = ell == 1 ? FieldDescriptor::rational() : FieldDescriptor::cyclotomic(ell);
  std::vector<std::vector<Scalar>> Q(n, std::vector<Scalar>(n, Scalar::one(f)));
  if (ell > 1) {
    const Scalar z = Scalar::q(f);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Q[i][j] = z.pow(a[i][j]);
  }
  FamilySpec s = quantum_torus_spec(Q);
  s.ell = ell;
  s.a = a;
  return s;
}

FamilySpec weyl1_spec(const FieldDescriptor& f) {
  FamilySpec s;
  s.id = FamilyId::Weyl1;
  s.field = f;
  return s;
}

FamilySpec quantum_weyl1_spec(const Scalar& q) {
  FamilySpec s;
  s.id = FamilyId::QuantumWeyl1;
  s.field = q.field();
  s.q = q;
  return s;
}

FamilySpec localized_qweyl1_spec(const Scalar& q) {
  FamilySpec s = quantum_weyl1_spec(q);
  s.id = FamilyId::LocalizedQWeyl1;
  return s;
}

FamilySpec minus_one_plane_spec(const FieldDescriptor& f) {
  FamilySpec s;
  s.id = FamilyId::MinusOnePlane;
  s.field = f;
  return s;
}

FamilySpec gwa_spec(const std::map<int, Scalar>& a, const Scalar& q) {
  FamilySpec s;
  s.id = FamilyId::Gwa;
  s.field = q.field();
  s.q = q;
  for (const auto& [k, c] : a)
    if (!c.is_zero()) s.gwa_a.emplace(k, c);
  return s;
}

FamilySpec finite_rank_quantum_weyl_spec(const std::vector<Scalar>& q_list) {
  FamilySpec s;
  s.id = FamilyId::FiniteRankQWeyl;
  s.n = static_cast<int>(q_list.size());
  s.field = q_list.empty() ? FieldDescriptor::rational() : q_list[0].field();
  s.q_list = q_list;
  return s;
}

AlgebraPtr build_family(const FamilySpec& spec) {
  Presentation p;
  const std::string kw = family_keyword(spec.id);
  switch (spec.id) {
    case FamilyId::Poly:
    case FamilyId::Laurent: {
      if (spec.n < 1) throw Error(ErrorCode::BadParams, "n must be at least 1");
      p.name = kw;
      p.field = spec.field;
      p.gens = gen_list(family_generator_names(spec.id, spec.n), spec.id == FamilyId::Laurent);
      set_standard_flags(p, spec.n, "commutative (Laurent) polynomial ring");
      break;
    }
    case FamilyId::SkewPoly:
    case FamilyId::QuantumTorus: {
      if (spec.n < 1 || static_cast<int>(spec.Q.size()) != spec.n)
        throw Error(ErrorCode::BadParams, "commutation matrix must be n x n with n >= 1");
      p = q_commuting(kw, spec.Q, family_generator_names(spec.id, spec.n), spec.id == FamilyId::QuantumTorus);
      set_standard_flags(p, spec.n, "q-commuting iterated Ore extension");
      break;
    }
    case FamilyId::Weyl1: {
      p.name = kw;
      p.field = spec.field;
      p.gens = gen_list({"x", "y"}, false);
      p.rules.push_back(RewriteRule{1, 0, Scalar::one(p.field), Terms{{Monomial(2), -Scalar::one(p.field)}}});
      set_standard_flags(p, 2, "differential operator ring k[y][x; d/dy]");
      if (p.field.characteristic() == 0) {
        p.set_flag(Flag::Simple, std::string(kCatalog) + ": Weyl algebra in characteristic 0 is simple");
        p.set_flag(Flag::UnitsTrivial, std::string(kCatalog) + ": units of the Weyl algebra are scalars");
      }
      break;
    }
    case FamilyId::QuantumWeyl1: {
      if (!spec.q) throw Error(ErrorCode::BadParams, "q is required");
      p = qweyl_presentation(*spec.q);
      set_standard_flags(p, 2, "iterated Ore extension k[y][x; sigma, delta]");
      break;
    }
    case FamilyId::LocalizedQWeyl1: {
      if (!spec.q) throw Error(ErrorCode::BadParams, "q is required");
      require_generic_q(*spec.q);
      p = localized_presentation(*spec.q);
      set_standard_flags(p, 2, "Ore localization of the quantum Weyl algebra");
      break;
    }
    case FamilyId::MinusOnePlane: {
      p.name = kw;
      p.field = spec.field;
      p.gens = gen_list({"x", "y"}, false);
      p.rules.push_back(RewriteRule{1, 0, -Scalar::one(p.field), {}});
      set_standard_flags(p, 2, "skew polynomial ring k[x][y; sigma]");
      break;
    }
    case FamilyId::Gwa: {
      if (!spec.q) throw Error(ErrorCode::BadParams, "q is required");
      p = gwa_presentation(spec.gwa_a, *spec.q);
      set_standard_flags(p, 2, "generalized Weyl algebra over k[h^-1, h]");
      break;
    }
    case FamilyId::FiniteRankQWeyl: {
      if (spec.q_list.empty()) throw Error(ErrorCode::BadParams, "at least one q_i is required");
      p.name = kw;
      p.field = spec.q_list[0].field();
      p.gens = gen_list(family_generator_names(spec.id, spec.n), false);
      for (std::size_t k = 0; k < spec.q_list.size(); ++k) {
        const Scalar& q = spec.q_list[k];
        if (q.field() != p.field) throw Error(ErrorCode::FieldMismatch, "q_i in different fields");
        if (q.is_zero()) throw Error(ErrorCode::BadParams, "q_i must be nonzero");
        const Scalar qi = q.inverse();
        const int xi = static_cast<int>(2 * k), yi = xi + 1;
        p.rules.push_back(RewriteRule{yi, xi, qi, Terms{{Monomial(p.gens.size()), -qi}}});
      }
      set_standard_flags(p, 2 * spec.n, "tensor product of quantum Weyl algebras");
      break;
    }
  }
  p.family = spec;
  p.family->field = p.field;
  return Algebra::create(std::move(p));
}

}  // namespace skewcalc
