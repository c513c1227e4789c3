#include "skewcalc/registry.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "skewcalc/cancel.hpp"
#include "skewcalc/divisor.hpp"
#include "skewcalc/families.hpp"
#include "skewcalc/fdalgebra.hpp"
#include "skewcalc/invariants.hpp"
#include "skewcalc/ore.hpp"

namespace skewcalc {

using P = Property;

std::string property_name(Property p) {
  switch (p) {
    case P::Cancellative: return "CANCELLATIVE";
    case P::StronglyCancellative: return "STRONGLY_CANCELLATIVE";
    case P::UniversallyCancellative: return "UNIVERSALLY_CANCELLATIVE";
    case P::MoritaCancellative: return "MORITA_CANCELLATIVE";
    case P::StronglyMoritaCancellative: return "STRONGLY_MORITA_CANCELLATIVE";
    case P::UniversallyMoritaCancellative: return "UNIVERSALLY_MORITA_CANCELLATIVE";
    case P::DerivedCancellativeStrong: return "DERIVED_CANCELLATIVE_STRONG";
    case P::SkewCancellative: return "SKEW_CANCELLATIVE";
    case P::StronglySkewCancellativeStratiformScope: return "STRONGLY_SKEW_CANCELLATIVE_STRATIFORM_SCOPE";
    case P::SigmaCancellative: return "SIGMA_CANCELLATIVE";
    case P::SigmaCancellativeStrong: return "SIGMA_CANCELLATIVE_STRONG";
    case P::SigmaAlgCancellative: return "SIGMA_ALG_CANCELLATIVE";
    case P::SigmaAlgCancellativeStrong: return "SIGMA_ALG_CANCELLATIVE_STRONG";
    case P::DeltaCancellative: return "DELTA_CANCELLATIVE";
    case P::DeltaCancellativeStrongOpen: return "DELTA_CANCELLATIVE_STRONG_OPEN";
    case P::RetractableStrong: return "RETRACTABLE_STRONG";
  }
  return "?";
}

const std::vector<Property>& all_properties() {
  static const std::vector<Property> all = {
      P::Cancellative,         P::StronglyCancellative,
      P::UniversallyCancellative, P::MoritaCancellative,
      P::StronglyMoritaCancellative, P::UniversallyMoritaCancellative,
      P::DerivedCancellativeStrong, P::SkewCancellative,
      P::StronglySkewCancellativeStratiformScope, P::SigmaCancellative,
      P::SigmaCancellativeStrong, P::SigmaAlgCancellative,
      P::SigmaAlgCancellativeStrong, P::DeltaCancellative,
      P::DeltaCancellativeStrongOpen, P::RetractableStrong,
  };
  return all;
}

std::string verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Proved: return "PROVED";
    case VerdictStatus::Asserted: return "ASSERTED";
    case VerdictStatus::Inconclusive: return "INCONCLUSIVE";
    case VerdictStatus::RefutedByExample: return "REFUTED_BY_EXAMPLE";
  }
  return "?";
}

const ImplicationDAG& implication_dag() {
  static const ImplicationDAG dag = [] {
    ImplicationDAG d;
    d.nodes = {P::Cancellative, P::SigmaCancellative, P::SkewCancellative, P::DeltaCancellative, P::SigmaAlgCancellative};
    d.solid = {
        {P::SkewCancellative, P::SigmaCancellative, ""},
        {P::SkewCancellative, P::SigmaAlgCancellative, ""},
        {P::SigmaCancellative, P::Cancellative, ""},
        {P::SigmaAlgCancellative, P::DeltaCancellative, ""},
        {P::DeltaCancellative, P::Cancellative, ""},
    };
    d.dotted = {
        {P::Cancellative, P::SigmaCancellative, "ex5_5_2"},
        {P::SigmaCancellative, P::SkewCancellative, "ex5_5_1"},
        {P::Cancellative, P::DeltaCancellative, "ex5_5_1"},
        {P::DeltaCancellative, P::SigmaAlgCancellative, "ex5_5_2"},
        {P::SigmaCancellative, P::DeltaCancellative, "ex5_5_1"},
        {P::DeltaCancellative, P::SigmaCancellative, "ex5_5_2"},
    };
    d.variants = {
        {P::UniversallyCancellative, P::StronglyCancellative, ""},
        {P::StronglyCancellative, P::Cancellative, ""},
        {P::UniversallyMoritaCancellative, P::StronglyMoritaCancellative, ""},
        {P::StronglyMoritaCancellative, P::MoritaCancellative, ""},
        {P::SigmaCancellativeStrong, P::SigmaCancellative, ""},
        {P::SigmaCancellativeStrong, P::StronglyCancellative, ""},
        {P::SigmaAlgCancellativeStrong, P::SigmaAlgCancellative, ""},
        {P::SigmaAlgCancellativeStrong, P::DeltaCancellativeStrongOpen, ""},
        {P::DeltaCancellativeStrongOpen, P::DeltaCancellative, ""},
        {P::DeltaCancellativeStrongOpen, P::StronglyCancellative, ""},
        {P::RetractableStrong, P::StronglyCancellative, ""},
    };
    return d;
  }();
  return dag;
}

// ---------------------------------------------------------------- fixtures

namespace {

Presentation commutative_plane(const FieldDescriptor& f, const std::string& a, const std::string& b) {
  Presentation p;
  p.name = "k[" + a + "," + b + "]";
  p.field = f;
  p.gens = {GeneratorInfo{a, false}, GeneratorInfo{b, false}};
  p.set_flag(Flag::Domain, "family catalog: polynomial ring");
  p.set_flag(Flag::Noetherian, "family catalog: polynomial ring");
  p.set_flag(Flag::Affine, "family catalog: polynomial ring");
  return p;
}

struct FixturePair {
  AlgebraPtr base_a, base_b, ext_a, ext_b;
  std::vector<Element> sigma_b;
};

FixturePair build_pair(const std::string& id, const FieldDescriptor& f) {
  FixturePair fp;
  fp.base_b = Algebra::create(commutative_plane(f, "y", "z"));
  const Algebra& B = *fp.base_b;
  const Scalar one = Scalar::one(f);
  if (id == "ex5_5_1") {
    fp.base_a = build_family(weyl1_spec(f));
    fp.sigma_b = {B.gen(0), B.gen(1)};
    fp.ext_b = ore_extend(B, "x", fp.sigma_b, {B.one(), B.zero()}, false);
  } else {
    fp.base_a = build_family(minus_one_plane_spec(f));
    fp.sigma_b = {-B.gen(0), B.gen(1)};
    fp.ext_b = ore_extend(B, "x", fp.sigma_b, {B.zero(), B.zero()}, false);
  }
  const Algebra& A = *fp.base_a;
  fp.ext_a = ore_extend(A, "z", {A.gen(0), A.gen(1)}, {A.zero(), A.zero()}, false);
  return fp;
}

}  // namespace

bool Fixture::applies_to(const Presentation& p) const {
  if (!p.family || p.field.characteristic() != 0) return false;
  if (id == "ex5_5_1") return p.family->id == FamilyId::Weyl1;
  if (id == "ex5_5_2") return p.family->id == FamilyId::MinusOnePlane;
  return false;
}

FixtureCheck Fixture::verify(const FieldDescriptor& field, int degree_cap) const {
  FixtureCheck out;
  if (field.characteristic() != 0) {
    out.lines.push_back("fixture requires characteristic 0");
    return out;
  }
  const FixturePair fp = build_pair(id, field);
  const Morphism phi = identity_on_names(fp.ext_a, fp.ext_b, "phi");
  const Morphism psi = identity_on_names(fp.ext_b, fp.ext_a, "psi");
  const IsoCheck iso = verify_isomorphism_bounded(phi, psi, degree_cap);
  out.lines.push_back(std::string(iso.ok ? "ISO_BOUNDED" : "FAIL") + ": " + fp.ext_a->presentation().name + " -> " +
                      fp.ext_b->presentation().name + " at degree cap " + std::to_string(degree_cap) +
                      (iso.ok ? " (piece dimension " + std::to_string(iso.source_dim) + ")" : ", " + iso.witness));
  const auto wa = noncommutativity_witness(*fp.base_a);
  const auto wb = noncommutativity_witness(*fp.base_b);
  const bool nonisom = wa.has_value() && !wb.has_value();
  out.lines.push_back(std::string(nonisom ? "NON_ISOMORPHIC" : "FAIL") + ": " + fp.base_a->presentation().name +
                      " has " + (wa ? *wa : std::string("no nonzero commutator")) + ", " +
                      fp.base_b->presentation().name + (wb ? " is noncommutative" : " is commutative"));
  bool sigma_ok = true;
  if (id == "ex5_5_2") {
    const auto loc = is_locally_algebraic(*fp.base_b, fp.sigma_b, 3);
    sigma_ok = loc.certified;
    out.lines.push_back(std::string(loc.certified ? "LOCALLY_ALGEBRAIC" : "FAIL") +
                        ": sigma(y) = -y, sigma(z) = z on " + fp.base_b->presentation().name);
  }
  out.pass = iso.ok && nonisom && sigma_ok;
  return out;
}

const std::vector<Fixture>& counterexample_registry() {
  static const std::vector<Fixture> reg = {
      Fixture{"ex5_5_1",
              "Weyl algebra: A[z] and k[y,z][x; delta'] with delta'(y) = 1 are isomorphic while A is noncommutative",
              "Weyl algebra counterexample to delta-cancellation",
              {P::DeltaCancellative}},
      Fixture{"ex5_5_2",
              "minus-one plane: A[z] and k[y,z][x; sigma] with sigma(y) = -y are isomorphic, sigma of finite order",
              "minus-one plane counterexample to sigma-cancellation",
              {P::SigmaCancellative, P::SigmaAlgCancellative}},
  };
  return reg;
}

// ---------------------------------------------------------------- evidence

namespace {

bool flag_is_derived(const FlagEntry& e) {
  return e.provenance.find("user") == std::string::npos && e.provenance.find("family catalog") != std::string::npos;
}

std::string join(const std::vector<Element>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s;
}

/// Whether q (the family parameter) is provably not a root of unity.
bool generic_q(const Scalar& q) {
  switch (q.field().kind) {
    case FieldKind::Rational: {
      const mpq_class r = q.to_rational();
      return r != 1 && r != -1 && r != 0;
    }
    case FieldKind::RatFunc: return !q.is_constant() || (q.to_rational() != 1 && q.to_rational() != -1);
    default: return false;
  }
}

/// Center of the catalog presentation when it is known exactly to be the base field.
std::optional<std::string> catalog_trivial_center(const Presentation& p) {
  if (!p.family) return std::nullopt;
  const FamilySpec& s = *p.family;
  switch (s.id) {
    case FamilyId::Weyl1:
      if (p.field.characteristic() == 0) return "Weyl algebra in characteristic 0";
      break;
    case FamilyId::QuantumWeyl1:
    case FamilyId::LocalizedQWeyl1:
      if (s.q && generic_q(*s.q)) return "quantum Weyl family at q not a root of unity";
      break;
    default: break;
  }
  return std::nullopt;
}

/// Lazily computed evidence, keyed by kind; digests are deterministic strings.
class EvidenceEngine {
 public:
  EvidenceEngine(AlgebraPtr alg, const CertifyConfig& cfg) : alg_(std::move(alg)), cfg_(cfg) {}

  const Algebra& alg() const { return *alg_; }
  const Presentation& pres() const { return alg_->presentation(); }

  std::string digest(const std::string& kind) {
    auto it = cache_.find(kind);
    if (it != cache_.end()) return it->second;
    std::string d = compute(kind);
    cache_[kind] = d;
    return d;
  }

  const CenterBasis& center() {
    if (!center_) center_ = center_bounded(*alg_, cfg_.center_degree);
    return *center_;
  }
  bool center_is_scalars() {
    const auto& c = center();
    return c.basis.size() == 1 && c.basis[0].is_scalar();
  }
  const ClosureReport& d1() {
    if (!d1_) {
      ClosureCaps caps;
      caps.degree_cap = cfg_.degree_cap;
      caps.max_rounds = cfg_.max_rounds;
      d1_ = divisor_closure(*alg_, {alg_->one()}, caps);
    }
    return *d1_;
  }
  bool d1_full() { return pres().has_flag(Flag::Domain) && d1().status == ClosureStatus::Full; }
  const std::optional<GkEstimate>& gk() {
    if (!gk_done_) {
      gk_done_ = true;
      try {
        gk_ = gk_estimate(growth_dims(*alg_, cfg_.growth_N));
      } catch (const Error&) {
        gk_.reset();
      }
    }
    return gk_;
  }
  bool gk_finite() { return gk() && gk()->snapped.has_value(); }

  /// Central Laurent lattice for quantum tori with root-of-unity data.
  std::optional<TorusCenter> torus_center() {
    if (!pres().family || pres().family->id != FamilyId::QuantumTorus || pres().family->ell == 0) return std::nullopt;
    const FamilySpec& s = *pres().family;
    return center_torus(s.n, s.ell, s.a);
  }

  /// Presentation of the center as an algebra in which D(1) is computed.
  std::optional<AlgebraPtr> center_algebra(std::string& why) {
    if (auto tc = torus_center()) {
      const int r = static_cast<int>(tc->basis.size());
      why = "Laurent polynomial algebra in " + std::to_string(r) + " central monomials";
      return build_family(laurent_spec(r, pres().field));
    }
    const auto& p = pres();
    if (p.family && p.family->id == FamilyId::Laurent) {
      why = "commutative Laurent algebra is its own center";
      return alg_;
    }
    if (p.family && p.family->id == FamilyId::LocalizedQWeyl1 && p.field.kind == FieldKind::Cyclotomic && p.family->q &&
        *p.family->q == Scalar::q(p.field)) {
      const long ell = static_cast<long>(p.field.modulus);
      const Algebra& A = *alg_;
      const Element X = power(A.gen(0), ell), Y = power(A.gen(1), ell), Z = power(A.gen(2), ell);
      // X*Y is affine in Z; read off the coefficients.
      const Element xy = X * Y;
      Monomial zl(3);
      zl.e[2] = static_cast<int>(ell);
      const Scalar alpha = xy.coeff(zl), beta = xy.coeff(Monomial(3));
      if (xy != alpha * Z + A.scalar(beta)) return std::nullopt;
      Presentation zp;
      zp.name = "Z(" + p.name + ")";
      zp.field = p.field;
      zp.gens = {GeneratorInfo{"X", false}, GeneratorInfo{"Y", false}, GeneratorInfo{"Z", true}};
      Terms rhs;
      Monomial zm(3);
      zm.e[2] = 1;
      add_term(rhs, zm, alpha);
      add_term(rhs, Monomial(3), beta);
      zp.rules.push_back(RewriteRule{1, 0, Scalar::zero(p.field), rhs});
      zp.reductions.push_back(ReductionRule{0, rhs});
      zp.set_flag(Flag::Domain, "family catalog: center of a domain");
      zp.set_flag(Flag::Affine, "family catalog: generated by x^l, y^l, z^l, z^-l");
      why = "k[X, Y, Z^{+-1}] with X*Y = " + terms_to_string(rhs, {"X", "Y", "Z"}) + ", X = x^" + std::to_string(ell) +
            ", Y = y^" + std::to_string(ell) + ", Z = z^" + std::to_string(ell);
      return Algebra::create(std::move(zp));
    }
    return std::nullopt;
  }

 private:
  std::string compute(const std::string& kind) {
    std::ostringstream out;
    if (kind == "center_bounded") {
      out << "degree <= " << cfg_.center_degree << ": {" << join(center().basis) << "}";
    } else if (kind == "center_catalog") {
      auto c = catalog_trivial_center(pres());
      out << (c ? "trivial: " + *c : std::string("not certified"));
    } else if (kind.rfind("flag:", 0) == 0) {
      const auto f = flag_from_name(kind.substr(5));
      const FlagEntry* e = f ? pres().find_flag(*f) : nullptr;
      out << (e ? "present: " + e->provenance : std::string("absent"));
    } else if (kind == "divisor_closure(1)") {
      const auto& r = d1();
      out << closure_status_name(r.status) << " dim " << r.certified_basis.size() << " rounds " << r.rounds.size()
          << " cap " << cfg_.degree_cap;
    } else if (kind == "gk_estimate") {
      if (gk()) {
        out << "N = " << cfg_.growth_N << ", method " << gk()->method << ", snapped "
            << (gk()->snapped ? std::to_string(*gk()->snapped) : std::string("none"));
      } else {
        out << "unavailable";
      }
    } else if (kind == "commutative") {
      auto w = noncommutativity_witness(alg());
      out << (w ? "noncommutative: " + *w : std::string("commutative"));
    } else if (kind == "characteristic") {
      out << pres().field.characteristic();
    } else if (kind == "center_fd_checks") {
      // Z = k as a one-dimensional algebra.
      const FiniteDimAlgebra z = fd_split(pres().field, 1);
      const auto u = units_generated(z);
      const auto dec = local_decomposition(z);
      out << "Z = k: units " << tri_name(u.status) << ", von Neumann regular " << (is_vnr(z) ? "TRUE" : "FALSE")
          << ", local factors " << dec.factors.size();
    } else if (kind == "torus_center") {
      auto tc = torus_center();
      if (!tc) return "unavailable";
      out << "rank " << tc->basis.size() << " index " << tc->index.get_str() << " rows";
      const Algebra& A = alg();
      bool central = true;
      for (const auto& row : tc->basis) {
        out << " [";
        Monomial m(A.size());
        for (std::size_t k = 0; k < row.size(); ++k) {
          out << (k ? " " : "") << row[k].get_str();
          m.e[k] = static_cast<int>(row[k].get_si());
        }
        out << "]";
        const Element u = A.monomial(m);
        for (std::size_t g = 0; g < A.size(); ++g) central = central && commutator(u, A.gen(static_cast<int>(g))).is_zero();
      }
      out << (central ? ", all central" : ", NOT central");
    } else if (kind == "center_divisor(1)") {
      std::string why;
      auto z = center_algebra(why);
      if (!z) return "unavailable";
      ClosureCaps caps;
      caps.degree_cap = cfg_.degree_cap;
      caps.max_rounds = cfg_.max_rounds;
      const auto r = divisor_closure(**z, {(*z)->one()}, caps);
      out << why << "; D_Z(1) " << closure_status_name(r.status) << " dim " << r.certified_basis.size();
      if (pres().family && pres().family->id == FamilyId::LocalizedQWeyl1) {
        const Algebra& A = alg();
        const long ell = static_cast<long>(pres().field.modulus);
        bool central = true;
        for (int g = 0; g < 3; ++g)
          for (int h = 0; h < 3; ++h) central = central && commutator(power(A.gen(g), ell), A.gen(h)).is_zero();
        out << (central ? "; generators central" : "; generators NOT central");
      }
    } else if (kind.rfind("fixture:", 0) == 0) {
      for (const auto& fx : counterexample_registry())
        if (fx.id == kind.substr(8)) {
          const auto chk = fx.verify(pres().field);
          out << (chk.pass ? "PASS" : "FAIL");
          return out.str();
        }
      out << "unknown fixture";
    } else if (kind == "catalog_result") {
      out << "minus-one plane listed strongly cancellative by a cited prior result";
    } else {
      throw Error(ErrorCode::Internal, "unknown evidence kind " + kind);
    }
    return out.str();
  }

  AlgebraPtr alg_;
  CertifyConfig cfg_;
  std::map<std::string, std::string> cache_;
  std::optional<CenterBasis> center_;
  std::optional<ClosureReport> d1_;
  std::optional<GkEstimate> gk_;
  bool gk_done_ = false;
};

int strength(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Proved: return 2;
    case VerdictStatus::Asserted: return 1;
    default: return 0;
  }
}

class VerdictSet {
 public:
  VerdictSet() {
    for (auto p : all_properties()) {
      Verdict v;
      v.property = p;
      v.rule = "NONE";
      v.paper_ref = "no applicable sufficient condition";
      by_.push_back(v);
    }
  }
  Verdict& at(Property p) {
    for (auto& v : by_)
      if (v.property == p) return v;
    throw Error(ErrorCode::Internal, "unknown property");
  }
  /// Records a positive conclusion, keeping the strongest status.
  void offer(Property p, VerdictStatus s, const std::string& rule, const std::string& ref,
             const std::vector<EvidenceItem>& ev) {
    Verdict& v = at(p);
    if (v.status == VerdictStatus::RefutedByExample)
      throw Error(ErrorCode::ValidationError,
                  rule + " concludes " + property_name(p) + " but a registry fixture refutes it; check asserted flags");
    if (strength(s) > strength(v.status)) {
      if (v.status != VerdictStatus::Inconclusive) v.also.push_back(v.rule);
      v.status = s;
      v.rule = rule;
      v.paper_ref = ref;
      v.evidence = ev;
    } else if (v.rule != rule) {
      v.also.push_back(rule);
    }
  }
  void refute(Property p, const std::string& rule, const std::string& ref, const std::vector<EvidenceItem>& ev) {
    Verdict& v = at(p);
    if (v.status == VerdictStatus::RefutedByExample) return;
    if (v.status != VerdictStatus::Inconclusive)
      throw Error(ErrorCode::ValidationError,
                  property_name(p) + " concluded by " + v.rule + " contradicts registry fixture; check asserted flags");
    v.status = VerdictStatus::RefutedByExample;
    v.rule = rule;
    v.paper_ref = ref;
    v.evidence = ev;
  }
  std::vector<Verdict> take() { return std::move(by_); }
  const std::vector<Verdict>& all() const { return by_; }

 private:
  std::vector<Verdict> by_;
};

std::vector<DagEdge> closure_edges() {
  std::vector<DagEdge> e = implication_dag().solid;
  for (const auto& v : implication_dag().variants) e.push_back(v);
  return e;
}

}  // namespace

CertifyReport certify(const AlgebraPtr& alg, const CertifyConfig& cfg) {
  EvidenceEngine ev(alg, cfg);
  const Presentation& p = alg->presentation();
  VerdictSet vs;
  CertifyReport rep;

  auto item = [&](const std::string& kind) { return EvidenceItem{kind, ev.digest(kind)}; };
  // Flags required by a rule; the conclusion is ASSERTED when any comes from the user.
  auto flags_status = [&](std::initializer_list<Flag> flags, std::vector<EvidenceItem>& evs,
                          std::string& missing) -> VerdictStatus {
    VerdictStatus st = VerdictStatus::Proved;
    for (Flag f : flags) {
      const FlagEntry* e = p.find_flag(f);
      if (!e) {
        missing += (missing.empty() ? "" : ", ") + flag_name(f);
        continue;
      }
      evs.push_back(item("flag:" + flag_name(f)));
      if (!flag_is_derived(*e)) st = VerdictStatus::Asserted;
    }
    return st;
  };
  auto record = [&](const std::string& rule, bool fired, const std::string& reason) {
    rep.rules.push_back(RuleOutcome{rule, fired, fired ? "" : reason});
  };
  auto fire = [&](const std::string& rule, std::initializer_list<Property> props, VerdictStatus st,
                  const std::string& ref, const std::vector<EvidenceItem>& evs) {
    for (auto pr : props) vs.offer(pr, st, rule, ref, evs);
    record(rule, true, "");
  };

  // Registry refutations first, so contradicting assertions surface as errors.
  for (const auto& fx : counterexample_registry()) {
    if (!fx.applies_to(p)) continue;
    const EvidenceItem e = item("fixture:" + fx.id);
    if (e.result != "PASS") throw Error(ErrorCode::Internal, "fixture " + fx.id + " failed to re-verify");
    for (auto pr : fx.refutes) vs.refute(pr, "REGISTRY:" + fx.id, fx.paper_ref, {e});
  }
  // Contrapositive propagation along implications.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : closure_edges())
      if (vs.at(e.to).status == VerdictStatus::RefutedByExample && vs.at(e.from).status == VerdictStatus::Inconclusive) {
        vs.refute(e.from, "DAG-CONTRAPOSITIVE:" + property_name(e.to), "implication diagram of skew cancellations",
                  vs.at(e.to).evidence);
        changed = true;
      }
  }

  const bool center_trivial = ev.center_is_scalars() && catalog_trivial_center(p).has_value();

  // R1
  if (center_trivial) {
    fire("R1", {P::UniversallyCancellative, P::UniversallyMoritaCancellative}, VerdictStatus::Proved,
         "universal cancellation for algebras with trivial center", {item("center_bounded"), item("center_catalog")});
  } else {
    record("R1", false, ev.center_is_scalars() ? "MISSING_EVIDENCE: center not certified exactly by the catalog"
                                               : "center at the cap is larger than the base field");
  }
  // R2-R4 on Z = k; no other finite-dimensional centers arise from the catalog.
  if (center_trivial) {
    const std::vector<EvidenceItem> e{item("center_bounded"), item("center_catalog"), item("center_fd_checks")};
    fire("R2", {P::StronglyCancellative, P::StronglyMoritaCancellative}, VerdictStatus::Proved,
         "strong cancellation when Z/N(Z) is generated by units", e);
    fire("R3", {P::StronglyCancellative, P::StronglyMoritaCancellative}, VerdictStatus::Proved,
         "strong cancellation when Z/N(Z) is von Neumann regular", e);
    fire("R4", {P::StronglyCancellative, P::StronglyMoritaCancellative}, VerdictStatus::Proved,
         "strong cancellation when Z is a finite direct sum of local algebras", e);
  } else {
    for (const char* r : {"R2", "R3", "R4"})
      record(r, false, "MISSING_EVIDENCE: center is not a certified finite-dimensional algebra");
  }
  // R5
  if (ev.torus_center()) {
    const EvidenceItem e = item("torus_center");
    if (e.result.find("NOT central") != std::string::npos) throw Error(ErrorCode::Internal, "torus center check failed");
    fire("R5", {P::StronglyCancellative, P::StronglyMoritaCancellative}, VerdictStatus::Proved,
         "strong retractability of Laurent polynomial algebras", {e});
  } else if (p.family && p.family->id == FamilyId::Laurent) {
    fire("R5", {P::StronglyCancellative, P::StronglyMoritaCancellative}, VerdictStatus::Proved,
         "strong retractability of Laurent polynomial algebras", {item("commutative")});
  } else {
    record("R5", false, "MISSING_EVIDENCE: center not recognized as a Laurent polynomial algebra");
  }

  const bool domain = p.has_flag(Flag::Domain);
  const bool full = domain && ev.d1_full();
  // R6
  if (full) {
    std::vector<EvidenceItem> e{item("divisor_closure(1)")};
    std::string missing;
    const VerdictStatus st = flags_status({Flag::Domain}, e, missing);
    const bool commutative = ev.digest("commutative") == "commutative";
    if (commutative) {
      e.push_back(item("commutative"));
      vs.offer(P::RetractableStrong, st, "R6", "strong retractability when D(1) is everything", e);
    }
    fire("R6", {P::StronglyCancellative}, st, "strong cancellation when D(1) contains the center", e);
  } else if (center_trivial) {
    fire("R6", {P::StronglyCancellative}, VerdictStatus::Proved, "strong cancellation when D(1) contains the center",
         {item("center_bounded"), item("center_catalog")});
  } else {
    record("R6", false, domain ? "D(1) not FULL at the configured caps" : "MISSING_EVIDENCE: DOMAIN flag");
  }
  // R7
  {
    std::vector<EvidenceItem> e;
    std::string missing;
    const VerdictStatus st = flags_status({Flag::Domain, Flag::Affine}, e, missing);
    if (!missing.empty()) {
      record("R7", false, "MISSING_EVIDENCE: " + missing);
    } else if (!full) {
      record("R7", false, "D(1) not FULL at the configured caps");
    } else if (!ev.gk_finite()) {
      record("R7", false, "MISSING_EVIDENCE: no snapped GK estimate");
    } else {
      e.push_back(item("gk_estimate"));
      e.push_back(item("divisor_closure(1)"));
      fire("R7", {P::SigmaAlgCancellativeStrong}, st, "strong sigma-algebraic cancellation for domains with D(1) = A", e);
    }
  }
  // R8
  {
    std::vector<EvidenceItem> e;
    std::string missing;
    const VerdictStatus st = flags_status({Flag::Domain, Flag::Noetherian, Flag::Stratiform}, e, missing);
    if (!missing.empty()) {
      record("R8", false, "MISSING_EVIDENCE: " + missing);
    } else if (!full) {
      record("R8", false, "D(1) not FULL at the configured caps");
    } else {
      e.push_back(item("divisor_closure(1)"));
      fire("R8", {P::StronglySkewCancellativeStratiformScope}, st,
           "strong skew cancellation for noetherian stratiform domains with D(1) = A", e);
    }
  }
  // R9
  {
    std::vector<EvidenceItem> e;
    std::string missing;
    const VerdictStatus st = flags_status({Flag::Domain, Flag::Noetherian, Flag::Simple, Flag::UnitsTrivial}, e, missing);
    if (!missing.empty()) {
      record("R9", false, "MISSING_EVIDENCE: " + missing);
    } else {
      fire("R9", {P::SigmaCancellativeStrong}, st, "strong sigma-cancellation for simple domains with trivial units", e);
    }
  }
  // R10
  {
    std::vector<EvidenceItem> e;
    std::string missing;
    const VerdictStatus st = flags_status({Flag::Domain, Flag::Affine, Flag::MlFull}, e, missing);
    if (!missing.empty()) {
      record("R10", false, "MISSING_EVIDENCE: " + missing);
    } else if (p.field.characteristic() != 0) {
      record("R10", false, "characteristic is not 0");
    } else if (!ev.gk_finite()) {
      record("R10", false, "MISSING_EVIDENCE: no snapped GK estimate");
    } else {
      e.push_back(item("gk_estimate"));
      e.push_back(item("characteristic"));
      fire("R10", {P::DeltaCancellative}, st, "delta-cancellation for LND-rigid affine domains", e);
    }
  }
  // R11
  {
    std::vector<EvidenceItem> e;
    std::string missing;
    const VerdictStatus st = flags_status({Flag::Domain, Flag::Azumaya}, e, missing);
    if (!missing.empty()) {
      record("R11", false, "MISSING_EVIDENCE: " + missing);
    } else {
      const EvidenceItem z = item("center_divisor(1)");
      if (z.result.find("D_Z(1) FULL") == std::string::npos || z.result.find("NOT central") != std::string::npos) {
        record("R11", false, "MISSING_EVIDENCE: D_Z(1) = Z not certified (" + z.result + ")");
      } else {
        e.push_back(z);
        fire("R11", {P::StronglyCancellative, P::StronglyMoritaCancellative, P::DerivedCancellativeStrong}, st,
             "cancellation for Azumaya domains with D_Z(1) = Z", e);
      }
    }
  }
  // Cited catalog result for the minus-one plane.
  if (p.family && p.family->id == FamilyId::MinusOnePlane && p.field.characteristic() == 0)
    vs.offer(P::StronglyCancellative, VerdictStatus::Asserted, "CATALOG",
             "cited prior result on the minus-one plane", {item("catalog_result")});

  // Forward closure along implications.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : closure_edges()) {
      const Verdict& from = vs.at(e.from);
      const Verdict& to = vs.at(e.to);
      if (strength(from.status) > strength(to.status)) {
        vs.offer(e.to, from.status, "DAG:" + property_name(e.from), "implication diagram of skew cancellations",
                 from.evidence);
        changed = true;
      }
    }
  }
  rep.verdicts = vs.take();
  return rep;
}

ReplayResult audit_replay(const AlgebraPtr& alg, const CertifyReport& rep, const CertifyConfig& cfg) {
  ReplayResult out;
  EvidenceEngine fresh(alg, cfg);
  std::set<std::string> seen;
  for (const auto& v : rep.verdicts)
    for (const auto& e : v.evidence) {
      if (!seen.insert(e.kind).second) continue;
      const std::string again = fresh.digest(e.kind);
      const bool same = again == e.result;
      out.ok = out.ok && same;
      out.lines.push_back(std::string(same ? "OK   " : "DIFF ") + e.kind + ": " + again);
    }
  if (!is_dag_closed(rep)) {
    out.ok = false;
    out.lines.push_back("DIFF verdict set is not closed under the implication diagram");
  }
  return out;
}

bool is_dag_closed(const CertifyReport& rep) {
  auto status = [&](Property p) {
    for (const auto& v : rep.verdicts)
      if (v.property == p) return v.status;
    return VerdictStatus::Inconclusive;
  };
  for (const auto& e : closure_edges()) {
    const auto a = status(e.from), b = status(e.to);
    if (strength(a) > strength(b)) return false;
    if (b == VerdictStatus::RefutedByExample && a != VerdictStatus::RefutedByExample) return false;
  }
  return true;
}

}  // namespace skewcalc
