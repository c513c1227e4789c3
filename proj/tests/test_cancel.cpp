#include <doctest.h>

#include <set>

#include "skewcalc/cancel.hpp"
#include "skewcalc/document.hpp"
#include "skewcalc/commands.hpp"
#include "skewcalc/fdalgebra.hpp"
#include "skewcalc/families.hpp"
#include "skewcalc/ore.hpp"
#include "skewcalc/registry.hpp"
#include "test_support.hpp"

using namespace skewcalc;
using testing_support::fixture_path;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rational();

std::vector<Scalar> ints(const FieldDescriptor& f, std::initializer_list<long> cs) {
  std::vector<Scalar> out;
  for (long c : cs) out.push_back(Scalar::from_int(f, c));
  return out;
}

FiniteDimAlgebra ex19() { return fd_monomial_quotient(kQ, {"x", "y"}, {{0, 0}, {1, 0}, {0, 1}}); }

/// Rank of a list of vectors.
std::size_t span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  return mat_rank(Mat(vs.begin(), vs.end()));
}

const Verdict& verdict(const CertifyReport& r, Property p) {
  for (const auto& v : r.verdicts)
    if (v.property == p) return v;
  throw std::logic_error("missing verdict");
}

AlgebraPtr with_flag(const AlgebraPtr& a, Flag f) {
  Presentation p = a->presentation();
  p.set_flag(f, "user");
  return Algebra::create(std::move(p));
}

bool rule_fired(const CertifyReport& r, const std::string& rule) {
  for (const auto& o : r.rules)
    if (o.rule == rule) return o.fired;
  return false;
}

}  // namespace

TEST_CASE("nilradical examples") {
  const auto a = ex19();
  const auto n = nilradical(a);
  CHECK(n.basis.size() == 2);
  CHECK(n.quotient_dim == 1);
  CHECK(span_rank(n.basis) == 2);
  // N = span{x, y}: adding x and y does not grow the span.
  auto with_xy = n.basis;
  with_xy.push_back(a.parse("x"));
  with_xy.push_back(a.parse("y"));
  CHECK(span_rank(with_xy) == 2);
  CHECK(n.method == "trace-form");

  CHECK(nilradical(fd_split(kQ, 2)).basis.empty());
  const auto c = fd_univariate_quotient(kQ, "x", ints(kQ, {0, 0, 0, 1}));
  const auto nc = nilradical(c);
  CHECK(nc.basis.size() == 2);
  for (const auto& v : nc.basis) CHECK(vec_is_zero(c.power(v, 3)));

  const auto gf = FieldDescriptor::prime(2);
  const auto g = fd_univariate_quotient(gf, "x", ints(gf, {1, 0, 1}));  // x^2 + 1 = (x + 1)^2
  const auto ng = nilradical(g);
  CHECK(ng.method == "frobenius-kernel");
  CHECK(ng.basis.size() == 1);
  CHECK(vec_is_zero(g.power(ng.basis[0], 2)));
}

TEST_CASE("von Neumann regularity") {
  CHECK(is_vnr(fd_split(kQ, 3)));
  CHECK_FALSE(is_vnr(fd_univariate_quotient(kQ, "x", ints(kQ, {0, 0, 1}))));
  CHECK(is_vnr(fd_univariate_quotient(kQ, "x", ints(kQ, {-1, 0, 1}))));
  CHECK(is_vnr(fd_univariate_quotient(kQ, "x", ints(kQ, {-2, 0, 1}))));
  CHECK_FALSE(is_vnr(ex19()));
}

TEST_CASE("local decompositions") {
  const auto split = fd_univariate_quotient(kQ, "x", ints(kQ, {-1, 0, 1}));
  const auto d = local_decomposition(split);
  CHECK(d.status == "DECOMPOSED");
  REQUIRE(d.factors.size() == 2);
  CHECK(d.sum_is_one);
  CHECK(d.orthogonal);
  CHECK(d.idempotent);
  std::set<std::string> es;
  for (const auto& f : d.factors) es.insert(split.to_string(f.idempotent));
  CHECK(es == std::set<std::string>{"1/2 + 1/2*x", "1/2 - 1/2*x"});

  const auto l = local_decomposition(ex19());
  CHECK(l.factors.size() == 1);
  CHECK(l.sum_is_one);

  const auto field = local_decomposition(fd_univariate_quotient(kQ, "x", ints(kQ, {-2, 0, 1})));
  CHECK(field.status == "NOT_DECOMPOSED");
  REQUIRE(field.factors.size() == 1);
  CHECK(field.factors[0].residue_degree == 2);

  const auto k3 = local_decomposition(fd_split(kQ, 3));
  CHECK(k3.factors.size() == 3);
  // Idempotent laws checked independently of the flags.
  const auto s3 = fd_split(kQ, 3);
  Vec sum = s3.zero();
  for (std::size_t i = 0; i < k3.factors.size(); ++i) {
    const Vec& e = k3.factors[i].idempotent;
    sum = s3.add(sum, e);
    CHECK(s3.mul(e, e) == e);
    for (std::size_t j = i + 1; j < k3.factors.size(); ++j) CHECK(vec_is_zero(s3.mul(e, k3.factors[j].idempotent)));
  }
  CHECK(sum == s3.unit());
}

TEST_CASE("unit generation") {
  const auto lau = units_generated(build_family(laurent_spec(2))->presentation());
  CHECK(lau.status == Tri::True);
  CHECK(lau.witness.size() == 2);
  CHECK(units_generated(build_family(poly_spec(2))->presentation()).status == Tri::False);
  CHECK(units_generated(fd_univariate_quotient(kQ, "x", ints(kQ, {0, 0, 1}))).status == Tri::True);
  const auto gf = FieldDescriptor::prime(2);
  CHECK(units_generated(fd_univariate_quotient(gf, "x", ints(gf, {0, 1, 1}))).status == Tri::False);
}

TEST_CASE("generating sets of polynomial extensions") {
  const auto k = fd_split(kQ, 1);
  CHECK(verify_generating_set(k, 1, {"t + 3"}, 4).generates);
  const auto dual = fd_univariate_quotient(kQ, "x", ints(kQ, {0, 0, 1}));
  CHECK(verify_generating_set(dual, 1, {"t + x*t^2"}, 4).generates);
  for (int cap : {2, 4, 6}) CHECK_FALSE(verify_generating_set(k, 1, {"t^2"}, cap).generates);
  CHECK(verify_generating_set(k, 2, {"t1 + t2", "t2"}, 3).generates);
}

TEST_CASE("morphisms and bounded isomorphisms") {
  for (const char* file : {"ex5_5_1.alg", "ex5_5_2.alg"}) {
    CAPTURE(file);
    const Document d = parse_document(read_file(fixture_path(file)));
    const Morphism& phi = d.morphism("phi");
    const Morphism& psi = d.morphism("psi");
    CHECK(verify_morphism(phi).ok);
    CHECK(verify_morphism(psi).ok);
    const auto iso = verify_isomorphism_bounded(phi, psi, 4);
    CHECK(iso.ok);
    CHECK(iso.source_dim == iso.target_dim);
    CHECK(iso.source_dim == 35);
    // Base algebras differ: A is noncommutative, B commutative.
    CHECK(noncommutativity_witness(*d.algebra("A")).has_value());
    CHECK_FALSE(noncommutativity_witness(*d.algebra("B")).has_value());
  }

  const auto kx = build_family(poly_spec(1));
  Morphism sq;
  sq.source = kx;
  sq.target = kx;
  sq.images = {kx->parse("x^2")};
  sq.inverse_images.resize(1);
  CHECK(verify_morphism(sq).ok);
  const auto bad = verify_isomorphism_bounded(sq, identity_on_names(kx, kx), 4);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());

  const auto w = build_family(weyl1_spec());
  Morphism wrong;
  wrong.source = w;
  wrong.target = kx;
  wrong.images = {kx->gen(0), kx->one()};
  wrong.inverse_images.resize(2);
  CHECK_FALSE(verify_morphism(wrong).ok);
}

TEST_CASE("counterexample registry") {
  const auto& reg = counterexample_registry();
  std::set<std::string> ids;
  for (const auto& fx : reg) {
    ids.insert(fx.id);
    CAPTURE(fx.id);
    const auto check = fx.verify();
    CHECK(check.pass);
    CHECK_FALSE(fx.refutes.empty());
  }
  CHECK(ids.count("ex5_5_1") == 1);
  CHECK(ids.count("ex5_5_2") == 1);
  // A fixture refuting P also refutes everything with a solid path into P.
  const auto& dag = implication_dag();
  for (const auto& e : dag.dotted) {
    std::set<Property> refuted;
    for (const auto& fx : reg)
      if (fx.id == e.fixture) refuted.insert(fx.refutes.begin(), fx.refutes.end());
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& s : dag.solid)
        if (refuted.count(s.to) && refuted.insert(s.from).second) grew = true;
    }
    CHECK_MESSAGE(refuted.count(e.to) == 1, (property_name(e.from) + " -/-> " + property_name(e.to)));
  }
  CHECK_FALSE(reg.front().verify(FieldDescriptor::prime(3)).pass);
}

TEST_CASE("certification of the Weyl algebra") {
  const auto w = build_family(weyl1_spec());
  const auto rep = certify(w);
  CHECK(rep.verdicts.size() == all_properties().size());
  CHECK(rule_fired(rep, "R1"));
  CHECK(rule_fired(rep, "R9"));
  CHECK(verdict(rep, Property::UniversallyMoritaCancellative).status == VerdictStatus::Proved);
  CHECK(verdict(rep, Property::SigmaCancellativeStrong).status != VerdictStatus::Inconclusive);
  const auto& delta = verdict(rep, Property::DeltaCancellative);
  CHECK(delta.status == VerdictStatus::RefutedByExample);
  bool cites = false;
  for (const auto& e : delta.evidence) cites = cites || e.kind.find("ex5_5_1") != std::string::npos;
  CHECK((cites || delta.rule.find("ex5_5_1") != std::string::npos));
  CHECK(is_dag_closed(rep));
  CHECK(audit_replay(w, rep).ok);
}

TEST_CASE("certification of the minus-one plane with ML_FULL") {
  const auto m = with_flag(build_family(minus_one_plane_spec()), Flag::MlFull);
  const auto rep = certify(m);
  CHECK(rule_fired(rep, "R10"));
  CHECK(verdict(rep, Property::DeltaCancellative).status == VerdictStatus::Asserted);
  CHECK(verdict(rep, Property::SigmaCancellative).status == VerdictStatus::RefutedByExample);
  CHECK(verdict(rep, Property::StronglyCancellative).status == VerdictStatus::Asserted);
  CHECK(is_dag_closed(rep));
  CHECK(audit_replay(m, rep).ok);

  const auto plain = certify(build_family(minus_one_plane_spec()));
  CHECK_FALSE(rule_fired(plain, "R10"));
}

TEST_CASE("certification of a root-of-unity torus with AZUMAYA") {
  const auto t = with_flag(build_family(quantum_torus_root_spec(2, 3, {{0, 1}, {-1, 0}})), Flag::Azumaya);
  const auto rep = certify(t);
  CHECK(rule_fired(rep, "R11"));
  CHECK(verdict(rep, Property::DerivedCancellativeStrong).status != VerdictStatus::Inconclusive);
  CHECK(verdict(rep, Property::StronglyCancellative).status != VerdictStatus::Inconclusive);
  CHECK(is_dag_closed(rep));
  CHECK(audit_replay(t, rep).ok);
}

TEST_CASE("asserting more flags never weakens a verdict") {
  const std::vector<std::pair<AlgebraPtr, Flag>> cases{
      {build_family(minus_one_plane_spec()), Flag::MlFull},
      {build_family(quantum_torus_root_spec(2, 3, {{0, 1}, {-1, 0}})), Flag::Azumaya},
      {build_family(laurent_spec(2)), Flag::Azumaya},
      {build_family(weyl1_spec()), Flag::Azumaya},
  };
  for (const auto& [a, flag] : cases) {
    CAPTURE(a->presentation().name);
    const auto before = certify(a);
    const auto after = certify(with_flag(a, flag));
    for (Property p : all_properties()) {
      CAPTURE(property_name(p));
      const auto s0 = verdict(before, p).status;
      const auto s1 = verdict(after, p).status;
      if (s0 != VerdictStatus::Inconclusive) CHECK(s1 == s0);
    }
  }
}

TEST_CASE("assertions contradicting a registry fixture are rejected") {
  // The Weyl algebra has locally nilpotent derivations, so ML_FULL is false for it.
  try {
    (void)certify(with_flag(build_family(weyl1_spec()), Flag::MlFull));
    FAIL("contradictory assertion accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
  }
}

TEST_CASE("the implication closure respects every solid edge") {
  const auto rep = certify(build_family(laurent_spec(2)));
  CHECK(is_dag_closed(rep));
  CertifyReport broken = rep;
  for (auto& v : broken.verdicts)
    if (v.property == Property::Cancellative) v.status = VerdictStatus::Inconclusive;
  bool any_positive = false;
  for (const auto& v : rep.verdicts)
    any_positive = any_positive || (v.property == Property::StronglyCancellative && v.status != VerdictStatus::Inconclusive);
  if (any_positive) CHECK_FALSE(is_dag_closed(broken));
}
