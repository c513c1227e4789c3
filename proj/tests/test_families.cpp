#include <doctest.h>

#include "oracles.hpp"
#include "skewcalc/document.hpp"
#include "skewcalc/families.hpp"
#include "skewcalc/invariants.hpp"
#include "skewcalc/ore.hpp"
#include "test_support.hpp"

using namespace skewcalc;

namespace {

const FieldDescriptor R = FieldDescriptor::ratfunc();

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("every catalog algebra validates and carries the structural flags") {
  for (const auto& [label, alg] : testing_support::family_catalog()) {
    CAPTURE(label);
    CHECK(alg->validation().pass);
    CHECK(validate_presentation(alg->presentation()).pass);
    for (Flag f : {Flag::Domain, Flag::Noetherian, Flag::Affine, Flag::Stratiform}) {
      const FlagEntry* e = alg->presentation().find_flag(f);
      REQUIRE(e != nullptr);
      CHECK(e->provenance.find("family catalog") != std::string::npos);
    }
  }
  const auto w = build_family(weyl1_spec());
  CHECK(w->presentation().has_flag(Flag::Simple));
  CHECK(w->presentation().has_flag(Flag::UnitsTrivial));
  const auto wp = build_family(weyl1_spec(FieldDescriptor::prime(3)));
  CHECK_FALSE(wp->presentation().has_flag(Flag::Simple));
}

TEST_CASE("builds are deterministic") {
  for (const auto& spec : {poly_spec(3), weyl1_spec(), quantum_weyl1_spec(Scalar::q(R)), localized_qweyl1_spec(Scalar::q(R)),
                           quantum_torus_root_spec(3, 4, {{0, 1, 2}, {-1, 0, 3}, {-2, -3, 0}})}) {
    const auto a = build_family(spec), b = build_family(spec);
    CHECK(same_presentation(a->presentation(), b->presentation()));
    CHECK(a->presentation().notes == b->presentation().notes);
  }
}

TEST_CASE("quantum Weyl and quantum torus rules") {
  const Scalar q = Scalar::q(R);
  const auto a = build_family(quantum_weyl1_spec(q));
  CHECK(a->presentation().names() == std::vector<std::string>{"x", "y"});
  CHECK(a->leading(1, 0) == q.inverse());
  Terms tail;
  add_term(tail, Monomial(2), -q.inverse());
  CHECK(a->tail(1, 0) == tail);
  CHECK((a->parse("x*y") - q * a->parse("y*x")) == a->one());

  const auto t = build_family(quantum_torus_spec(uniform_q_matrix(2, q)));
  CHECK(t->presentation().gens[0].invertible);
  CHECK(t->presentation().gens[1].invertible);
  // x_j x_i = q_ij x_i x_j with q_12 = q.
  CHECK(t->parse("x2*x1") == q * t->parse("x1*x2"));
  CHECK(t->parse("x1^-1*x1") == t->one());
  CHECK(t->parse("x2^-1*x1") == q.inverse() * t->parse("x1*x2^-1"));
}

TEST_CASE("generalized Weyl algebra relations") {
  const Scalar q = Scalar::q(R);
  const Scalar one = Scalar::one(R);
  const auto g = build_family(gwa_spec({{1, one}, {0, -one}}, q));
  CHECK(g->presentation().names() == std::vector<std::string>{"x", "y", "h"});
  CHECK(g->presentation().gens[2].invertible);
  // a(h) = h - 1: xy = a(qh), yx = a(h).
  CHECK(g->parse("x*y") == q * g->gen("h") - g->one());
  CHECK(g->parse("y*x") == g->gen("h") - g->one());
  CHECK(g->parse("x*h") == q * g->parse("h*x"));
  CHECK(g->parse("y*h") == q.inverse() * g->parse("h*y"));
  bool noted = false;
  for (const auto& n : g->presentation().notes) noted = noted || n.find("x*h = q*h*x") != std::string::npos;
  CHECK(noted);

  const auto g2 = build_family(gwa_spec({{-1, one}, {0, Scalar::from_int(R, 2)}, {1, q}}, q));
  CHECK(g2->parse("y*x") == g2->parse("h^-1") + g2->scalar(Scalar::from_int(R, 2)) + q * g2->gen("h"));
  CHECK(code_of([&] { (void)build_family(gwa_spec({{2, one}}, q)); }) == ErrorCode::UnsupportedGwa);
}

TEST_CASE("localized quantum Weyl algebra") {
  for (const auto& f : {R, FieldDescriptor::cyclotomic(3), FieldDescriptor::cyclotomic(5)}) {
    CAPTURE(f.to_string());
    const Scalar q = Scalar::q(f);
    const Scalar one = Scalar::one(f);
    const auto b = build_family(localized_qweyl1_spec(q));
    const Element x = b->gen("x"), y = b->gen("y"), z = b->gen("z");
    CHECK((x * y - y * x - z).is_zero());
    CHECK(z * b->gen_inverse(2) == b->one());
    CHECK(((q - one) * (y * x) - (z - b->one())).is_zero());

    // c with z x = c x z, read off in A_1^q by the word rewriter.
    const auto a = build_family(quantum_weyl1_spec(q));
    oracle::WordRewriter rw(a->presentation());
    const Terms za = a->parse("x*y - y*x").terms();
    Terms xa;
    add_term(xa, Monomial(std::vector<int>{1, 0}), one);
    const Terms zx = rw.product({za, xa});
    const Terms xz = rw.product({xa, za});
    const Monomial lead(std::vector<int>{2, 1});
    const Scalar c = zx.at(lead) / xz.at(lead);
    CHECK(zx == scale_terms(xz, c));
    CHECK(z * x == c * (x * z));
    const Scalar d = c.inverse();
    CHECK(z * y == d * (y * z));
  }
  CHECK(code_of([] { (void)build_family(localized_qweyl1_spec(Scalar::one(R))); }) == ErrorCode::BadParams);
  CHECK(code_of([] { (void)build_family(quantum_weyl1_spec(Scalar::one(R))); }) == ErrorCode::BadParams);
  CHECK(code_of([] { (void)build_family(quantum_weyl1_spec(Scalar::zero(R))); }) == ErrorCode::BadParams);
}

TEST_CASE("finite-rank quantum Weyl algebra") {
  const Scalar q = Scalar::q(R);
  const auto one = build_family(finite_rank_quantum_weyl_spec({q}));
  const auto a = build_family(quantum_weyl1_spec(q));
  CHECK(one->leading(1, 0) == a->leading(1, 0));
  CHECK(one->tail(1, 0) == a->tail(1, 0));
  const auto two = build_family(finite_rank_quantum_weyl_spec({q, q * q}));
  CHECK((two->gen("x1") * two->gen("y2") - two->gen("y2") * two->gen("x1")).is_zero());
  CHECK(two->parse("x2*y2 - q^2*y2*x2") == two->one());
  CHECK(two->parse("x1*y1 - q*y1*x1") == two->one());
}

TEST_CASE("parameter errors") {
  const auto Q = FieldDescriptor::rational();
  CHECK(code_of([] { (void)build_family(poly_spec(0)); }) == ErrorCode::BadParams);
  CHECK(code_of([&] {
          (void)build_family(skew_poly_spec({{Scalar::one(Q), Scalar::from_int(Q, 2)}, {Scalar::from_int(Q, 2), Scalar::one(Q)}}));
        }) == ErrorCode::BadParams);
  CHECK(code_of([] { (void)quantum_torus_root_spec(2, 3, {{0, 1}, {1, 0}}); }) == ErrorCode::BadParams);
  CHECK(code_of([&] { (void)build_family(finite_rank_quantum_weyl_spec({Scalar::zero(R)})); }) == ErrorCode::BadParams);
}

TEST_CASE("stratiform lengths") {
  CHECK(stratiform_length(strat_tower(build_family(poly_spec(3))->presentation())) == 3);
  CHECK(stratiform_length(strat_tower(build_family(laurent_spec(2))->presentation())) == 2);
  CHECK(stratiform_length(strat_tower(build_family(weyl1_spec())->presentation())) == 2);
  const auto t2 = strat_tower(build_family(quantum_torus_spec(uniform_q_matrix(2, Scalar::q(R))))->presentation());
  CHECK(stratiform_length(t2) == 2);
  CHECK(stratiform_length(tower_compose(t2, 3)) == 5);
  CHECK(stratiform_length(StratTower{}) == 0);
}
