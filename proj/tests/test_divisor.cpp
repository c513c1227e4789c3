#include <doctest.h>

#include "skewcalc/cancel.hpp"
#include "skewcalc/divisor.hpp"
#include "skewcalc/families.hpp"
#include "skewcalc/invariants.hpp"
#include "skewcalc/ore.hpp"
#include "test_support.hpp"

using namespace skewcalc;
using testing_support::Gen;
using testing_support::test_seed;

namespace {

const FieldDescriptor R = FieldDescriptor::ratfunc();

AlgebraPtr a1q() { return build_family(quantum_weyl1_spec(Scalar::q(R))); }

/// True when x and y are nonzero and proportional.
bool proportional(const Element& x, const Element& y) {
  if (x.is_zero() || y.is_zero()) return false;
  const auto& [m, c] = *x.terms().begin();
  const Scalar d = y.coeff(m);
  return !d.is_zero() && c.inverse() * x == d.inverse() * y;
}

bool has_hit(const std::vector<SubwordHit>& hits, const Element& a, const Element& g, const Element& b) {
  for (const auto& h : hits)
    if (proportional(h.a, a) && proportional(h.g, g) && proportional(h.b, b)) return true;
  return false;
}

bool same_span(const Algebra& alg, const std::vector<Element>& a, const std::vector<Element>& b) {
  Echelon ea(alg.field()), eb(alg.field());
  for (const auto& e : a) ea.insert(e.terms());
  for (const auto& e : b) eb.insert(e.terms());
  if (ea.rank() != eb.rank()) return false;
  for (const auto& e : b)
    if (!ea.contains(e.terms())) return false;
  return true;
}

ClosureCaps caps(int degree_cap, int rounds) {
  ClosureCaps c;
  c.degree_cap = degree_cap;
  c.max_rounds = rounds;
  return c;
}

}  // namespace

TEST_CASE("subword search examples") {
  const auto a = a1q();
  const Element z = a->parse("x*y - y*x");
  const Scalar q = Scalar::q(R);
  const auto hits = subword_search(*a, z - a->one(), SubwordCaps{}, 3);
  CHECK(has_hit(hits, a->gen("y"), (q - Scalar::one(R)) * a->gen("x"), a->one()));
  for (const auto& h : hits) CHECK(h.verify());

  const auto t2 = build_family(quantum_torus_spec(uniform_q_matrix(2, Scalar::q(R))));
  const auto th = subword_search(*t2, t2->one(), SubwordCaps{}, 2);
  CHECK(has_hit(th, t2->gen("x1"), t2->gen_inverse(0), t2->one()));
  CHECK(has_hit(th, t2->one(), t2->gen_inverse(1), t2->gen("x2")));
  for (const auto& h : th) CHECK(h.verify());

  const auto kx = build_family(poly_spec(1));
  const auto kh = subword_search(*kx, kx->parse("x^2"), SubwordCaps{}, 2);
  CHECK(has_hit(kh, kx->gen(0), kx->one(), kx->gen(0)));
  CHECK(has_hit(kh, kx->gen(0), kx->gen(0), kx->one()));
  CHECK(has_hit(kh, kx->one(), kx->parse("x^2"), kx->one()));
  for (const auto& h : kh) {
    CHECK(h.verify());
    CHECK(h.g.terms().size() == 1);
  }

  Presentation p = kx->presentation();
  p.flags.clear();
  const auto nodomain = Algebra::create(p);
  try {
    (void)subword_search(*nodomain, nodomain->gen(0), SubwordCaps{}, 2);
    FAIL("subword search without DOMAIN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotADomain);
  }
}

TEST_CASE("subword hits verify on random inputs") {
  Gen g(test_seed());
  for (const auto& [label, alg] : testing_support::family_catalog()) {
    CAPTURE(label);
    for (int k = 0; k < 3; ++k) {
      const Element f = g.element(*alg, 2, 2);
      for (const auto& h : subword_search(*alg, f, SubwordCaps{}, 2)) {
        CHECK(h.verify());
        CHECK(h.g.degree() <= 2);
      }
    }
  }
}

TEST_CASE("bounded subalgebra closures") {
  const auto k2 = build_family(poly_spec(2));
  CHECK(subalgebra_closure_bounded(*k2, {k2->gen(0), k2->gen(1)}, 3).size() == 10);

  const auto a = a1q();
  const Element z = a->parse("x*y - y*x");
  // z has degree 2, so the cap counts z^k at degree 2k.
  CHECK(same_span(*a, subalgebra_closure_bounded(*a, {z}, 3), {a->one(), z}));
  CHECK(same_span(*a, subalgebra_closure_bounded(*a, {z}, 6), {a->one(), z, z * z, z * z * z}));

  const auto m = build_family(minus_one_plane_spec());
  const auto mb = subalgebra_closure_bounded(*m, {m->parse("x^2"), m->parse("y^2")}, 4);
  CHECK(same_span(*m, mb, center_bounded(*m, 4).basis));
}

TEST_CASE("divisor closure examples") {
  const auto a = a1q();
  const auto ra = divisor_closure(*a, {a->parse("x*y - y*x")}, caps(3, 4));
  CHECK(ra.status == ClosureStatus::Full);
  CHECK(ra.rounds.size() <= 2);
  bool saw_x = false, saw_y = false;
  for (const auto& r : ra.rounds)
    for (const auto& h : r.new_subwords) {
      saw_x = saw_x || proportional(h.g, a->gen("x"));
      saw_y = saw_y || proportional(h.g, a->gen("y"));
    }
  CHECK(saw_x);
  CHECK(saw_y);
  CHECK(ra.certified_basis.size() == a->filtration_basis(3).size());

  const auto t2 = build_family(quantum_torus_spec(uniform_q_matrix(2, Scalar::q(R))));
  const auto rt = divisor_closure(*t2, {t2->one()}, caps(2, 2));
  CHECK(rt.status == ClosureStatus::Full);
  CHECK(rt.rounds.size() == 1);

  const auto b = build_family(localized_qweyl1_spec(Scalar::q(R)));
  CHECK(divisor_closure(*b, {b->one()}, caps(3, 3)).status == ClosureStatus::Full);
}

TEST_CASE("controlling sets") {
  const auto a = a1q();
  CHECK(is_controlling(*a, {a->parse("x*y - y*x")}, caps(3, 4)).controlling);
  const auto kx = build_family(poly_spec(1));
  CHECK(is_controlling(*kx, {kx->gen(0)}, caps(3, 4)).controlling);
  const auto k2 = build_family(poly_spec(2));
  for (int cap : {2, 3, 4}) {
    const auto r = is_controlling(*k2, {k2->gen(0)}, caps(cap, 4));
    CHECK_FALSE(r.controlling);
    CHECK(r.report.status == ClosureStatus::Inconclusive);
    std::vector<Element> powers{k2->one()};
    for (int d = 1; d <= cap; ++d) powers.push_back(powers.back() * k2->gen(0));
    CHECK(same_span(*k2, r.report.certified_basis, powers));
  }
}

TEST_CASE("closure is idempotent on certified bases") {
  const auto a = a1q();
  const auto b = build_family(localized_qweyl1_spec(Scalar::q(R)));
  const auto k2 = build_family(poly_spec(2));
  const std::vector<std::pair<AlgebraPtr, Element>> cases{{a, a->parse("x*y - y*x")}, {b, b->one()}, {k2, k2->gen(0)}};
  for (const auto& [alg, f] : cases) {
    const auto r1 = divisor_closure(*alg, {f}, caps(3, 4));
    const auto r2 = divisor_closure(*alg, r1.certified_basis, caps(3, 4));
    CHECK(r2.status == r1.status);
    CHECK(same_span(*alg, r1.certified_basis, r2.certified_basis));
  }
}

TEST_CASE("closure is stable under a central Ore extension") {
  const auto a = a1q();
  const std::vector<Element> id{a->gen(0), a->gen(1)};
  const auto c = ore_extend(*a, "t", id, {a->zero(), a->zero()}, false);
  const auto ra = divisor_closure(*a, {a->parse("x*y - y*x")}, caps(3, 4));
  const auto rc = divisor_closure(*c, {c->parse("x*y - y*x")}, caps(3, 4));
  std::vector<Element> lifted;
  for (const auto& e : ra.certified_basis) lifted.push_back(c->element(extend_terms(e.terms(), 3)));
  for (const auto& e : rc.certified_basis)
    for (const auto& [m, coef] : e.terms()) CHECK(m.e[2] == 0);
  CHECK(same_span(*c, lifted, rc.certified_basis));
}

TEST_CASE("closure is equivariant under an automorphism") {
  const auto a = a1q();
  const Scalar two = Scalar::from_int(R, 2);
  Morphism phi;
  phi.source = a;
  phi.target = a;
  phi.images = {two * a->gen("x"), two.inverse() * a->gen("y")};
  phi.inverse_images.resize(2);
  CHECK(verify_morphism(phi).ok);
  const Element f = a->parse("x*y + y");
  const auto r1 = divisor_closure(*a, {f}, caps(3, 4));
  const auto r2 = divisor_closure(*a, {phi.apply(f)}, caps(3, 4));
  CHECK(r1.status == r2.status);
  std::vector<Element> mapped;
  for (const auto& e : r1.certified_basis) mapped.push_back(phi.apply(e));
  CHECK(same_span(*a, mapped, r2.certified_basis));
}

TEST_CASE("tensor of closures from 1") {
  const auto t2 = build_family(quantum_torus_spec(uniform_q_matrix(2, Scalar::q(R))));
  const auto l1 = build_family(laurent_spec(1, R));
  const auto t = tensor_product(*t2, *l1, true);
  CHECK(divisor_closure(*t2, {t2->one()}, caps(2, 2)).status == ClosureStatus::Full);
  CHECK(divisor_closure(*l1, {l1->one()}, caps(2, 2)).status == ClosureStatus::Full);
  CHECK(divisor_closure(*t, {t->one()}, caps(2, 3)).status == ClosureStatus::Full);
}
