#include <doctest.h>

#include "skewcalc/error.hpp"
#include "skewcalc/expr.hpp"
#include "skewcalc/scalar.hpp"
#include "test_support.hpp"

using namespace skewcalc;
using testing_support::Gen;
using testing_support::test_seed;

namespace {

std::vector<FieldDescriptor> all_fields() {
  return {FieldDescriptor::rational(), FieldDescriptor::prime(2),      FieldDescriptor::prime(5),
          FieldDescriptor::prime(101), FieldDescriptor::ratfunc(),     FieldDescriptor::cyclotomic(2),
          FieldDescriptor::cyclotomic(3), FieldDescriptor::cyclotomic(4), FieldDescriptor::cyclotomic(6)};
}

/// Random value with a denominator when the field allows one.
Scalar random_value(Gen& g, const FieldDescriptor& f) {
  Scalar c = Scalar::from_int(f, g.uniform(-9, 9));
  if (f.has_q()) c = c + Scalar::from_int(f, g.uniform(-3, 3)) * Scalar::q(f).pow(g.uniform(0, 3));
  if (g.coin()) {
    Scalar d = Scalar::from_int(f, g.uniform(1, 7));
    if (f.has_q() && g.coin()) d = d + Scalar::q(f);
    if (!d.is_zero()) c = c / d;
  }
  return c;
}

}  // namespace

TEST_CASE("field axioms hold on random values") {
  Gen g(test_seed());
  for (const auto& f : all_fields()) {
    CAPTURE(f.to_string());
    for (int k = 0; k < 60; ++k) {
      const Scalar a = random_value(g, f), b = random_value(g, f), c = random_value(g, f);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + Scalar::zero(f) == a);
      CHECK(a * Scalar::one(f) == a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK(a.canonicalized() == a);
      CHECK(a.to_string() == a.canonicalized().to_string());
    }
  }
}

TEST_CASE("cyclotomic q has exact multiplicative order") {
  for (std::uint64_t ell : {2u, 3u, 4u, 5u, 6u, 8u, 12u}) {
    const auto f = FieldDescriptor::cyclotomic(ell);
    const Scalar q = Scalar::q(f);
    CAPTURE(ell);
    CHECK(q.pow(static_cast<long>(ell)).is_one());
    for (std::uint64_t k = 1; k < ell; ++k) CHECK_FALSE(q.pow(static_cast<long>(k)).is_one());
  }
}

TEST_CASE("scalar arithmetic examples") {
  const auto R = FieldDescriptor::ratfunc();
  const Scalar q = Scalar::q(R);
  const Scalar one = Scalar::one(R);
  CHECK((one / (q - one) + (-one) / (q - one)).is_zero());

  const auto C3 = FieldDescriptor::cyclotomic(3);
  const Scalar z = Scalar::q(C3);
  CHECK((z * z + z + Scalar::one(C3)).is_zero());
  const Scalar lhs = (Scalar::one(C3) - z).pow(3);
  // Oracle: expand binomially with q^3 = 1 by hand.
  const Scalar rhs = Scalar::from_int(C3, 3) * (z * z - z);
  CHECK(lhs == rhs);
}

TEST_CASE("scalar parsing examples") {
  CHECK(parse_scalar(FieldDescriptor::rational(), "-3/6") == Scalar::from_rational(FieldDescriptor::rational(), mpq_class(-1, 2)));
  CHECK(parse_scalar(FieldDescriptor::rational(), "-3/6").to_string() == "-1/2");
  const auto R = FieldDescriptor::ratfunc();
  CHECK(parse_scalar(R, "(q^2-1)/(q-1)") == Scalar::q(R) + Scalar::one(R));
  CHECK(parse_scalar(FieldDescriptor::prime(5), "7") == Scalar::from_int(FieldDescriptor::prime(5), 2));
  CHECK(parse_scalar(FieldDescriptor::prime(5), "1/3") * Scalar::from_int(FieldDescriptor::prime(5), 3) ==
        Scalar::one(FieldDescriptor::prime(5)));
}

TEST_CASE("printing round-trips through the parser") {
  Gen g(test_seed() + 1);
  for (const auto& f : all_fields())
    for (int k = 0; k < 40; ++k) {
      const Scalar a = random_value(g, f);
      CAPTURE(a.to_string());
      CHECK(parse_scalar(f, a.to_string()) == a);
    }
}

TEST_CASE("scalar errors") {
  const auto Q = FieldDescriptor::rational();
  CHECK_THROWS_AS(Scalar::q(Q), Error);
  try {
    (void)(Scalar::one(Q) / Scalar::zero(Q));
    FAIL("division by zero accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  try {
    (void)(Scalar::one(Q) + Scalar::one(FieldDescriptor::prime(3)));
    FAIL("mixed fields accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }
  CHECK_THROWS_AS(FieldDescriptor::prime(4), Error);
  CHECK_THROWS_AS(FieldDescriptor::cyclotomic(1), Error);
  CHECK_THROWS_AS(parse_scalar(Q, "1 +"), SyntaxError);
  CHECK(Scalar::from_int(FieldDescriptor::cyclotomic(2), 1) + Scalar::q(FieldDescriptor::cyclotomic(2)) ==
        Scalar::zero(FieldDescriptor::cyclotomic(2)));
}
