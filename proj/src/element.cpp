#include "skewcalc/algebra.hpp"

namespace skewcalc {

Element::Element(AlgebraPtr alg, Terms t) : alg_(std::move(alg)), t_(std::move(t)) {}

void Element::check_same(const Element& b) const {
  if (!alg_ || !b.alg_) throw Error(ErrorCode::Internal, "element without algebra");
  if (alg_ != b.alg_) throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras");
}

bool Element::is_scalar() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Scalar Element::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Scalar::zero(alg_->field()) : it->second;
}

std::string Element::to_string() const { return terms_to_string(t_, alg_->presentation().names()); }

Element Element::operator-() const { return Element(alg_, scale_terms(t_, -Scalar::one(alg_->field()))); }

Element operator+(const Element& a, const Element& b) {
  a.check_same(b);
  Terms r = a.t_;
  add_scaled(r, b.t_, Scalar::one(a.alg_->field()));
  return Element(a.alg_, std::move(r));
}

Element operator-(const Element& a, const Element& b) {
  a.check_same(b);
  Terms r = a.t_;
  add_scaled(r, b.t_, -Scalar::one(a.alg_->field()));
  return Element(a.alg_, std::move(r));
}

Element operator*(const Element& a, const Element& b) {
  a.check_same(b);
  return Element(a.alg_, a.alg_->mul(a.t_, b.t_));
}

Element operator*(const Scalar& c, const Element& a) {
  if (c.field() != a.alg_->field()) throw Error(ErrorCode::FieldMismatch, "scalar from another field");
  return Element(a.alg_, scale_terms(a.t_, c));
}

bool operator==(const Element& a, const Element& b) { return a.alg_ == b.alg_ && a.t_ == b.t_; }

Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

bool is_unit_monomial(const Element& a) {
  if (a.terms().size() != 1) return false;
  const Monomial& m = a.terms().begin()->first;
  const auto& gens = a.algebra().presentation().gens;
  for (std::size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i] != 0 && !gens[i].invertible) return false;
  return true;
}

Element unit_monomial_inverse(const Element& a) {
  if (!is_unit_monomial(a))
    throw Error(ErrorCode::NegativeExponent, "negative power of a non-unit element " + a.to_string());
  const auto& [m, c] = *a.terms().begin();
  const Algebra& alg = a.algebra();
  Element acc = alg.scalar(c.inverse());
  for (int i = static_cast<int>(m.e.size()) - 1; i >= 0; --i) {
    if (m.e[i] == 0) continue;
    Monomial part(alg.size());
    part.e[i] = -m.e[i];
    acc = acc * alg.monomial(part);
  }
  return acc;
}

Element power(const Element& a, long n) {
  Element base = n < 0 ? unit_monomial_inverse(a) : a;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Element r = a.algebra().one();
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

}  // namespace skewcalc
