#include "skewcalc/qpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "skewcalc/error.hpp"

namespace skewcalc {

QPoly::QPoly(const mpq_class& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

QPoly::QPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

QPoly QPoly::monomial(const mpq_class& coeff, std::size_t degree) {
  QPoly p;
  if (coeff == 0) return p;
  p.coeffs_.assign(degree + 1, mpq_class(0));
  p.coeffs_[degree] = coeff;
  return p;
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool QPoly::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

mpq_class QPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : mpq_class(0); }

std::size_t QPoly::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return k;
  return 0;
}

bool QPoly::is_monomial() const {
  if (coeffs_.empty()) return false;
  return valuation() + 1 == coeffs_.size();
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), mpq_class(0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), mpq_class(0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const mpq_class& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  QPoly r;
  r.coeffs_ = std::move(out);
  r.trim();
  return r;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  const mpq_class lc = leading();
  if (lc == 1) return r;
  for (auto& c : r.coeffs_) c /= lc;
  return r;
}

QPoly QPoly::shift_down(std::size_t k) const {
  if (k >= coeffs_.size()) return {};
  QPoly r;
  r.coeffs_.assign(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end());
  return r;
}

mpq_class QPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void QPoly::divmod(const QPoly& a, const QPoly& divisor, QPoly& quotient, QPoly& remainder) {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  remainder = a;
  quotient = QPoly();
  const long db = divisor.degree();
  if (remainder.degree() < db) return;
  quotient.coeffs_.assign(static_cast<std::size_t>(remainder.degree() - db + 1), mpq_class(0));
  const mpq_class lc = divisor.leading();
  while (!remainder.is_zero() && remainder.degree() >= db) {
    const std::size_t shift = static_cast<std::size_t>(remainder.degree() - db);
    const mpq_class c = remainder.leading() / lc;
    quotient.coeffs_[shift] = c;
    for (std::size_t k = 0; k < divisor.coeffs_.size(); ++k) remainder.coeffs_[k + shift] -= c * divisor.coeffs_[k];
    remainder.trim();
  }
  quotient.trim();
}

QPoly QPoly::rem(const QPoly& a, const QPoly& divisor) {
  QPoly q, r;
  divmod(a, divisor, q, r);
  return r;
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly QPoly::ext_gcd_inverse(const QPoly& a, const QPoly& modulus, QPoly& g) {
  // Invariant: s0*a = r0, s1*a = r1 (mod modulus).
  QPoly r0 = modulus, r1 = rem(a, modulus);
  QPoly s0, s1(mpq_class(1));
  while (!r1.is_zero()) {
    QPoly quo, r;
    divmod(r0, r1, quo, r);
    QPoly s = s0 - quo * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) {
    g = QPoly();
    return QPoly();
  }
  const mpq_class lc = r0.leading();
  g = r0.monic();
  QPoly s = s0;
  s *= mpq_class(1) / lc;
  return rem(s, modulus);
}

std::string rational_to_string(const mpq_class& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpq_class& c = coeffs_[k];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << rational_to_string(mag);
      continue;
    }
    if (mag != 1) os << rational_to_string(mag) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

const QPoly& cyclotomic_polynomial(unsigned long ell) {
  static std::mutex mu;
  static std::map<unsigned long, QPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ell);
  if (it != cache.end()) return it->second;
  // Phi_ell = (q^ell - 1) / prod_{d | ell, d < ell} Phi_d, computed without recursion on the lock.
  std::map<unsigned long, QPoly> local;
  for (unsigned long d = 1; d <= ell; ++d) {
    if (ell % d != 0) continue;
    QPoly p = QPoly::monomial(1, d) - QPoly(mpq_class(1));
    for (auto& [e, phi] : local) {
      if (d % e == 0) {
        QPoly quo, r;
        QPoly::divmod(p, phi, quo, r);
        p = quo;
      }
    }
    local.emplace(d, p);
  }
  return cache.emplace(ell, local.at(ell)).first->second;
}

}  // namespace skewcalc
