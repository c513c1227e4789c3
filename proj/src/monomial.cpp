#include "skewcalc/monomial.hpp"

#include <algorithm>
#include <cstdlib>

namespace skewcalc {

long Monomial::degree() const noexcept {
  long d = 0;
  for (int x : e) d += std::abs(x);
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

int Monomial::top() const noexcept {
  for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i)
    if (e[i] != 0) return i;
  return -1;
}

int Monomial::bottom() const noexcept {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) return static_cast<int>(i);
  return -1;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const noexcept {
  const long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return b.e < a.e;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int x : m.e) {
    h ^= static_cast<std::size_t>(static_cast<unsigned int>(x));
    h *= 1099511628211ULL;
  }
  return h;
}

void add_term(Terms& t, const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.emplace(m, c);
  if (inserted) return;
  it->second = it->second + c;
  if (it->second.is_zero()) t.erase(it);
}

void add_scaled(Terms& acc, const Terms& t, const Scalar& c) {
  if (c.is_zero()) return;
  const bool unit = c.is_one();
  for (const auto& [m, v] : t) add_term(acc, m, unit ? v : v * c);
}

Terms scale_terms(const Terms& t, const Scalar& c) {
  Terms r;
  add_scaled(r, t, c);
  return r;
}

long terms_degree(const Terms& t) {
  long d = -1;
  for (const auto& kv : t) d = std::max(d, kv.first.degree());
  return d;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m.e[i] != 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string terms_to_string(const Terms& t, const std::vector<std::string>& names) {
  if (t.empty()) return "0";
  std::vector<std::pair<const Monomial*, const Scalar*>> order;
  for (const auto& [m, c] : t) order.emplace_back(&m, &c);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first->degree() > b.first->degree(); });
  std::string s;
  bool first = true;
  for (const auto& [mp, cp] : order) {
    std::string coeff = cp->to_string();
    bool negative = false;
    if (cp->needs_parens()) {
      coeff = "(" + coeff + ")";
    } else if (!coeff.empty() && coeff[0] == '-') {
      negative = true;
      coeff = coeff.substr(1);
    }
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (mp->is_one()) {
      s += coeff;
    } else {
      if (coeff != "1") s += coeff + "*";
      s += monomial_to_string(*mp, names);
    }
  }
  return s;
}

}  // namespace skewcalc
