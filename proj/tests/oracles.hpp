#pragma once

// Independent reference computations. Nothing here calls the rewriting
// engine's multiplication; only the raw rule data of a presentation is read.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "skewcalc/presentation.hpp"

namespace oracle {

using skewcalc::Monomial;
using skewcalc::Presentation;
using skewcalc::Scalar;
using skewcalc::Terms;

/// Letter (generator index, +1 or -1).
using Letter = std::pair<int, int>;
using Word = std::vector<Letter>;
using WordSum = std::map<Word, Scalar>;

inline Word monomial_word(const Monomial& m) {
  Word w;
  for (std::size_t i = 0; i < m.e.size(); ++i)
    for (int k = 0; k < std::abs(m.e[i]); ++k) w.emplace_back(static_cast<int>(i), m.e[i] > 0 ? 1 : -1);
  return w;
}

inline void add_word(WordSum& s, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = s.find(w);
  if (it == s.end()) {
    s.emplace(w, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) s.erase(it);
}

enum class Strategy { Leftmost, Rightmost, Random };

/// Plain string rewriting on words using the rule table of a presentation:
///   g_j^s g_i^t -> c^{st} g_i^t g_j^s (+ tail when s = t = 1),
///   g^s g^-s -> 1,  g_i g_{i+1} -> reduction rhs.
class WordRewriter {
 public:
  explicit WordRewriter(const Presentation& p, std::uint64_t seed = 7) : p_(p), rng_(seed) {
    const std::size_t m = p.size();
    lead_.assign(m, std::vector<Scalar>(m, Scalar::one(p.field)));
    tail_.assign(m, std::vector<Terms>(m));
    for (const auto& r : p.rules) {
      lead_[r.j][r.i] = r.leading;
      tail_[r.j][r.i] = r.tail;
    }
    for (const auto& r : p.reductions) red_[r.i] = r.rhs;
  }

  /// Index of a reducible adjacent pair, or nullopt when w is normal.
  std::vector<std::size_t> redexes(const Word& w) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      const auto [a, s] = w[k];
      const auto [b, t] = w[k + 1];
      if (a > b || (a == b && s != t) || (b == a + 1 && s > 0 && t > 0 && red_.count(a))) out.push_back(k);
    }
    return out;
  }

  /// One rewrite step at position k.
  WordSum step(const Word& w, std::size_t k) const {
    const auto [a, s] = w[k];
    const auto [b, t] = w[k + 1];
    Word pre(w.begin(), w.begin() + static_cast<long>(k));
    Word post(w.begin() + static_cast<long>(k) + 2, w.end());
    WordSum out;
    auto emit = [&](const Word& mid, const Scalar& c) {
      Word x = pre;
      x.insert(x.end(), mid.begin(), mid.end());
      x.insert(x.end(), post.begin(), post.end());
      add_word(out, x, c);
    };
    const Scalar one = Scalar::one(p_.field);
    if (a == b) {
      emit({}, one);
    } else if (a > b) {
      const Scalar& c = lead_[a][b];
      const Terms& tail = tail_[a][b];
      if (s > 0 && t > 0) {
        emit({{b, 1}, {a, 1}}, c);
        for (const auto& [m, d] : tail) emit(monomial_word(m), d);
      } else {
        if (!tail.empty()) throw std::logic_error("oracle: inverse letter across a rule with a tail");
        emit({{b, t}, {a, s}}, c.pow(static_cast<long>(s) * t));
      }
    } else {
      for (const auto& [m, d] : red_.at(a)) emit(monomial_word(m), d);
    }
    return out;
  }

  WordSum normal_form(const WordSum& input, Strategy strat = Strategy::Leftmost) {
    WordSum done, todo = input;
    std::size_t guard = 0;
    while (!todo.empty()) {
      if (++guard > 2000000) throw std::runtime_error("oracle: rewriting did not terminate");
      auto it = todo.begin();
      const Word w = it->first;
      const Scalar c = it->second;
      todo.erase(it);
      const auto rs = redexes(w);
      if (rs.empty()) {
        add_word(done, w, c);
        continue;
      }
      std::size_t k = rs.front();
      if (strat == Strategy::Rightmost) k = rs.back();
      if (strat == Strategy::Random) k = rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng_)];
      for (const auto& [x, d] : step(w, k)) add_word(todo, x, c * d);
    }
    return done;
  }

  /// Converts a normal word sum to exponent-vector terms.
  Terms to_terms(const WordSum& s) const {
    Terms t;
    for (const auto& [w, c] : s) {
      Monomial m(p_.size());
      for (const auto& [i, e] : w) m.e[i] += e;
      skewcalc::add_term(t, m, c);
    }
    return t;
  }

  Terms product(const std::vector<Terms>& factors, Strategy strat = Strategy::Leftmost) {
    WordSum acc{{Word{}, Scalar::one(p_.field)}};
    for (const auto& f : factors) {
      WordSum next;
      for (const auto& [w, c] : acc)
        for (const auto& [m, d] : f) {
          Word x = w;
          const Word y = monomial_word(m);
          x.insert(x.end(), y.begin(), y.end());
          add_word(next, x, c * d);
        }
      acc = normal_form(next, strat);
    }
    return to_terms(acc);
  }

 private:
  const Presentation& p_;
  std::mt19937_64 rng_;
  std::vector<std::vector<Scalar>> lead_;
  std::vector<std::vector<Terms>> tail_;
  std::map<int, Terms> red_;
};

/// Number of standard monomials x^i y^j with i + j <= n.
inline std::size_t weyl_dim(int n) { return static_cast<std::size_t>((n + 1) * (n + 2) / 2); }

/// Lattice points of the l1 ball of radius n in Z^2.
inline std::size_t torus2_dim(int n) { return static_cast<std::size_t>(2 * n * n + 2 * n + 1); }

/// Whether x^u commutes with every generator of the quantum torus with
/// q_ij = zeta^{a_ij}: x_i x^u = zeta^{sum_j a_ij u_j} x^u x_i up to the sign convention,
/// decided here by summing exponents of zeta modulo ell.
inline bool torus_central(const std::vector<std::vector<long>>& a, long ell, const std::vector<long>& u) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    long s = 0;
    for (std::size_t j = 0; j < u.size(); ++j) s += a[i][j] * u[j];
    if (((s % ell) + ell) % ell != 0) return false;
  }
  return true;
}

/// Exhaustive index of the central sublattice: count residues u mod ell that are central,
/// index = ell^n / count.
inline long torus_index_bruteforce(const std::vector<std::vector<long>>& a, long ell) {
  const std::size_t n = a.size();
  long total = 1, count = 0;
  for (std::size_t i = 0; i < n; ++i) total *= ell;
  std::vector<long> u(n, 0);
  for (long k = 0; k < total; ++k) {
    long r = k;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = r % ell;
      r /= ell;
    }
    if (torus_central(a, ell, u)) ++count;
  }
  return total / count;
}

}  // namespace oracle
