#include "skewcalc/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "skewcalc/linalg.hpp"

namespace skewcalc {

namespace {

using Letter = std::pair<int, int>;
using Word = std::vector<Letter>;

constexpr std::size_t kCacheCeiling = 400000;
thread_local int g_depth = 0;

struct DepthGuard {
  DepthGuard() {
    if (++g_depth > 20000) {
      --g_depth;
      throw Error(ErrorCode::ResourceLimit, "rewriting recursion too deep");
    }
  }
  ~DepthGuard() { --g_depth; }
};

std::string letter_name(const Presentation& p, const Letter& l) {
  return p.gens[l.first].name + (l.second < 0 ? "^-1" : "");
}

std::string strip_code(const Error& e) {
  const std::string w = e.what();
  const auto pos = w.find(": ");
  return pos == std::string::npos ? w : w.substr(pos + 2);
}

}  // namespace

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word monomial_word(const Monomial& m) {
  Word w;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    const int s = m.e[i] < 0 ? -1 : 1;
    for (int k = 0; k < std::abs(m.e[i]); ++k) w.emplace_back(static_cast<int>(i), s);
  }
  return w;
}

Algebra::Algebra(Presentation p) : p_(std::move(p)) {}

std::shared_ptr<const Algebra> Algebra::create_unchecked(Presentation p) {
  std::shared_ptr<Algebra> a(new Algebra(std::move(p)));
  a->build_tables();
  return a;
}

const Terms* Algebra::reduction(int i) const {
  if (i < 0 || i >= static_cast<int>(reduction_.size()) || !reduction_[i]) return nullptr;
  return &*reduction_[i];
}

bool Algebra::is_valid_monomial(const Monomial& m) const {
  if (m.e.size() != size()) return false;
  for (std::size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i] < 0 && !p_.gens[i].invertible) return false;
  return true;
}

bool Algebra::is_normal(const Monomial& m) const {
  if (!is_valid_monomial(m)) return false;
  for (std::size_t i = 0; i + 1 < reduction_.size(); ++i)
    if (reduction_[i] && m.e[i] > 0 && m.e[i + 1] > 0) return false;
  return true;
}

Monomial Algebra::letter(int i, int sign) const {
  Monomial m(size());
  m.e[i] = sign;
  return m;
}

void Algebra::build_tables() {
  const std::size_t m = p_.gens.size();
  if (m == 0) throw Error(ErrorCode::ValidationError, "presentation has no generators");
  std::set<std::string> seen;
  for (const auto& g : p_.gens) {
    if (g.name.empty()) throw Error(ErrorCode::ValidationError, "empty generator name");
    if (!seen.insert(g.name).second) throw Error(ErrorCode::ValidationError, "duplicate generator '" + g.name + "'");
    if (g.name == "q" && p_.field.has_q())
      throw Error(ErrorCode::ValidationError, "generator name 'q' clashes with the field parameter");
  }
  lead_.assign(m, std::vector<Scalar>(m, Scalar::one(p_.field)));
  tail_.assign(m, std::vector<Terms>(m));
  reduction_.assign(m, std::nullopt);

  for (const auto& r : p_.reductions) {
    if (r.i < 0 || r.i + 1 >= static_cast<int>(m))
      throw Error(ErrorCode::ValidationError, "reduction rule index out of range");
    if (p_.gens[r.i].invertible || p_.gens[r.i + 1].invertible)
      throw Error(ErrorCode::BadInverse, "eliminated relation " + p_.gens[r.i].name + "*" + p_.gens[r.i + 1].name +
                                             " involves an invertible generator");
    if (reduction_[r.i]) throw Error(ErrorCode::ValidationError, "duplicate eliminated relation");
    reduction_[r.i] = r.rhs;
  }
  auto check_terms = [&](const Terms& t, const std::string& what) {
    for (const auto& [mono, c] : t) {
      if (c.field() != p_.field) throw Error(ErrorCode::FieldMismatch, what + ": coefficient in wrong field");
      if (mono.e.size() != m) throw Error(ErrorCode::ValidationError, what + ": monomial has wrong length");
      if (!is_valid_monomial(mono))
        throw Error(ErrorCode::NegativeExponent, what + ": negative exponent on a non-invertible generator");
      if (!is_normal(mono)) throw Error(ErrorCode::ValidationError, what + ": term is not a normal monomial");
    }
    if (terms_degree(t) > 2) throw Error(ErrorCode::TailDegree, what + ": degree exceeds 2");
  };
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (!reduction_[i]) continue;
    const std::string what = "eliminated relation " + p_.gens[i].name + "*" + p_.gens[i + 1].name;
    check_terms(*reduction_[i], what);
    const Word lhs{{static_cast<int>(i), 1}, {static_cast<int>(i) + 1, 1}};
    for (const auto& kv : *reduction_[i])
      if (!word_less(monomial_word(kv.first), lhs))
        throw Error(ErrorCode::ValidationError, what + " does not decrease the monomial order");
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& r : p_.rules) {
    if (r.i < 0 || r.j <= r.i || r.j >= static_cast<int>(m))
      throw Error(ErrorCode::ValidationError, "rule indices must satisfy j > i");
    if (!pairs.insert({r.j, r.i}).second) throw Error(ErrorCode::ValidationError, "duplicate rule");
    const std::string what = "rule " + p_.gens[r.j].name + "*" + p_.gens[r.i].name;
    if (r.leading.field() != p_.field) throw Error(ErrorCode::FieldMismatch, what + ": leading scalar in wrong field");
    check_terms(r.tail, what);
    const bool inv = p_.gens[r.i].invertible || p_.gens[r.j].invertible;
    if (inv && (!r.tail.empty() || r.leading.is_zero()))
      throw Error(ErrorCode::BadInverse, what + ": rules involving invertible generators must be monomial");
    if (r.leading.is_zero() && !(r.j == r.i + 1 && reduction_[r.i]))
      throw Error(ErrorCode::ValidationError, what + ": leading scalar must be nonzero");
    const Word lhs{{r.j, 1}, {r.i, 1}};
    for (const auto& kv : r.tail)
      if (!word_less(monomial_word(kv.first), lhs))
        throw Error(ErrorCode::ValidationError, what + " does not decrease the monomial order");
    lead_[r.j][r.i] = r.leading;
    tail_[r.j][r.i] = r.tail;
  }
}

Terms Algebra::mul_letter(const Monomial& m, int i, int s) const {
  const int k = m.top();
  if (k < 0) return Terms{{letter(i, s), Scalar::one(field())}};
  if (k == i) {
    Monomial r = m;
    r.e[i] += s;
    return Terms{{r, Scalar::one(field())}};
  }
  if (k < i) {
    if (s > 0 && i == k + 1 && reduction_[k] && m.e[k] > 0) {
      // fall through to the cached path
    } else {
      Monomial r = m;
      r.e[i] = s;
      return Terms{{r, Scalar::one(field())}};
    }
  }
  Monomial key = m;
  key.e.push_back(i * 2 + (s > 0 ? 1 : 0));
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = letter_cache_.find(key);
    if (it != letter_cache_.end()) return it->second;
  }
  DepthGuard guard;
  Terms out;
  if (k < i) {
    Monomial rest = m;
    rest.e[k] -= 1;
    for (const auto& [t, c] : *reduction_[k]) add_scaled(out, mul_mono(rest, t), c);
  } else {
    const int sk = m.e[k] > 0 ? 1 : -1;
    Monomial rest = m;
    rest.e[k] -= sk;
    const Scalar& c = lead_[k][i];
    if (!c.is_zero()) {
      const Scalar factor = (sk * s > 0) ? c : c.inverse();
      for (const auto& [t, a] : mul_letter(rest, i, s)) add_scaled(out, mul_letter(t, k, sk), a * factor);
    }
    if (sk > 0 && s > 0)
      for (const auto& [t, a] : tail_[k][i]) add_scaled(out, mul_mono(rest, t), a);
  }
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (letter_cache_.size() > kCacheCeiling) letter_cache_.clear();
  letter_cache_.emplace(std::move(key), out);
  return out;
}

Terms Algebra::mul_mono(const Monomial& a, const Monomial& b) const {
  const Scalar one = Scalar::one(field());
  if (b.is_one()) return Terms{{a, one}};
  if (a.is_one()) return Terms{{b, one}};
  if (a.top() <= b.bottom()) {
    Monomial sum = a + b;
    if (is_normal(sum)) return Terms{{sum, one}};
  }
  Monomial key = a;
  key.e.insert(key.e.end(), b.e.begin(), b.e.end());
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = mono_cache_.find(key);
    if (it != mono_cache_.end()) return it->second;
  }
  DepthGuard guard;
  Terms cur{{a, one}};
  for (std::size_t i = 0; i < b.e.size(); ++i) {
    const int s = b.e[i] < 0 ? -1 : 1;
    for (int r = 0; r < std::abs(b.e[i]); ++r) {
      Terms next;
      for (const auto& [mono, c] : cur) add_scaled(next, mul_letter(mono, static_cast<int>(i), s), c);
      cur = std::move(next);
    }
  }
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (mono_cache_.size() > kCacheCeiling) mono_cache_.clear();
  mono_cache_.emplace(std::move(key), cur);
  return cur;
}

Terms Algebra::mul(const Terms& a, const Terms& b) const {
  Terms out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_scaled(out, mul_mono(ma, mb), ca * cb);
  return out;
}

std::vector<Monomial> Algebra::filtration_basis(int d) const {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur(size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int budget) {
    if (idx == size()) {
      if (is_normal(cur)) out.push_back(cur);
      return;
    }
    const int lo = p_.gens[idx].invertible ? -budget : 0;
    for (int e = lo; e <= budget; ++e) {
      cur.e[idx] = e;
      rec(idx + 1, budget - std::abs(e));
    }
    cur.e[idx] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), MonomialLess());
  return out;
}

// ---------------------------------------------------------------------------
// Element construction and evaluation

Element Algebra::element(Terms t) const { return Element(shared_from_this(), std::move(t)); }
Element Algebra::zero() const { return element({}); }
Element Algebra::one() const { return scalar(Scalar::one(field())); }

Element Algebra::scalar(const Scalar& c) const {
  Terms t;
  add_term(t, Monomial(size()), c);
  return element(std::move(t));
}

Element Algebra::gen(int i) const { return monomial(letter(i, 1)); }
Element Algebra::gen_inverse(int i) const {
  if (!p_.gens[i].invertible)
    throw Error(ErrorCode::NegativeExponent, "generator '" + p_.gens[i].name + "' is not invertible");
  return monomial(letter(i, -1));
}

Element Algebra::gen(const std::string& name) const {
  const int i = p_.index_of(name);
  if (i < 0) throw Error(ErrorCode::ValidationError, "unknown generator '" + name + "'");
  return gen(i);
}

Element Algebra::monomial(const Monomial& m) const {
  if (!is_valid_monomial(m)) throw Error(ErrorCode::NegativeExponent, "invalid monomial exponents");
  if (is_normal(m)) return element(Terms{{m, Scalar::one(field())}});
  // Expand generator by generator through the engine.
  Element acc = one();
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    Monomial part(size());
    part.e[i] = m.e[i];
    acc = acc * element(Terms{{part, Scalar::one(field())}});
  }
  return acc;
}

namespace {

struct ElementOps {
  const Algebra& alg;
  Element number(const mpz_class& n) { return alg.scalar(Scalar::from_integer(alg.field(), n)); }
  Element symbol(const ExprNode& n) {
    const int i = alg.presentation().index_of(n.symbol);
    if (i >= 0) return alg.gen(i);
    if (n.symbol == "q" && alg.field().has_q()) return alg.scalar(Scalar::q(alg.field()));
    throw Error(ErrorCode::ValidationError, "unknown symbol '" + n.symbol + "' at line " + std::to_string(n.line) +
                                                ", column " + std::to_string(n.column));
  }
  Element add(const Element& a, const Element& b) { return a + b; }
  Element sub(const Element& a, const Element& b) { return a - b; }
  Element mul(const Element& a, const Element& b) { return a * b; }
  Element neg(const Element& a) { return -a; }
  Element div(const Element& a, const Element& b, const ExprNode& n) {
    if (!b.is_scalar() || b.is_zero()) {
      if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
      throw Error(ErrorCode::ValidationError, "division by a non-scalar at line " + std::to_string(n.line) +
                                                  ", column " + std::to_string(n.column));
    }
    return b.terms().begin()->second.inverse() * a;
  }
  Element pow(const Element& a, long e, const ExprNode&) { return power(a, e); }
};

struct NormalTermsOps {
  const Presentation& p;
  Scalar one() const { return Scalar::one(p.field); }
  Terms number(const mpz_class& n) {
    Terms t;
    add_term(t, Monomial(p.size()), Scalar::from_integer(p.field, n));
    return t;
  }
  Terms symbol(const ExprNode& n) {
    const int i = p.index_of(n.symbol);
    Terms t;
    if (i >= 0) {
      Monomial m(p.size());
      m.e[i] = 1;
      add_term(t, m, one());
      return t;
    }
    if (n.symbol == "q") {
      add_term(t, Monomial(p.size()), Scalar::q(p.field));
      return t;
    }
    throw Error(ErrorCode::ValidationError, "unknown symbol '" + n.symbol + "' at line " + std::to_string(n.line) +
                                                ", column " + std::to_string(n.column));
  }
  Terms add(const Terms& a, const Terms& b) {
    Terms r = a;
    add_scaled(r, b, one());
    return r;
  }
  Terms sub(const Terms& a, const Terms& b) {
    Terms r = a;
    add_scaled(r, b, -one());
    return r;
  }
  Terms neg(const Terms& a) { return scale_terms(a, -one()); }
  Terms mul(const Terms& a, const Terms& b) {
    Terms r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        if (!ma.is_one() && !mb.is_one() && ma.top() > mb.bottom())
          throw Error(ErrorCode::ValidationError,
                      "product " + monomial_to_string(ma, p.names()) + "*" + monomial_to_string(mb, p.names()) +
                          " is not written in ascending generator order");
        add_term(r, ma + mb, ca * cb);
      }
    return r;
  }
  Terms div(const Terms& a, const Terms& b, const ExprNode& n) {
    if (b.empty()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    if (b.size() != 1 || !b.begin()->first.is_one())
      throw Error(ErrorCode::ValidationError, "division by a non-scalar at line " + std::to_string(n.line) +
                                                  ", column " + std::to_string(n.column));
    return scale_terms(a, b.begin()->second.inverse());
  }
  Terms pow(const Terms& a, long e, const ExprNode& n) {
    if (a.size() == 1 && a.begin()->first.is_one()) {
      Terms r;
      add_term(r, a.begin()->first, a.begin()->second.pow(e));
      return r;
    }
    if (a.size() != 1 || a.begin()->first.top() != a.begin()->first.bottom())
      throw Error(ErrorCode::ValidationError, "only single generators may be raised to powers (line " +
                                                  std::to_string(n.line) + ", column " + std::to_string(n.column) + ")");
    const auto& [m, c] = *a.begin();
    Monomial r = m;
    for (int& x : r.e) x = static_cast<int>(x * e);
    Terms t;
    add_term(t, r, c.pow(e));
    return t;
  }
};

}  // namespace

Element Algebra::evaluate(const ExprNode& n) const {
  ElementOps ops{*this};
  return skewcalc::evaluate<Element>(n, ops);
}

Element Algebra::parse(const std::string& text) const { return evaluate(*parse_expression(text)); }

Terms parse_normal_terms(const Presentation& p, const ExprNode& n) {
  NormalTermsOps ops{p};
  Terms t = evaluate<Terms>(n, ops);
  for (const auto& kv : t)
    for (std::size_t i = 0; i < kv.first.e.size(); ++i)
      if (kv.first.e[i] < 0 && !p.gens[i].invertible)
        throw Error(ErrorCode::NegativeExponent, "generator '" + p.gens[i].name + "' is not invertible");
  return t;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class TowerChecker {
 public:
  TowerChecker(const Algebra& alg, const OreStep& st) : alg_(alg), st_(st) {}

  Terms sigma_letter(int i, int s) const {
    if (s > 0) return st_.sigma[i];
    Element img = alg_.element(st_.sigma[i]);
    if (!is_unit_monomial(img))
      throw Error(ErrorCode::BadSigma, "image of invertible generator '" + alg_.presentation().gens[i].name +
                                           "' is not a unit monomial");
    return unit_monomial_inverse(img).terms();
  }

  Terms sigma_word(const Word& w) const {
    Terms acc{{Monomial(alg_.size()), Scalar::one(alg_.field())}};
    for (const auto& [i, s] : w) acc = alg_.mul(acc, sigma_letter(i, s));
    return acc;
  }

  Terms sigma_terms(const Terms& t) const {
    Terms out;
    for (const auto& [m, c] : t) add_scaled(out, sigma_word(monomial_word(m)), c);
    return out;
  }

  Terms delta_letter(int i, int s) const {
    if (s > 0) return st_.delta[i];
    // delta(g^-1) = -sigma(g^-1) delta(g) g^-1
    const Terms inv{{alg_.letter(i, -1), Scalar::one(alg_.field())}};
    return scale_terms(alg_.mul(alg_.mul(sigma_letter(i, -1), st_.delta[i]), inv), -Scalar::one(alg_.field()));
  }

  Terms delta_word(const Word& w) const {
    Terms out;
    const Scalar one = Scalar::one(alg_.field());
    for (std::size_t r = 0; r < w.size(); ++r) {
      Terms term = sigma_word(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r)));
      term = alg_.mul(term, delta_letter(w[r].first, w[r].second));
      if (term.empty()) continue;
      for (std::size_t k = r + 1; k < w.size(); ++k)
        term = alg_.mul(term, Terms{{alg_.letter(w[k].first, w[k].second), one}});
      add_scaled(out, term, one);
    }
    return out;
  }

  Terms delta_terms(const Terms& t) const {
    Terms out;
    for (const auto& [m, c] : t) add_scaled(out, delta_word(monomial_word(m)), c);
    return out;
  }

  void run(const ValidationOptions& opts) const {
    const auto& p = alg_.presentation();
    const int b = st_.base_size;
    const Scalar one = Scalar::one(alg_.field());
    if (b < 0 || b >= static_cast<int>(alg_.size()) || static_cast<int>(st_.sigma.size()) != b ||
        static_cast<int>(st_.delta.size()) != b)
      throw Error(ErrorCode::ValidationError, "malformed Ore step metadata");
    auto supported_below = [&](const Terms& t) {
      for (const auto& kv : t)
        for (std::size_t k = b; k < kv.first.e.size(); ++k)
          if (kv.first.e[k] != 0) return false;
      return true;
    };
    const std::string tname = p.gens[b].name;
    for (int g = 0; g < b; ++g) {
      if (!supported_below(st_.sigma[g]) || !supported_below(st_.delta[g]))
        throw Error(ErrorCode::ValidationError, "Ore step images must lie in the base algebra");
      Terms lhs = alg_.mul_mono(alg_.letter(b, 1), alg_.letter(g, 1));
      Terms rhs = alg_.mul(st_.sigma[g], Terms{{alg_.letter(b, 1), one}});
      add_scaled(rhs, st_.delta[g], one);
      if (lhs != rhs)
        throw Error(ErrorCode::BadSigma, "rule " + tname + "*" + p.gens[g].name + " does not match the tower data");
    }
    const auto names = p.names();
    for (int j = 0; j < b; ++j) {
      for (int i = 0; i < j; ++i) {
        const Scalar& c = alg_.leading(j, i);
        const Terms& tail = alg_.tail(j, i);
        const std::string rel = names[j] + "*" + names[i];
        Terms lhs = alg_.mul(st_.sigma[j], st_.sigma[i]);
        Terms rhs = scale_terms(alg_.mul(st_.sigma[i], st_.sigma[j]), c);
        add_scaled(rhs, sigma_terms(tail), one);
        if (lhs != rhs) throw Error(ErrorCode::BadSigma, "sigma does not respect the relation for " + rel);
        Terms dl = delta_word({{j, 1}, {i, 1}});
        Terms dr = scale_terms(delta_word({{i, 1}, {j, 1}}), c);
        add_scaled(dr, delta_terms(tail), one);
        if (dl != dr) throw Error(ErrorCode::BadDelta, "delta violates the twisted Leibniz rule on " + rel);
      }
    }
    for (int i = 0; i + 1 < b; ++i) {
      const Terms* red = alg_.reduction(i);
      if (!red) continue;
      const std::string rel = names[i] + "*" + names[i + 1];
      if (alg_.mul(st_.sigma[i], st_.sigma[i + 1]) != sigma_terms(*red))
        throw Error(ErrorCode::BadSigma, "sigma does not respect the relation for " + rel);
      if (delta_word({{i, 1}, {i + 1, 1}}) != delta_terms(*red))
        throw Error(ErrorCode::BadDelta, "delta violates the twisted Leibniz rule on " + rel);
    }
    for (int g = 0; g < b; ++g)
      if (p.gens[g].invertible) (void)sigma_letter(g, -1);

    // Bounded certificate that sigma is onto the generators.
    Echelon ech(alg_.field(), true);
    std::vector<Monomial> basis;
    for (const auto& m : alg_.filtration_basis(opts.sigma_degree_bound)) {
      bool inside = true;
      for (std::size_t k = b; k < m.e.size(); ++k) inside = inside && m.e[k] == 0;
      if (inside) basis.push_back(m);
    }
    for (std::size_t k = 0; k < basis.size(); ++k) ech.insert(sigma_word(monomial_word(basis[k])), k);
    for (int g = 0; g < b; ++g) {
      Combo combo;
      if (!ech.reduce_tracked(Terms{{alg_.letter(g, 1), one}}, combo).empty())
        throw Error(ErrorCode::BadSigma, "no preimage of '" + names[g] + "' under sigma within degree " +
                                             std::to_string(opts.sigma_degree_bound));
    }
  }

 private:
  const Algebra& alg_;
  const OreStep& st_;
};

void check_diamonds(const Algebra& alg, ValidationReport& rep) {
  const auto& p = alg.presentation();
  const int m = static_cast<int>(alg.size());
  const Scalar one = Scalar::one(alg.field());
  std::vector<Letter> letters;
  for (int i = 0; i < m; ++i) {
    if (p.gens[i].invertible) letters.emplace_back(i, -1);
    letters.emplace_back(i, 1);
  }
  auto reducible = [&](const Letter& a, const Letter& b) {
    if (a.first > b.first) return true;
    if (a.first == b.first) return a.second != b.second;
    return a.second > 0 && b.second > 0 && b.first == a.first + 1 && alg.reduction(a.first) != nullptr;
  };
  auto lt = [&](const Letter& a) { return Terms{{alg.letter(a.first, a.second), one}}; };
  auto one_step = [&](const Letter& a, const Letter& b) -> Terms {
    if (a.first == b.first) return Terms{{Monomial(alg.size()), one}};
    if (a.first < b.first) return *alg.reduction(a.first);
    const Scalar& c = alg.leading(a.first, b.first);
    Terms out;
    if (!c.is_zero()) {
      const Scalar f = a.second * b.second > 0 ? c : c.inverse();
      add_scaled(out, alg.mul_mono(alg.letter(b.first, b.second), alg.letter(a.first, a.second)), f);
    }
    if (a.second > 0 && b.second > 0) add_scaled(out, alg.tail(a.first, b.first), one);
    return out;
  };
  for (const auto& a : letters)
    for (const auto& b : letters) {
      if (!reducible(a, b)) continue;
      const Terms ab = one_step(a, b);
      for (const auto& c : letters) {
        if (!reducible(b, c)) continue;
        ++rep.overlaps_checked;
        const Terms left = alg.mul(ab, lt(c));
        const Terms right = alg.mul(lt(a), one_step(b, c));
        if (left != right) {
          const auto names = p.names();
          throw Error(ErrorCode::InconsistentRules,
                      "overlap " + letter_name(p, a) + "*" + letter_name(p, b) + "*" + letter_name(p, c) +
                          " rewrites to " + terms_to_string(left, names) + " and to " + terms_to_string(right, names));
        }
      }
    }
}

ValidationReport run_validation(const Algebra& alg, const ValidationOptions& opts) {
  ValidationReport rep;
  try {
    for (const auto& st : alg.presentation().tower) TowerChecker(alg, st).run(opts);
    if (!alg.presentation().tower.empty()) rep.sigma_status = "BOUNDED_CERTIFIED";
    check_diamonds(alg, rep);
  } catch (const Error& e) {
    rep.pass = false;
    rep.code = e.code();
    rep.witness = strip_code(e);
  }
  return rep;
}

}  // namespace

ValidationReport validate_presentation(const Presentation& p, const ValidationOptions& opts) {
  try {
    auto alg = Algebra::create_unchecked(p);
    return run_validation(*alg, opts);
  } catch (const Error& e) {
    ValidationReport rep;
    rep.pass = false;
    rep.code = e.code();
    rep.witness = strip_code(e);
    return rep;
  }
}

std::shared_ptr<const Algebra> Algebra::create(Presentation p, const ValidationOptions& opts) {
  std::shared_ptr<Algebra> a(new Algebra(std::move(p)));
  a->build_tables();
  a->report_ = run_validation(*a, opts);
  if (!a->report_.pass) throw Error(*a->report_.code, a->report_.witness);
  return a;
}

}  // namespace skewcalc
