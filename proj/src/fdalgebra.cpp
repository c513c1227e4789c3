#include "skewcalc/fdalgebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "skewcalc/expr.hpp"
#include "skewcalc/monomial.hpp"

namespace skewcalc {

namespace {

std::string join_combination(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, name] : terms) {
    std::string body;
    if (name == "1") {
      body = c.to_string();
    } else if (c.is_one()) {
      body = name;
    } else if ((-c).is_one()) {
      body = "-" + name;
    } else {
      body = c.needs_parens() ? "(" + c.to_string() + ")*" + name : c.to_string() + "*" + name;
    }
    if (first) {
      out = body;
    } else if (body[0] == '-') {
      out += " - " + body.substr(1);
    } else {
      out += " + " + body;
    }
    first = false;
  }
  return out;
}

// Univariate polynomials over a Scalar field, constant term first.
using SPoly = std::vector<Scalar>;

void trim(SPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int sdeg(const SPoly& p) { return static_cast<int>(p.size()) - 1; }

SPoly smul(const SPoly& a, const SPoly& b, const FieldDescriptor& f) {
  if (a.empty() || b.empty()) return {};
  SPoly out(a.size() + b.size() - 1, Scalar::zero(f));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

SPoly ssub(SPoly a, const SPoly& b, const FieldDescriptor& f) {
  if (a.size() < b.size()) a.resize(b.size(), Scalar::zero(f));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder; b nonzero.
std::pair<SPoly, SPoly> sdivmod(SPoly a, const SPoly& b, const FieldDescriptor& f) {
  SPoly q;
  trim(a);
  if (sdeg(a) < sdeg(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, Scalar::zero(f));
  const Scalar lead_inv = b.back().inverse();
  while (!a.empty() && sdeg(a) >= sdeg(b)) {
    const std::size_t shift = a.size() - b.size();
    const Scalar c = a.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

SPoly smonic(SPoly p) {
  if (p.empty()) return p;
  const Scalar inv = p.back().inverse();
  for (auto& c : p) c = c * inv;
  return p;
}

SPoly sgcd(SPoly a, SPoly b, const FieldDescriptor& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = sdivmod(a, b, f).second;
    a = std::move(b);
    b = std::move(r);
  }
  return smonic(a);
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
std::tuple<SPoly, SPoly, SPoly> sxgcd(SPoly a, SPoly b, const FieldDescriptor& f) {
  SPoly s0{Scalar::one(f)}, s1, t0, t1{Scalar::one(f)};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = sdivmod(a, b, f);
    a = std::move(b);
    b = std::move(r);
    auto s2 = ssub(s0, smul(q, s1, f), f);
    auto t2 = ssub(t0, smul(q, t1, f), f);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Scalar inv = a.back().inverse();
  for (auto* p : {&a, &s0, &t0})
    for (auto& c : *p) c = c * inv;
  return {a, s0, t0};
}

SPoly sderivative(const SPoly& p, const FieldDescriptor& f) {
  SPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Scalar::from_int(f, static_cast<long>(i)) * p[i]);
  trim(d);
  return d;
}

/// Squarefree part; in characteristic p a vanishing derivative is handled by the
/// Frobenius root, which over gf(p) only permutes coefficients.
SPoly squarefree_part(const SPoly& p, const FieldDescriptor& f) {
  SPoly d = sderivative(p, f);
  if (d.empty()) {
    const std::uint64_t ch = f.characteristic();
    if (ch == 0 || sdeg(p) == 0) return smonic(p);
    SPoly root;
    for (std::size_t i = 0; i < p.size(); i += ch) root.push_back(p[i]);
    return squarefree_part(root, f);
  }
  return smonic(sdivmod(p, sgcd(p, d, f), f).first);
}

/// x^e mod m over gf(p).
SPoly powmod_x(const mpz_class& e, const SPoly& m, const FieldDescriptor& f, const SPoly& base) {
  SPoly result{Scalar::one(f)};
  SPoly b = sdivmod(base, m, f).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = sdivmod(smul(result, result, f), m, f).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = sdivmod(smul(result, b, f), m, f).second;
  }
  return result;
}

struct RootSearch {
  std::optional<Scalar> root;
  /// Whether "no root" is a proof.
  bool exhaustive = false;
};

std::vector<mpz_class> divisors(mpz_class n, bool& ok) {
  n = abs(n);
  ok = true;
  if (n > mpz_class("1000000000000")) {
    ok = false;
    return {};
  }
  std::vector<std::pair<mpz_class, int>> primes;
  for (mpz_class p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) primes.emplace_back(p, k);
  }
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [p, k] : primes) {
    const std::size_t cur = out.size();
    mpz_class pk = 1;
    for (int e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

Scalar seval(const SPoly& p, const Scalar& x, const FieldDescriptor& f) {
  Scalar acc = Scalar::zero(f);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

RootSearch find_root(const SPoly& s, const FieldDescriptor& f) {
  RootSearch r;
  if (sdeg(s) == 1) {
    r.root = -s[0] / s[1];
    r.exhaustive = true;
    return r;
  }
  if (s[0].is_zero()) {
    r.root = Scalar::zero(f);
    r.exhaustive = true;
    return r;
  }
  if (f.kind == FieldKind::Rational) {
    mpz_class lcm = 1;
    for (const auto& c : s) lcm = lcm * c.to_rational().get_den() / gcd(lcm, c.to_rational().get_den());
    const mpz_class a0 = mpq_class(s.front().to_rational() * lcm).get_num();
    const mpz_class ad = mpq_class(s.back().to_rational() * lcm).get_num();
    bool ok0 = false, okd = false;
    const auto dn = divisors(a0, ok0);
    const auto dd = divisors(ad, okd);
    if (!ok0 || !okd) return r;
    for (const auto& p : dn)
      for (const auto& q : dd)
        for (int sign : {1, -1}) {
          const Scalar x = Scalar::from_rational(f, mpq_class(sign * p, q));
          if (seval(s, x, f).is_zero()) {
            r.root = x;
            r.exhaustive = true;
            return r;
          }
        }
    r.exhaustive = true;
    return r;
  }
  if (f.kind == FieldKind::Prime) {
    const std::uint64_t p = f.modulus;
    r.exhaustive = true;
    if (p <= 100000) {
      for (std::uint64_t v = 0; v < p; ++v) {
        const Scalar x = Scalar::from_integer(f, mpz_class(static_cast<unsigned long>(v)));
        if (seval(s, x, f).is_zero()) {
          r.root = x;
          return r;
        }
      }
      return r;
    }
    const SPoly X{Scalar::zero(f), Scalar::one(f)};
    const mpz_class pz(std::to_string(p));
    SPoly g = sgcd(ssub(powmod_x(pz, s, f, X), X, f), s, f);
    if (sdeg(g) < 1) return r;
    // Equal-degree splitting with a deterministic shift sequence.
    for (long a = 0; sdeg(g) > 1 && a < 200; ++a) {
      const SPoly base{Scalar::from_int(f, a), Scalar::one(f)};
      SPoly h = ssub(powmod_x((pz - 1) / 2, g, f, base), SPoly{Scalar::one(f)}, f);
      SPoly d = sgcd(h, g, f);
      if (sdeg(d) >= 1 && sdeg(d) < sdeg(g)) g = d;
    }
    if (sdeg(g) == 1) r.root = -g[0] / g[1];
    return r;
  }
  return r;
}

/// Certified irreducibility of a squarefree polynomial without roots.
bool certified_irreducible(const SPoly& s, const FieldDescriptor& f, const RootSearch& rs) {
  if (sdeg(s) <= 1) return true;
  if (rs.root || !rs.exhaustive) return false;
  if (sdeg(s) <= 3) return true;
  if (f.kind != FieldKind::Prime) return false;
  // Ben-Or: gcd(x^{p^i} - x, s) = 1 for i <= deg/2.
  const SPoly X{Scalar::zero(f), Scalar::one(f)};
  const mpz_class pz(std::to_string(f.modulus));
  SPoly xp = X;
  for (int i = 1; i <= sdeg(s) / 2; ++i) {
    xp = powmod_x(pz, s, f, xp);
    if (sdeg(sgcd(ssub(xp, X, f), s, f)) > 0) return false;
  }
  return true;
}

/// Minimal polynomial of u over the unital subalgebra whose unit is e.
SPoly minimal_polynomial(const FiniteDimAlgebra& a, const Vec& e, const Vec& u) {
  const auto& f = a.field();
  std::vector<Vec> powers{e};
  for (;;) {
    const Vec next = a.mul(powers.back(), u);
    Mat m(a.dim(), Vec(powers.size(), Scalar::zero(f)));
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < powers.size(); ++c) m[r][c] = powers[c][r];
    if (auto x = solve(m, next)) {
      SPoly mu(powers.size() + 1, Scalar::zero(f));
      for (std::size_t k = 0; k < powers.size(); ++k) mu[k] = -(*x)[k];
      mu.back() = Scalar::one(f);
      return mu;
    }
    powers.push_back(next);
  }
}

Vec eval_in(const FiniteDimAlgebra& a, const SPoly& p, const Vec& e, const Vec& u) {
  Vec acc = a.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = a.add(a.mul(acc, u), a.scale(p[i], e));
  return acc;
}

Mat span_rows(const std::vector<Vec>& vs) {
  Mat m(vs.begin(), vs.end());
  const auto piv = rref(m);
  m.resize(piv.size());
  return m;
}

FiniteDimAlgebra sub_algebra(const FiniteDimAlgebra& a, const Vec& e, const Mat& basis) {
  const auto& f = a.field();
  const std::size_t m = basis.size();
  std::vector<std::size_t> piv;
  for (const auto& row : basis)
    for (std::size_t c = 0; c < row.size(); ++c)
      if (!row[c].is_zero()) {
        piv.push_back(c);
        break;
      }
  auto coords = [&](const Vec& v) {
    Vec out(m, Scalar::zero(f));
    for (std::size_t k = 0; k < m; ++k) out[k] = v[piv[k]];
    return out;
  };
  std::vector<std::string> names;
  for (const auto& row : basis) names.push_back(a.to_string(row));
  std::vector<std::vector<Vec>> table(m, std::vector<Vec>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i][j] = coords(a.mul(basis[i], basis[j]));
  return FiniteDimAlgebra::create(f, names, table, coords(e));
}

}  // namespace

FiniteDimAlgebra FiniteDimAlgebra::create(FieldDescriptor field, std::vector<std::string> names,
                                          std::vector<std::vector<Vec>> table, Vec unit) {
  FiniteDimAlgebra a;
  a.field_ = field;
  a.names_ = std::move(names);
  a.table_ = std::move(table);
  a.unit_ = std::move(unit);
  const std::size_t n = a.dim();
  if (n == 0) throw Error(ErrorCode::ValidationError, "finite-dimensional algebra needs a nonempty basis");
  if (a.table_.size() != n || a.unit_.size() != n)
    throw Error(ErrorCode::ValidationError, "structure table does not match the basis size");
  for (const auto& row : a.table_) {
    if (row.size() != n) throw Error(ErrorCode::ValidationError, "structure table does not match the basis size");
    for (const auto& v : row)
      if (v.size() != n) throw Error(ErrorCode::ValidationError, "structure table does not match the basis size");
  }
  const auto& nm = a.names_;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.mul(a.unit_, a.basis_vector(i)) != a.basis_vector(i))
      throw Error(ErrorCode::ValidationError, "unit does not act as identity on " + nm[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (a.table_[i][j] != a.table_[j][i])
        throw Error(ErrorCode::ValidationError, "not commutative: " + nm[i] + "*" + nm[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (a.mul(a.table_[i][j], a.basis_vector(k)) != a.mul(a.basis_vector(i), a.table_[j][k]))
          throw Error(ErrorCode::ValidationError, "not associative: " + nm[i] + "*" + nm[j] + "*" + nm[k]);
    }
  }
  return a;
}

Vec FiniteDimAlgebra::basis_vector(std::size_t i) const {
  Vec v = zero();
  v[i] = Scalar::one(field_);
  return v;
}

Vec FiniteDimAlgebra::scalar(const Scalar& c) const { return scale(c, unit_); }

Vec FiniteDimAlgebra::add(const Vec& a, const Vec& b) const {
  Vec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vec FiniteDimAlgebra::sub(const Vec& a, const Vec& b) const {
  Vec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Vec FiniteDimAlgebra::scale(const Scalar& c, const Vec& a) const {
  Vec out = a;
  for (auto& x : out) x = c * x;
  return out;
}

Vec FiniteDimAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      const Scalar c = a[i] * b[j];
      const Vec& p = table_[i][j];
      for (std::size_t k = 0; k < dim(); ++k)
        if (!p[k].is_zero()) out[k] += c * p[k];
    }
  }
  return out;
}

Vec FiniteDimAlgebra::power(const Vec& a, unsigned long n) const {
  Vec result = unit_;
  Vec base = a;
  while (n) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return result;
}

Mat FiniteDimAlgebra::mult_matrix(const Vec& a) const {
  Mat m(dim(), zero());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Vec col = mul(a, basis_vector(j));
    for (std::size_t i = 0; i < dim(); ++i) m[i][j] = col[i];
  }
  return m;
}

Scalar FiniteDimAlgebra::trace(const Vec& a) const {
  const Mat m = mult_matrix(a);
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < dim(); ++i) t += m[i][i];
  return t;
}

std::optional<Vec> FiniteDimAlgebra::inverse(const Vec& a) const { return solve(mult_matrix(a), unit_); }

Vec FiniteDimAlgebra::parse(const std::string& text) const {
  struct Ops {
    const FiniteDimAlgebra& a;
    Vec number(const mpz_class& n) { return a.scalar(Scalar::from_integer(a.field(), n)); }
    Vec symbol(const ExprNode& n) {
      for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.names()[i] == n.symbol) return a.basis_vector(i);
      if (n.symbol == "q" && a.field().has_q()) return a.scalar(Scalar::q(a.field()));
      throw Error(ErrorCode::ValidationError, "unknown basis element '" + n.symbol + "'");
    }
    Vec add(const Vec& x, const Vec& y) { return a.add(x, y); }
    Vec sub(const Vec& x, const Vec& y) { return a.sub(x, y); }
    Vec mul(const Vec& x, const Vec& y) { return a.mul(x, y); }
    Vec neg(const Vec& x) { return a.scale(-Scalar::one(a.field()), x); }
    Vec div(const Vec& x, const Vec& y, const ExprNode&) {
      auto inv = a.inverse(y);
      if (!inv) throw Error(ErrorCode::DivisionByZero, "divisor is not a unit");
      return a.mul(x, *inv);
    }
    Vec pow(const Vec& x, long e, const ExprNode&) {
      if (e >= 0) return a.power(x, static_cast<unsigned long>(e));
      auto inv = a.inverse(x);
      if (!inv) throw Error(ErrorCode::NegativeExponent, "negative power of a non-unit");
      return a.power(*inv, static_cast<unsigned long>(-e));
    }
  } ops{*this};
  return evaluate<Vec>(*parse_expression(text), ops);
}

std::string FiniteDimAlgebra::to_string(const Vec& v) const {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!v[i].is_zero()) terms.emplace_back(v[i], names_[i]);
  return join_combination(terms);
}

FiniteDimAlgebra fd_split(const FieldDescriptor& field, std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, zero_vec(field, n)));
  Vec unit(n, Scalar::one(field));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    table[i][i][i] = Scalar::one(field);
  }
  return FiniteDimAlgebra::create(field, names, table, unit);
}

FiniteDimAlgebra fd_univariate_quotient(const FieldDescriptor& field, const std::string& var,
                                        const std::vector<Scalar>& f) {
  SPoly m(f.begin(), f.end());
  trim(m);
  if (sdeg(m) < 1) throw Error(ErrorCode::BadParams, "quotient polynomial must have positive degree");
  m = smonic(m);
  const std::size_t d = static_cast<std::size_t>(sdeg(m));
  std::vector<std::string> names{"1"};
  for (std::size_t i = 1; i < d; ++i) names.push_back(i == 1 ? var : var + "^" + std::to_string(i));
  std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      SPoly prod(i + j + 1, Scalar::zero(field));
      prod[i + j] = Scalar::one(field);
      SPoly r = sdivmod(prod, m, field).second;
      Vec v = zero_vec(field, d);
      for (std::size_t k = 0; k < r.size(); ++k) v[k] = r[k];
      table[i][j] = v;
    }
  Vec unit = zero_vec(field, d);
  unit[0] = Scalar::one(field);
  return FiniteDimAlgebra::create(field, names, table, unit);
}

FiniteDimAlgebra fd_monomial_quotient(const FieldDescriptor& field, const std::vector<std::string>& vars,
                                      const std::vector<std::vector<int>>& standard) {
  const std::size_t n = standard.size();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (standard[i].size() != vars.size()) throw Error(ErrorCode::BadParams, "exponent vector has the wrong length");
    index[standard[i]] = i;
  }
  if (!index.count(std::vector<int>(vars.size(), 0)))
    throw Error(ErrorCode::BadParams, "standard monomials must contain 1");
  std::vector<std::string> names;
  for (const auto& e : standard) names.push_back(e == std::vector<int>(vars.size(), 0) ? "1" : monomial_to_string(Monomial{e}, vars));
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, zero_vec(field, n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> s(vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) s[k] = standard[i][k] + standard[j][k];
      auto it = index.find(s);
      if (it != index.end()) table[i][j][it->second] = Scalar::one(field);
    }
  Vec unit = zero_vec(field, n);
  unit[index[std::vector<int>(vars.size(), 0)]] = Scalar::one(field);
  return FiniteDimAlgebra::create(field, names, table, unit);
}

NilradicalResult nilradical(const FiniteDimAlgebra& a) {
  const auto& f = a.field();
  const std::size_t n = a.dim();
  NilradicalResult res;
  Mat form;
  if (f.characteristic() == 0) {
    res.method = "trace-form";
    form.assign(n, zero_vec(f, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) form[i][j] = a.trace(a.product(i, j));
  } else {
    // Over gf(p) the Frobenius map is linear; its k-th iterate kills exactly the
    // nilpotents once p^k >= dim.
    res.method = "frobenius-kernel";
    res.note = "gf(p) is perfect, so the Frobenius kernel is exact";
    const std::uint64_t p = f.characteristic();
    unsigned long e = p;
    while (e < n) e *= p;
    form.assign(n, zero_vec(f, n));
    for (std::size_t j = 0; j < n; ++j) {
      const Vec col = a.power(a.basis_vector(j), e);
      for (std::size_t i = 0; i < n; ++i) form[i][j] = col[i];
    }
  }
  res.basis = nullspace(form, f, n);
  for (auto& v : res.basis) {
    Mat m = a.mult_matrix(v);
    for (std::size_t k = 1; k < n; k *= 2) m = mat_mul(m, m);
    for (const auto& row : m)
      if (!vec_is_zero(row))
        throw Error(ErrorCode::Internal, "nilradical element " + a.to_string(v) + " is not nilpotent");
  }
  res.quotient_dim = n - res.basis.size();
  return res;
}

bool is_vnr(const FiniteDimAlgebra& a) { return nilradical(a).basis.empty(); }

LocalDecomposition local_decomposition(const FiniteDimAlgebra& a, std::uint64_t seed) {
  const auto& f = a.field();
  const std::size_t n = a.dim();
  const auto N = nilradical(a);
  std::mt19937_64 rng(seed);

  std::vector<Vec> todo{a.unit()};
  LocalDecomposition out;
  while (!todo.empty()) {
    const Vec e = todo.back();
    todo.pop_back();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(a.mul(e, a.basis_vector(i)));
    const Mat basis = span_rows(rows);
    std::vector<Vec> nrows;
    for (const auto& v : N.basis) nrows.push_back(a.mul(e, v));
    const std::size_t qdim = basis.size() - mat_rank(nrows.empty() ? Mat{} : Mat(nrows.begin(), nrows.end()));

    // Candidates: basis elements, pairwise sums, then seeded random combinations.
    std::vector<Vec> cands(basis.begin(), basis.end());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) cands.push_back(a.add(basis[i], basis[j]));
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int r = 0; r < 8; ++r) {
      Vec v = a.zero();
      for (const auto& b : basis) v = a.add(v, a.scale(Scalar::from_int(f, dist(rng)), b));
      cands.push_back(v);
    }

    std::optional<std::pair<std::size_t, std::string>> local;
    std::optional<Vec> split;
    if (qdim == 1) local = std::make_pair(std::size_t{1}, std::string("residue field is the base field"));
    for (const auto& u : cands) {
      if (local || split) break;
      const SPoly mu = minimal_polynomial(a, e, u);
      const SPoly s = squarefree_part(mu, f);
      const RootSearch rs = find_root(s, f);
      if (static_cast<std::size_t>(sdeg(s)) == qdim && certified_irreducible(s, f, rs)) {
        std::ostringstream cert;
        cert << "residue field generated by an element with irreducible minimal polynomial of degree " << qdim;
        local = std::make_pair(qdim, cert.str());
        break;
      }
      if (!rs.root || sdeg(s) <= 1) continue;
      // mu = (x - r)^k * rest with gcd 1; the CRT idempotent for the (x - r)^k part.
      const SPoly lin{-*rs.root, Scalar::one(f)};
      SPoly rest = mu, pk{Scalar::one(f)};
      for (;;) {
        auto [q, r] = sdivmod(rest, lin, f);
        if (!r.empty()) break;
        rest = q;
        pk = smul(pk, lin, f);
      }
      auto [g, s1, t1] = sxgcd(pk, rest, f);
      const Vec idem = eval_in(a, smul(t1, rest, f), e, u);
      if (a.mul(idem, idem) != idem || vec_is_zero(idem) || idem == e)
        throw Error(ErrorCode::Internal, "idempotent construction failed");
      split = idem;
    }
    if (split) {
      todo.push_back(a.sub(e, *split));
      todo.push_back(*split);
      continue;
    }
    if (!local)
      throw Error(ErrorCode::FactorizationIncomplete,
                  "no splitting found and locality not certified for the factor with unit " + a.to_string(e));
    out.factors.push_back(LocalFactor{e, sub_algebra(a, e, basis), local->first, local->second});
  }
  std::sort(out.factors.begin(), out.factors.end(), [&a](const LocalFactor& x, const LocalFactor& y) {
    if (x.algebra.dim() != y.algebra.dim()) return x.algebra.dim() < y.algebra.dim();
    return a.to_string(x.idempotent) < a.to_string(y.idempotent);
  });
  Vec sum = a.zero();
  out.orthogonal = out.idempotent = true;
  for (std::size_t i = 0; i < out.factors.size(); ++i) {
    const Vec& ei = out.factors[i].idempotent;
    sum = a.add(sum, ei);
    out.idempotent = out.idempotent && a.mul(ei, ei) == ei;
    for (std::size_t j = i + 1; j < out.factors.size(); ++j)
      out.orthogonal = out.orthogonal && vec_is_zero(a.mul(ei, out.factors[j].idempotent));
  }
  out.sum_is_one = sum == a.unit();
  out.status = "DECOMPOSED";
  for (const auto& fac : out.factors)
    if (fac.residue_degree > 1) out.status = "NOT_DECOMPOSED";
  return out;
}

UnitsResult units_generated(const FiniteDimAlgebra& a) {
  const auto& f = a.field();
  const std::size_t n = a.dim();
  UnitsResult res;
  const std::uint64_t p = f.characteristic();
  if (p == 0 || p > n) {
    // Multiplication by g has at most n eigenvalues, so one of 0..n avoids them.
    res.method = "spectral-shift";
    for (std::size_t i = 0; i < n; ++i) {
      const Vec g = a.basis_vector(i);
      for (long lam = 0; lam <= static_cast<long>(n); ++lam) {
        const Scalar l = Scalar::from_int(f, lam);
        if (!a.is_unit(a.add(g, a.scalar(l)))) continue;
        std::ostringstream w;
        if (lam == 0) {
          w << a.names()[i] << " is a unit";
        } else {
          w << a.names()[i] << " = (" << a.to_string(a.add(g, a.scalar(l))) << ") - " << l.to_string();
        }
        res.witness.push_back(w.str());
        break;
      }
    }
    res.status = Tri::True;
    return res;
  }
  res.method = "exhaustive";
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(p);
  if (total > (1 << 20)) throw Error(ErrorCode::ResourceLimit, "too many elements to enumerate");
  std::vector<Vec> units;
  std::vector<std::uint64_t> digits(n, 0);
  for (;;) {
    Vec v = a.zero();
    for (std::size_t i = 0; i < n; ++i) v[i] = Scalar::from_integer(f, mpz_class(static_cast<unsigned long>(digits[i])));
    if (a.is_unit(v)) units.push_back(v);
    std::size_t k = 0;
    while (k < n && ++digits[k] == p) digits[k++] = 0;
    if (k == n) break;
  }
  // Units form a group, so their span is already the generated subalgebra.
  const std::size_t span = mat_rank(Mat(units.begin(), units.end()));
  for (const auto& u : units) res.witness.push_back(a.to_string(u));
  res.status = span == n ? Tri::True : Tri::False;
  res.witness.push_back("unit span dimension " + std::to_string(span) + " of " + std::to_string(n));
  return res;
}

UnitsResult units_generated(const Presentation& p) {
  UnitsResult res;
  res.method = "family catalog";
  if (!p.family) return res;
  if (p.family->id == FamilyId::Laurent) {
    res.status = Tri::True;
    for (const auto& g : p.gens) res.witness.push_back(g.name + "^1, " + g.name + "^-1");
  } else if (p.family->id == FamilyId::Poly) {
    res.status = Tri::False;
    res.witness.push_back("units of a polynomial ring are the nonzero scalars");
  }
  return res;
}

GeneratingSetResult verify_generating_set(const FiniteDimAlgebra& b, int n, const std::vector<std::string>& f_list,
                                          int degree_cap) {
  const auto& f = b.field();
  const std::size_t dim = b.dim();
  // Elements of b[t] as Terms keyed by (t-exponents..., basis index).
  auto key = [&](const std::vector<int>& t, std::size_t i) {
    Monomial m;
    m.e = t;
    m.e.push_back(static_cast<int>(i));
    return m;
  };
  auto tdeg = [&](const Terms& v) {
    int d = -1;
    for (const auto& [m, c] : v) {
      int s = 0;
      for (int k = 0; k < n; ++k) s += m.e[k];
      d = std::max(d, s);
    }
    return d;
  };
  auto tmul = [&](const Terms& x, const Terms& y) {
    Terms out;
    for (const auto& [mx, cx] : x)
      for (const auto& [my, cy] : y) {
        std::vector<int> t(n);
        for (int k = 0; k < n; ++k) t[k] = mx.e[k] + my.e[k];
        const Vec& p = b.product(mx.e[n], my.e[n]);
        for (std::size_t r = 0; r < dim; ++r)
          if (!p[r].is_zero()) add_term(out, key(t, r), cx * cy * p[r]);
      }
    return out;
  };
  auto from_vec = [&](const Vec& v) {
    Terms out;
    for (std::size_t r = 0; r < dim; ++r)
      if (!v[r].is_zero()) add_term(out, key(std::vector<int>(n, 0), r), v[r]);
    return out;
  };
  auto t_var = [&](int k) {
    std::vector<int> t(n, 0);
    t[k] = 1;
    return tmul(Terms{{key(t, 0), Scalar::one(f)}}, from_vec(b.unit()));
  };

  struct Ops {
    decltype(tmul)& m;
    decltype(from_vec)& fv;
    decltype(t_var)& tv;
    const FiniteDimAlgebra& b;
    int n;
    Terms number(const mpz_class& z) { return fv(b.scalar(Scalar::from_integer(b.field(), z))); }
    Terms symbol(const ExprNode& node) {
      for (int k = 0; k < n; ++k)
        if (node.symbol == "t" + std::to_string(k + 1) || (n == 1 && node.symbol == "t")) return tv(k);
      for (std::size_t i = 0; i < b.dim(); ++i)
        if (b.names()[i] == node.symbol) return fv(b.basis_vector(i));
      if (node.symbol == "q" && b.field().has_q()) return fv(b.scalar(Scalar::q(b.field())));
      throw Error(ErrorCode::ValidationError, "unknown symbol '" + node.symbol + "'");
    }
    Terms add(Terms x, const Terms& y) {
      add_scaled(x, y, Scalar::one(b.field()));
      return x;
    }
    Terms sub(Terms x, const Terms& y) {
      add_scaled(x, y, -Scalar::one(b.field()));
      return x;
    }
    Terms mul(const Terms& x, const Terms& y) { return m(x, y); }
    Terms neg(const Terms& x) { return scale_terms(x, -Scalar::one(b.field())); }
    Terms div(const Terms& x, const Terms& y, const ExprNode&) {
      // y must be c * 1 with c != 0.
      Vec v = b.zero();
      for (const auto& [m, c] : y) {
        for (int k = 0; k < n; ++k)
          if (m.e[k] != 0) throw Error(ErrorCode::ValidationError, "division is only by nonzero scalars");
        v[m.e[n]] = c;
      }
      std::size_t i = 0;
      while (b.unit()[i].is_zero()) ++i;
      const Scalar c = v[i] / b.unit()[i];
      if (c.is_zero() || v != b.scalar(c)) throw Error(ErrorCode::ValidationError, "division is only by nonzero scalars");
      return scale_terms(x, c.inverse());
    }
    Terms pow(const Terms& x, long e, const ExprNode&) {
      if (e < 0) throw Error(ErrorCode::NegativeExponent, "negative powers are not polynomial");
      Terms acc = fv(b.unit());
      for (long i = 0; i < e; ++i) acc = m(acc, x);
      return acc;
    }
  } ops{tmul, from_vec, t_var, b, n};

  std::vector<Terms> gens;
  for (std::size_t i = 0; i < dim; ++i) gens.push_back(from_vec(b.basis_vector(i)));
  for (const auto& s : f_list) gens.push_back(evaluate<Terms>(*parse_expression(s), ops));

  Echelon span(f);
  std::vector<Terms> frontier;
  auto absorb = [&](const Terms& v, std::vector<Terms>& next) {
    if (v.empty() || tdeg(v) > degree_cap) return;
    if (span.insert(v).independent) next.push_back(v);
    if (span.rank() > 200000) throw Error(ErrorCode::ResourceLimit, "generating-set closure too large");
  };
  absorb(from_vec(b.unit()), frontier);
  for (const auto& g : gens) absorb(g, frontier);
  while (!frontier.empty()) {
    std::vector<Terms> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) absorb(tmul(v, g), next);
    frontier = std::move(next);
  }
  GeneratingSetResult res;
  res.span_dim = span.rank();
  res.generates = true;
  for (int k = 0; k < n; ++k) {
    res.recovered.push_back(span.contains(t_var(k)));
    res.generates = res.generates && res.recovered.back();
  }
  return res;
}

}  // namespace skewcalc
