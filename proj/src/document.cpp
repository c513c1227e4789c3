#include "skewcalc/document.hpp"

#include <set>
#include <sstream>

#include "skewcalc/expr.hpp"
#include "skewcalc/families.hpp"
#include "skewcalc/ore.hpp"

namespace skewcalc {

namespace {

/// Laurent polynomial in h, used for the GWA parameter a(h).
using HPoly = std::map<int, Scalar>;

struct HPolyOps {
  FieldDescriptor field;
  HPoly clean(HPoly p) {
    for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
    return p;
  }
  HPoly number(const mpz_class& n) { return clean({{0, Scalar::from_integer(field, n)}}); }
  HPoly symbol(const ExprNode& n) {
    if (n.symbol == "h") return {{1, Scalar::one(field)}};
    if (n.symbol == "q") return {{0, Scalar::q(field)}};
    throw Error(ErrorCode::BadParams, "unknown symbol '" + n.symbol + "' in a(h) at line " + std::to_string(n.line) +
                                          ", column " + std::to_string(n.column));
  }
  HPoly add(HPoly a, const HPoly& b) {
    for (const auto& [k, c] : b) {
      auto it = a.find(k);
      if (it == a.end()) a.emplace(k, c);
      else it->second = it->second + c;
    }
    return clean(std::move(a));
  }
  HPoly neg(HPoly a) {
    for (auto& kv : a) kv.second = -kv.second;
    return a;
  }
  HPoly sub(HPoly a, const HPoly& b) { return add(std::move(a), neg(b)); }
  HPoly mul(const HPoly& a, const HPoly& b) {
    HPoly r;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) r = add(std::move(r), HPoly{{ka + kb, ca * cb}});
    return r;
  }
  HPoly div(const HPoly& a, const HPoly& b, const ExprNode&) {
    if (b.size() != 1) throw Error(ErrorCode::UnsupportedGwa, "a(h) may only be divided by monomials");
    const auto& [k, c] = *b.begin();
    HPoly r;
    for (const auto& [ka, ca] : a) r.emplace(ka - k, ca / c);
    return r;
  }
  HPoly pow(const HPoly& a, long e, const ExprNode&) {
    if (e < 0) {
      if (a.size() != 1) throw Error(ErrorCode::UnsupportedGwa, "negative power of a non-monomial in a(h)");
      const auto& [k, c] = *a.begin();
      return {{static_cast<int>(k * e), c.pow(e)}};
    }
    HPoly r{{0, Scalar::one(field)}};
    for (long k = 0; k < e; ++k) r = mul(r, a);
    return r;
  }
};

std::string hpoly_to_string(const HPoly& a) {
  Terms t;
  for (const auto& [k, c] : a) add_term(t, Monomial(std::vector<int>{k}), c);
  return terms_to_string(t, {"h"});
}

/// Does an expression mention the symbol q?
bool mentions_q(const ExprNode& n) {
  if (n.kind == ExprNode::Kind::Symbol) return n.symbol == "q";
  return (n.lhs && mentions_q(*n.lhs)) || (n.rhs && mentions_q(*n.rhs));
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

/// File-declared provenance always carries the user marker.
std::string user_provenance(const std::string& given) {
  if (given.empty()) return kFileProvenance;
  if (given.find("user") != std::string::npos) return given;
  return "user: " + given;
}

class DocParser {
 public:
  explicit DocParser(const std::string& text) : toks_(tokenize(text)) {}

  Document run() {
    while (peek().kind != TokKind::End) {
      const Token& kw = expect_ident();
      if (kw.text == "algebra") parse_algebra();
      else if (kw.text == "family") parse_family();
      else if (kw.text == "ore") parse_ore();
      else if (kw.text == "morphism") parse_morphism();
      else if (kw.text == "fdalgebra") parse_fdalgebra();
      else throw_syntax(kw, "expected a stanza keyword, found '" + kw.text + "'");
    }
    return std::move(doc_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != TokKind::End) ++pos_;
    return t;
  }
  bool at_punct(const char* p) const { return peek().kind == TokKind::Punct && peek().text == p; }
  bool at_ident(const char* w) const { return peek().kind == TokKind::Ident && peek().text == w; }
  void expect_punct(const char* p) {
    if (!at_punct(p)) throw_syntax(peek(), std::string("expected '") + p + "'");
    ++pos_;
  }
  const Token& expect_ident() {
    if (peek().kind != TokKind::Ident) throw_syntax(peek(), "expected an identifier");
    return next();
  }
  long expect_int() {
    bool neg = false;
    if (at_punct("-")) {
      neg = true;
      ++pos_;
    }
    if (peek().kind != TokKind::Number) throw_syntax(peek(), "expected an integer");
    const Token& t = next();
    long v = 0;
    try {
      v = std::stol(t.text);
    } catch (const std::exception&) {
      throw_syntax(t, "integer out of range");
    }
    return neg ? -v : v;
  }
  ExprPtr expr() {
    ExprParser p(toks_, pos_);
    return p.parse_expr();
  }

  void claim_name(const Token& t, StanzaKind kind) {
    if (names_.count(t.text)) throw_syntax(t, "duplicate stanza name '" + t.text + "'");
    names_.insert(t.text);
    doc_.stanzas.push_back(Stanza{kind, t.text});
  }

  AlgebraPtr lookup_algebra(const Token& t) const {
    auto it = doc_.algebras.find(t.text);
    if (it == doc_.algebras.end())
      throw Error(ErrorCode::ValidationError, "unknown algebra '" + t.text + "' at line " + std::to_string(t.line) +
                                                  ", column " + std::to_string(t.column));
    return it->second;
  }

  FieldDescriptor parse_field() {
    const Token& t = expect_ident();
    if (t.text == "rational") return FieldDescriptor::rational();
    if (t.text == "ratfunc") {
      expect_punct("(");
      const Token& v = expect_ident();
      if (v.text != "q") throw_syntax(v, "the rational function field is in q");
      expect_punct(")");
      return FieldDescriptor::ratfunc();
    }
    if (t.text == "gf" || t.text == "cyclotomic") {
      expect_punct("(");
      const long v = expect_int();
      expect_punct(")");
      if (v <= 0) throw Error(ErrorCode::BadParams, "field parameter must be positive");
      return t.text == "gf" ? FieldDescriptor::prime(static_cast<std::uint64_t>(v))
                            : FieldDescriptor::cyclotomic(static_cast<std::uint64_t>(v));
    }
    throw_syntax(t, "expected rational, gf(P), ratfunc(q) or cyclotomic(L)");
  }

  FlagEntry parse_flag() {
    const Token& t = expect_ident();
    const auto f = flag_from_name(t.text);
    if (!f) throw_syntax(t, "unknown flag '" + t.text + "'");
    FlagEntry e;
    e.flag = *f;
    if (*f == Flag::Stratiform) {
      expect_punct("(");
      e.length = static_cast<int>(expect_int());
      expect_punct(")");
      if (e.length < 0) throw Error(ErrorCode::BadParams, "stratiform length must be non-negative");
    }
    std::string prov;
    if (peek().kind == TokKind::String) prov = next().text;
    e.provenance = user_provenance(prov);
    expect_punct(";");
    return e;
  }

  void parse_algebra() {
    const Token& name = expect_ident();
    claim_name(name, StanzaKind::Algebra);
    Presentation p;
    p.name = name.text;
    bool have_field = false, have_gens = false;
    std::set<std::pair<int, int>> seen;
    expect_punct("{");
    while (!at_punct("}")) {
      const Token& kw = expect_ident();
      if (kw.text == "field") {
        if (have_field || have_gens) throw_syntax(kw, "field must be declared once, before gens");
        p.field = parse_field();
        have_field = true;
        expect_punct(";");
      } else if (kw.text == "gens") {
        if (have_gens) throw_syntax(kw, "gens declared twice");
        have_gens = true;
        do {
          const Token& g = expect_ident();
          if (p.index_of(g.text) >= 0) throw_syntax(g, "duplicate generator '" + g.text + "'");
          if (g.text == "q" && p.field.has_q()) throw_syntax(g, "generator name 'q' is reserved in this field");
          GeneratorInfo gi{g.text, false};
          if (at_ident("inv")) {
            ++pos_;
            gi.invertible = true;
          }
          p.gens.push_back(gi);
        } while (at_punct(",") && (++pos_, true));
        expect_punct(";");
      } else if (kw.text == "rule") {
        if (!have_gens) throw_syntax(kw, "rule before gens");
        const Token& a = expect_ident();
        expect_punct("*");
        const Token& b = expect_ident();
        expect_punct("=");
        const ExprPtr rhs = expr();
        expect_punct(";");
        const int ja = p.index_of(a.text), ib = p.index_of(b.text);
        if (ja < 0) throw_syntax(a, "unknown generator '" + a.text + "'");
        if (ib < 0) throw_syntax(b, "unknown generator '" + b.text + "'");
        if (!seen.insert({ja, ib}).second)
          throw_syntax(a, "duplicate rule for this pair");
        Terms t = parse_normal_terms(p, *rhs);
        if (ja > ib) {
          Monomial lead(p.size());
          lead.e[ib] = 1;
          lead.e[ja] = 1;
          Scalar c = Scalar::zero(p.field);
          if (auto it = t.find(lead); it != t.end()) {
            c = it->second;
            t.erase(it);
          }
          p.rules.push_back(RewriteRule{ja, ib, c, std::move(t)});
        } else if (ib == ja + 1) {
          p.reductions.push_back(ReductionRule{ja, std::move(t)});
        } else {
          throw_syntax(a, "a rule must have a descending left side or adjacent ascending generators");
        }
      } else if (kw.text == "flag") {
        FlagEntry e = parse_flag();
        p.set_flag(e.flag, e.provenance, e.length);
      } else {
        throw_syntax(kw, "expected field, gens, rule or flag");
      }
    }
    expect_punct("}");
    if (!have_gens) throw Error(ErrorCode::ValidationError, "algebra '" + p.name + "' declares no generators");
    const std::string key = p.name;
    doc_.algebras.emplace(key, Algebra::create(std::move(p)));
  }

  void parse_family() {
    const Token& kw = expect_ident();
    const auto id = family_from_keyword(kw.text);
    if (!id) throw_syntax(kw, "unknown family '" + kw.text + "'");
    std::string name = kw.text;
    const Token* name_tok = &kw;
    std::optional<FieldDescriptor> field;
    std::map<std::string, ExprPtr> params;
    std::map<std::string, const Token*> where;
    while (!at_punct(";")) {
      const Token& key = expect_ident();
      expect_punct("=");
      if (params.count(key.text) || (key.text == "field" && field) || (key.text == "name" && name_tok != &kw))
        throw_syntax(key, "duplicate key '" + key.text + "'");
      if (key.text == "field") {
        field = parse_field();
      } else if (key.text == "name") {
        name_tok = &expect_ident();
        name = name_tok->text;
      } else {
        params[key.text] = expr();
        where[key.text] = &key;
      }
    }
    expect_punct(";");
    claim_name(*name_tok, StanzaKind::Family);

    bool uses_q = false;
    for (const auto& kv : params) uses_q = uses_q || mentions_q(*kv.second);
    const FieldDescriptor fd = field ? *field : (uses_q ? FieldDescriptor::ratfunc() : FieldDescriptor::rational());
    std::set<std::string> used;
    auto scalar = [&](const std::string& k) {
      used.insert(k);
      return evaluate_scalar(fd, *params.at(k));
    };
    auto integer = [&](const std::string& k) -> long {
      const Scalar s = scalar(k);
      const mpq_class r = s.to_rational();
      if (r.get_den() != 1 || !r.get_num().fits_slong_p())
        throw Error(ErrorCode::BadParams, "parameter " + k + " must be an integer");
      return r.get_num().get_si();
    };
    auto n_param = [&]() -> int {
      if (!params.count("n")) throw Error(ErrorCode::BadParams, "family " + kw.text + " needs n");
      const long n = integer("n");
      if (n < 1 || n > 64) throw Error(ErrorCode::BadParams, "n must lie in 1..64");
      return static_cast<int>(n);
    };
    // Keys aIJ / qIJ; "a1_12" style separates multi-digit indices.
    auto pair_key = [](const std::string& k, char head, int n) -> std::optional<std::pair<int, int>> {
      if (k.size() < 3 || k[0] != head) return std::nullopt;
      std::string rest = k.substr(1);
      int i = 0, j = 0;
      if (auto u = rest.find('_'); u != std::string::npos) {
        try {
          i = std::stoi(rest.substr(0, u));
          j = std::stoi(rest.substr(u + 1));
        } catch (const std::exception&) {
          return std::nullopt;
        }
      } else if (rest.size() == 2 && std::isdigit(static_cast<unsigned char>(rest[0])) &&
                 std::isdigit(static_cast<unsigned char>(rest[1]))) {
        i = rest[0] - '0';
        j = rest[1] - '0';
      } else {
        return std::nullopt;
      }
      if (i < 1 || j < 1 || i > n || j > n) return std::nullopt;
      return std::make_pair(i - 1, j - 1);
    };

    FamilySpec spec;
    switch (*id) {
      case FamilyId::Poly: spec = poly_spec(n_param(), fd); break;
      case FamilyId::Laurent: spec = laurent_spec(n_param(), fd); break;
      case FamilyId::Weyl1: spec = weyl1_spec(fd); break;
      case FamilyId::MinusOnePlane: spec = minus_one_plane_spec(fd); break;
      case FamilyId::SkewPoly:
      case FamilyId::QuantumTorus: {
        const int n = n_param();
        if (params.count("l")) {
          if (field) throw Error(ErrorCode::BadParams, "the field is determined by l");
          const long l = integer("l");
          if (l < 1) throw Error(ErrorCode::BadParams, "l must be positive");
          std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
          for (const auto& kv : params) {
            const auto ij = pair_key(kv.first, 'a', n);
            if (!ij) continue;
            if (ij->first >= ij->second)
              throw Error(ErrorCode::BadParams, "give a_ij with i < j; a_ji = -a_ij is implied");
            const long v = integer(kv.first);
            a[ij->first][ij->second] = v;
            a[ij->second][ij->first] = -v;
          }
          spec = quantum_torus_root_spec(n, static_cast<std::uint64_t>(l), a);
          spec.id = *id;
        } else {
          std::vector<std::vector<Scalar>> Q(n, std::vector<Scalar>(n, Scalar::one(fd)));
          for (const auto& kv : params) {
            const auto ij = pair_key(kv.first, 'q', n);
            if (!ij) continue;
            if (ij->first >= ij->second)
              throw Error(ErrorCode::BadParams, "give q_ij with i < j; q_ji = q_ij^-1 is implied");
            const Scalar v = scalar(kv.first);
            if (v.is_zero()) throw Error(ErrorCode::BadParams, "commutation scalars must be nonzero");
            Q[ij->first][ij->second] = v;
            Q[ij->second][ij->first] = v.inverse();
          }
          spec = *id == FamilyId::SkewPoly ? skew_poly_spec(Q) : quantum_torus_spec(Q);
        }
        break;
      }
      case FamilyId::QuantumWeyl1:
      case FamilyId::LocalizedQWeyl1: {
        if (!params.count("q")) throw Error(ErrorCode::BadParams, "family " + kw.text + " needs q");
        const Scalar q = scalar("q");
        spec = *id == FamilyId::QuantumWeyl1 ? quantum_weyl1_spec(q) : localized_qweyl1_spec(q);
        break;
      }
      case FamilyId::Gwa: {
        if (!params.count("q") || !params.count("a")) throw Error(ErrorCode::BadParams, "family gwa needs q and a");
        HPolyOps ops{fd};
        used.insert("a");
        const HPoly a = evaluate<HPoly>(*params.at("a"), ops);
        spec = gwa_spec(a, scalar("q"));
        break;
      }
      case FamilyId::FiniteRankQWeyl: {
        const int n = n_param();
        std::vector<Scalar> qs;
        for (int i = 1; i <= n; ++i) {
          const std::string k = "q" + std::to_string(i);
          if (!params.count(k)) throw Error(ErrorCode::BadParams, "family quantum_weyl needs " + k);
          qs.push_back(scalar(k));
        }
        spec = finite_rank_quantum_weyl_spec(qs);
        break;
      }
    }
    for (const auto& kv : params)
      if (!used.count(kv.first)) throw_syntax(*where.at(kv.first), "unused parameter '" + kv.first + "'");
    AlgebraPtr alg = build_family(spec);
    if (alg->presentation().name != name) {
      Presentation p = alg->presentation();
      p.name = name;
      alg = Algebra::create(std::move(p));
    }
    doc_.families.emplace(name, spec);
    doc_.algebras.emplace(name, alg);
  }

  void parse_ore() {
    const Token& name = expect_ident();
    claim_name(name, StanzaKind::Ore);
    OreDecl decl;
    AlgebraPtr base;
    std::map<int, Element> sigma, delta;
    expect_punct("{");
    while (!at_punct("}")) {
      const Token& kw = expect_ident();
      if (kw.text == "base") {
        if (base) throw_syntax(kw, "base declared twice");
        const Token& b = expect_ident();
        base = lookup_algebra(b);
        decl.base = b.text;
        expect_punct(";");
      } else if (kw.text == "var") {
        if (!decl.var.empty()) throw_syntax(kw, "var declared twice");
        decl.var = expect_ident().text;
        if (at_ident("inv")) {
          ++pos_;
          decl.invertible = true;
        }
        expect_punct(";");
      } else if (kw.text == "sigma" || kw.text == "delta") {
        if (!base) throw_syntax(kw, "base must be declared first");
        const Token& g = expect_ident();
        const int i = base->presentation().index_of(g.text);
        if (i < 0) throw_syntax(g, "unknown generator '" + g.text + "'");
        if (peek().kind != TokKind::Arrow) throw_syntax(peek(), "expected '->'");
        ++pos_;
        const Element img = base->evaluate(*expr());
        expect_punct(";");
        auto& slot = kw.text == "sigma" ? sigma : delta;
        if (!slot.emplace(i, img).second) throw_syntax(g, "duplicate image for '" + g.text + "'");
      } else if (kw.text == "flag") {
        decl.flags.push_back(parse_flag());
      } else {
        throw_syntax(kw, "expected base, var, sigma, delta or flag");
      }
    }
    expect_punct("}");
    if (!base || decl.var.empty()) throw Error(ErrorCode::ValidationError, "ore stanza needs base and var");
    for (std::size_t i = 0; i < base->size(); ++i) {
      decl.sigma.push_back(sigma.count(i) ? sigma.at(i) : base->gen(static_cast<int>(i)));
      decl.delta.push_back(delta.count(i) ? delta.at(i) : base->zero());
    }
    Presentation p = ore_extend_presentation(*base, decl.var, decl.sigma, decl.delta, decl.invertible);
    p.name = name.text;
    for (const auto& f : decl.flags) p.set_flag(f.flag, f.provenance, f.length);
    doc_.algebras.emplace(name.text, Algebra::create(std::move(p)));
    doc_.ores.emplace(name.text, std::move(decl));
  }

  void parse_morphism() {
    const Token& name = expect_ident();
    claim_name(name, StanzaKind::Morphism);
    const AlgebraPtr src = lookup_algebra(expect_ident());
    if (peek().kind != TokKind::Arrow) throw_syntax(peek(), "expected '->'");
    ++pos_;
    const AlgebraPtr tgt = lookup_algebra(expect_ident());
    std::map<int, Element> img, inv;
    expect_punct("{");
    while (!at_punct("}")) {
      bool inverse = false;
      if (at_ident("inverse")) {
        ++pos_;
        inverse = true;
      }
      const Token& g = expect_ident();
      const int i = src->presentation().index_of(g.text);
      if (i < 0) throw_syntax(g, "unknown source generator '" + g.text + "'");
      if (inverse && !src->presentation().gens[i].invertible)
        throw_syntax(g, "'" + g.text + "' is not invertible");
      if (peek().kind != TokKind::Arrow) throw_syntax(peek(), "expected '->'");
      ++pos_;
      const Element e = tgt->evaluate(*expr());
      expect_punct(";");
      if (!(inverse ? inv : img).emplace(i, e).second) throw_syntax(g, "duplicate image for '" + g.text + "'");
    }
    expect_punct("}");
    Morphism m;
    m.name = name.text;
    m.source = src;
    m.target = tgt;
    for (std::size_t i = 0; i < src->size(); ++i) {
      const std::string& g = src->presentation().gens[i].name;
      if (img.count(i)) {
        m.images.push_back(img.at(i));
      } else if (tgt->presentation().index_of(g) >= 0) {
        m.images.push_back(tgt->gen(g));
      } else {
        throw Error(ErrorCode::ValidationError, "morphism '" + m.name + "' gives no image for '" + g + "'");
      }
      m.inverse_images.push_back(inv.count(i) ? std::optional<Element>(inv.at(i)) : std::nullopt);
    }
    const std::string key = m.name;
    doc_.morphisms.emplace(key, std::move(m));
  }

  void parse_fdalgebra() {
    const Token& name = expect_ident();
    claim_name(name, StanzaKind::FdAlgebra);
    FieldDescriptor fd;
    bool have_field = false;
    std::vector<std::string> basis;
    std::optional<ExprPtr> unit;
    std::vector<std::tuple<const Token*, const Token*, ExprPtr>> products;
    expect_punct("{");
    while (!at_punct("}")) {
      const Token& kw = expect_ident();
      if (kw.text == "field") {
        if (have_field || !basis.empty()) throw_syntax(kw, "field must be declared once, before basis");
        fd = parse_field();
        have_field = true;
      } else if (kw.text == "basis") {
        if (!basis.empty()) throw_syntax(kw, "basis declared twice");
        do {
          std::string b;
          if (peek().kind == TokKind::Number && peek().text == "1") b = next().text;
          else b = expect_ident().text;
          for (const auto& o : basis)
            if (o == b) throw_syntax(toks_[pos_ - 1], "duplicate basis element '" + b + "'");
          basis.push_back(b);
        } while (at_punct(",") && (++pos_, true));
      } else if (kw.text == "unit") {
        if (unit) throw_syntax(kw, "unit declared twice");
        unit = expr();
      } else if (kw.text == "product") {
        const Token& a = expect_ident();
        expect_punct("*");
        const Token& b = expect_ident();
        expect_punct("=");
        products.emplace_back(&a, &b, expr());
      } else {
        throw_syntax(kw, "expected field, basis, unit or product");
      }
      expect_punct(";");
    }
    expect_punct("}");
    const std::size_t d = basis.size();
    if (d == 0) throw Error(ErrorCode::ValidationError, "fdalgebra '" + name.text + "' has an empty basis");
    auto index = [&](const Token& t) {
      for (std::size_t i = 0; i < d; ++i)
        if (basis[i] == t.text) return i;
      throw_syntax(t, "unknown basis element '" + t.text + "'");
    };
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, zero_vec(fd, d)));
    std::vector<std::vector<bool>> set(d, std::vector<bool>(d, false));
    std::optional<std::size_t> one_idx;
    for (std::size_t i = 0; i < d; ++i)
      if (basis[i] == "1") one_idx = i;
    LinearOps lin{fd, basis};
    Vec u = zero_vec(fd, d);
    if (unit) {
      const Vec v = evaluate<Vec>(**unit, lin);
      if (!v.back().is_zero() && !one_idx)
        throw Error(ErrorCode::ValidationError, "the unit must be a combination of basis elements");
      u.assign(v.begin(), v.end() - 1);
      if (one_idx) u[*one_idx] += v.back();
    } else if (one_idx) {
      u[*one_idx] = Scalar::one(fd);
    } else {
      throw Error(ErrorCode::ValidationError, "fdalgebra '" + name.text + "' needs a basis element 1 or a unit");
    }
    // Constants in product expressions are multiples of the unit.
    auto to_vec = [&](const ExprNode& e) {
      const Vec v = evaluate<Vec>(e, lin);
      Vec r(v.begin(), v.end() - 1);
      for (std::size_t k = 0; k < d; ++k) r[k] += v.back() * u[k];
      return r;
    };
    if (one_idx)
      for (std::size_t j = 0; j < d; ++j) {
        Vec ej = zero_vec(fd, d);
        ej[j] = Scalar::one(fd);
        table[*one_idx][j] = table[j][*one_idx] = ej;
        set[*one_idx][j] = set[j][*one_idx] = true;
      }
    for (const auto& [a, b, e] : products) {
      const std::size_t i = index(*a), j = index(*b);
      if (set[i][j]) throw_syntax(*a, "product already determined");
      table[i][j] = table[j][i] = to_vec(*e);
      set[i][j] = set[j][i] = true;
    }
    doc_.fdalgebras.emplace(name.text, FiniteDimAlgebra::create(fd, basis, table, u));
  }

  /// Linear combinations of basis names; products of two names are rejected.
  struct LinearOps {
    FieldDescriptor field;
    const std::vector<std::string>& basis;
    Vec scalar(const Scalar& c) {
      Vec v = zero_vec(field, basis.size() + 1);
      v.back() = c;
      return v;
    }
    Vec number(const mpz_class& n) { return scalar(Scalar::from_integer(field, n)); }
    Vec symbol(const ExprNode& n) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == n.symbol) {
          Vec v = zero_vec(field, basis.size() + 1);
          v[i] = Scalar::one(field);
          return v;
        }
      if (n.symbol == "q") return scalar(Scalar::q(field));
      throw Error(ErrorCode::ValidationError, "unknown basis element '" + n.symbol + "' at line " +
                                                  std::to_string(n.line) + ", column " + std::to_string(n.column));
    }
    static bool is_const(const Vec& v) {
      for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!v[i].is_zero()) return false;
      return true;
    }
    Vec add(Vec a, const Vec& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      return a;
    }
    Vec neg(Vec a) {
      for (auto& c : a) c = -c;
      return a;
    }
    Vec sub(Vec a, const Vec& b) { return add(std::move(a), neg(b)); }
    Vec mul(const Vec& a, const Vec& b) {
      if (!is_const(a) && !is_const(b)) throw Error(ErrorCode::ValidationError, "products of basis elements are not linear");
      const Vec& c = is_const(a) ? a : b;
      Vec r = is_const(a) ? b : a;
      for (auto& x : r) x *= c.back();
      return r;
    }
    Vec div(const Vec& a, const Vec& b, const ExprNode&) {
      if (!is_const(b)) throw Error(ErrorCode::ValidationError, "division by a basis element");
      return mul(a, scalar(b.back().inverse()));
    }
    Vec pow(const Vec& a, long e, const ExprNode&) {
      if (!is_const(a)) throw Error(ErrorCode::ValidationError, "powers of basis elements are not linear");
      return scalar(a.back().pow(e));
    }
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document doc_;
  std::set<std::string> names_;
};

}  // namespace

Document parse_document(const std::string& text) { return DocParser(text).run(); }

AlgebraPtr Document::algebra(const std::string& name) const {
  if (!name.empty()) {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw Error(ErrorCode::ValidationError, "no algebra named '" + name + "'");
    return it->second;
  }
  for (auto it = stanzas.rbegin(); it != stanzas.rend(); ++it)
    if (it->kind == StanzaKind::Algebra || it->kind == StanzaKind::Family || it->kind == StanzaKind::Ore)
      return algebras.at(it->name);
  throw Error(ErrorCode::ValidationError, "the input declares no algebra");
}

const Morphism& Document::morphism(const std::string& name) const {
  if (!name.empty()) {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) throw Error(ErrorCode::ValidationError, "no morphism named '" + name + "'");
    return it->second;
  }
  for (const auto& s : stanzas)
    if (s.kind == StanzaKind::Morphism) return morphisms.at(s.name);
  throw Error(ErrorCode::ValidationError, "the input declares no morphism");
}

const FiniteDimAlgebra& Document::fdalgebra(const std::string& name) const {
  if (!name.empty()) {
    auto it = fdalgebras.find(name);
    if (it == fdalgebras.end()) throw Error(ErrorCode::ValidationError, "no fdalgebra named '" + name + "'");
    return it->second;
  }
  for (auto it = stanzas.rbegin(); it != stanzas.rend(); ++it)
    if (it->kind == StanzaKind::FdAlgebra) return fdalgebras.at(it->name);
  throw Error(ErrorCode::ValidationError, "the input declares no fdalgebra");
}

namespace {

void print_flag(std::ostream& os, const FlagEntry& f) {
  os << "  flag " << flag_name(f.flag);
  if (f.flag == Flag::Stratiform) os << "(" << f.length << ")";
  os << " " << quote(f.provenance) << ";\n";
}

void print_algebra(std::ostream& os, const Presentation& p) {
  const auto names = p.names();
  os << "algebra " << p.name << " {\n";
  os << "  field " << p.field.to_string() << ";\n";
  os << "  gens ";
  for (std::size_t i = 0; i < p.gens.size(); ++i) {
    if (i) os << ", ";
    os << p.gens[i].name << (p.gens[i].invertible ? " inv" : "");
  }
  os << ";\n";
  for (const auto& r : p.rules) {
    Terms rhs = r.tail;
    Monomial lead(p.size());
    lead.e[r.i] = 1;
    lead.e[r.j] = 1;
    add_term(rhs, lead, r.leading);
    os << "  rule " << names[r.j] << "*" << names[r.i] << " = " << terms_to_string(rhs, names) << ";\n";
  }
  for (const auto& r : p.reductions)
    os << "  rule " << names[r.i] << "*" << names[r.i + 1] << " = " << terms_to_string(r.rhs, names) << ";\n";
  for (const auto& f : p.flags) print_flag(os, f);
  os << "}\n";
}

void print_family(std::ostream& os, const std::string& name, const FamilySpec& s) {
  os << "family " << family_keyword(s.id);
  if (name != family_keyword(s.id)) os << " name=" << name;
  auto idx = [&](int i, int j) {
    return s.n <= 9 ? std::to_string(i + 1) + std::to_string(j + 1)
                    : std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  const bool root = s.ell > 0;
  if (!root) os << " field=" << s.field.to_string();
  switch (s.id) {
    case FamilyId::Poly:
    case FamilyId::Laurent: os << " n=" << s.n; break;
    case FamilyId::SkewPoly:
    case FamilyId::QuantumTorus:
      os << " n=" << s.n;
      if (root) {
        os << " l=" << s.ell;
        for (int i = 0; i < s.n; ++i)
          for (int j = i + 1; j < s.n; ++j)
            if (s.a[i][j] != 0) os << " a" << idx(i, j) << "=" << s.a[i][j];
      } else {
        for (int i = 0; i < s.n; ++i)
          for (int j = i + 1; j < s.n; ++j)
            if (!s.Q[i][j].is_one()) os << " q" << idx(i, j) << "=(" << s.Q[i][j].to_string() << ")";
      }
      break;
    case FamilyId::QuantumWeyl1:
    case FamilyId::LocalizedQWeyl1: os << " q=(" << s.q->to_string() << ")"; break;
    case FamilyId::Gwa: os << " q=(" << s.q->to_string() << ") a=(" << hpoly_to_string(s.gwa_a) << ")"; break;
    case FamilyId::FiniteRankQWeyl:
      os << " n=" << s.n;
      for (int i = 0; i < s.n; ++i) os << " q" << (i + 1) << "=(" << s.q_list[i].to_string() << ")";
      break;
    case FamilyId::Weyl1:
    case FamilyId::MinusOnePlane: break;
  }
  os << ";\n";
}

void print_ore(std::ostream& os, const std::string& name, const OreDecl& d, const Algebra& base) {
  os << "ore " << name << " {\n";
  os << "  base " << d.base << ";\n";
  os << "  var " << d.var << (d.invertible ? " inv" : "") << ";\n";
  const auto& names = base.presentation().gens;
  for (std::size_t i = 0; i < d.sigma.size(); ++i)
    if (d.sigma[i] != base.gen(static_cast<int>(i)))
      os << "  sigma " << names[i].name << " -> " << d.sigma[i].to_string() << ";\n";
  for (std::size_t i = 0; i < d.delta.size(); ++i)
    if (!d.delta[i].is_zero()) os << "  delta " << names[i].name << " -> " << d.delta[i].to_string() << ";\n";
  for (const auto& f : d.flags) print_flag(os, f);
  os << "}\n";
}

void print_morphism(std::ostream& os, const Morphism& m) {
  const Presentation& src = m.source->presentation();
  os << "morphism " << m.name << " " << src.name << " -> " << m.target->presentation().name << " {\n";
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    os << "  " << src.gens[i].name << " -> " << m.images[i].to_string() << ";\n";
    if (m.inverse_images[i])
      os << "  inverse " << src.gens[i].name << " -> " << m.inverse_images[i]->to_string() << ";\n";
  }
  os << "}\n";
}

void print_fdalgebra(std::ostream& os, const std::string& name, const FiniteDimAlgebra& a) {
  const auto& b = a.names();
  const std::size_t d = a.dim();
  std::optional<std::size_t> one_idx;
  for (std::size_t i = 0; i < d; ++i)
    if (b[i] == "1" && a.unit() == a.basis_vector(i)) one_idx = i;
  os << "fdalgebra " << name << " {\n";
  os << "  field " << a.field().to_string() << ";\n";
  os << "  basis ";
  for (std::size_t i = 0; i < d; ++i) os << (i ? ", " : "") << b[i];
  os << ";\n";
  if (!one_idx) os << "  unit " << a.to_string(a.unit()) << ";\n";
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      if (one_idx && (i == *one_idx || j == *one_idx)) continue;
      const Vec& v = a.product(i, j);
      if (vec_is_zero(v)) continue;
      os << "  product " << b[i] << "*" << b[j] << " = " << a.to_string(v) << ";\n";
    }
  os << "}\n";
}

bool same_terms(const Terms& a, const Terms& b) { return a == b; }

bool same_flags(const std::vector<FlagEntry>& a, const std::vector<FlagEntry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].flag != b[i].flag || a[i].length != b[i].length || a[i].provenance != b[i].provenance) return false;
  return true;
}

}  // namespace

std::string print_document(const Document& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : d.stanzas) {
    if (!first) os << "\n";
    first = false;
    switch (s.kind) {
      case StanzaKind::Algebra: print_algebra(os, d.algebras.at(s.name)->presentation()); break;
      case StanzaKind::Family: print_family(os, s.name, d.families.at(s.name)); break;
      case StanzaKind::Ore: {
        const OreDecl& o = d.ores.at(s.name);
        print_ore(os, s.name, o, *d.algebras.at(o.base));
        break;
      }
      case StanzaKind::Morphism: print_morphism(os, d.morphisms.at(s.name)); break;
      case StanzaKind::FdAlgebra: print_fdalgebra(os, s.name, d.fdalgebras.at(s.name)); break;
    }
  }
  return os.str();
}

bool same_presentation(const Presentation& a, const Presentation& b) {
  if (a.name != b.name || a.field != b.field || a.gens.size() != b.gens.size()) return false;
  for (std::size_t i = 0; i < a.gens.size(); ++i)
    if (a.gens[i].name != b.gens[i].name || a.gens[i].invertible != b.gens[i].invertible) return false;
  if (a.rules.size() != b.rules.size() || a.reductions.size() != b.reductions.size()) return false;
  // Rule order is not significant.
  for (const auto& r : a.rules) {
    bool found = false;
    for (const auto& s : b.rules)
      if (r.j == s.j && r.i == s.i && r.leading == s.leading && same_terms(r.tail, s.tail)) found = true;
    if (!found) return false;
  }
  for (const auto& r : a.reductions) {
    bool found = false;
    for (const auto& s : b.reductions)
      if (r.i == s.i && same_terms(r.rhs, s.rhs)) found = true;
    if (!found) return false;
  }
  if (a.tower.size() != b.tower.size()) return false;
  for (std::size_t k = 0; k < a.tower.size(); ++k) {
    const OreStep &x = a.tower[k], &y = b.tower[k];
    if (x.base_size != y.base_size || x.sigma != y.sigma || x.delta != y.delta) return false;
  }
  return same_flags(a.flags, b.flags);
}

bool same_document(const Document& a, const Document& b) {
  if (a.stanzas.size() != b.stanzas.size()) return false;
  for (std::size_t k = 0; k < a.stanzas.size(); ++k) {
    const Stanza &s = a.stanzas[k], &t = b.stanzas[k];
    if (s.kind != t.kind || s.name != t.name) return false;
    switch (s.kind) {
      case StanzaKind::Algebra:
      case StanzaKind::Family:
      case StanzaKind::Ore:
        if (!same_presentation(a.algebras.at(s.name)->presentation(), b.algebras.at(s.name)->presentation()))
          return false;
        break;
      case StanzaKind::Morphism: {
        const Morphism &m = a.morphisms.at(s.name), &n = b.morphisms.at(s.name);
        if (m.source->presentation().name != n.source->presentation().name ||
            m.target->presentation().name != n.target->presentation().name || m.images.size() != n.images.size())
          return false;
        for (std::size_t i = 0; i < m.images.size(); ++i) {
          if (m.images[i].terms() != n.images[i].terms()) return false;
          if (m.inverse_images[i].has_value() != n.inverse_images[i].has_value()) return false;
          if (m.inverse_images[i] && m.inverse_images[i]->terms() != n.inverse_images[i]->terms()) return false;
        }
        break;
      }
      case StanzaKind::FdAlgebra: {
        const FiniteDimAlgebra &x = a.fdalgebras.at(s.name), &y = b.fdalgebras.at(s.name);
        if (x.field() != y.field() || x.names() != y.names() || x.unit() != y.unit()) return false;
        for (std::size_t i = 0; i < x.dim(); ++i)
          for (std::size_t j = 0; j < x.dim(); ++j)
            if (x.product(i, j) != y.product(i, j)) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace skewcalc
