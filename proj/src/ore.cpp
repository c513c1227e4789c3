#include "skewcalc/ore.hpp"

namespace skewcalc {

Terms extend_terms(const Terms& t, std::size_t new_size, std::size_t offset) {
  Terms out;
  for (const auto& [m, c] : t) {
    Monomial r(new_size);
    for (std::size_t i = 0; i < m.e.size(); ++i) r.e[offset + i] = m.e[i];
    out.emplace(std::move(r), c);
  }
  return out;
}

Presentation ore_extend_presentation(const Algebra& base, const std::string& var, const std::vector<Element>& sigma,
                                     const std::vector<Element>& delta, bool invertible) {
  const Presentation& bp = base.presentation();
  const std::size_t b = bp.size();
  if (sigma.size() != b || delta.size() != b)
    throw Error(ErrorCode::BadParams, "sigma and delta need one image per base generator");
  for (std::size_t g = 0; g < b; ++g)
    if (sigma[g].algebra_ptr().get() != &base || delta[g].algebra_ptr().get() != &base)
      throw Error(ErrorCode::AlgebraMismatch, "sigma/delta images must lie in the base algebra");
  if (bp.index_of(var) >= 0) throw Error(ErrorCode::ValidationError, "generator '" + var + "' already exists");

  Presentation p;
  p.name = bp.name + "[" + var + "]";
  p.field = bp.field;
  p.gens = bp.gens;
  p.gens.push_back(GeneratorInfo{var, invertible});
  const std::size_t m = b + 1;
  for (const auto& r : bp.rules) p.rules.push_back(RewriteRule{r.j, r.i, r.leading, extend_terms(r.tail, m)});
  for (const auto& r : bp.reductions) p.reductions.push_back(ReductionRule{r.i, extend_terms(r.rhs, m)});
  for (const auto& st : bp.tower) {
    OreStep s;
    s.base_size = st.base_size;
    for (const auto& t : st.sigma) s.sigma.push_back(extend_terms(t, m));
    for (const auto& t : st.delta) s.delta.push_back(extend_terms(t, m));
    p.tower.push_back(std::move(s));
  }

  OreStep step;
  step.base_size = static_cast<int>(b);
  const Scalar one = Scalar::one(bp.field);
  for (std::size_t g = 0; g < b; ++g) {
    const std::string what = "rule " + var + "*" + bp.gens[g].name;
    Monomial gm(b);
    gm.e[g] = 1;
    const Scalar c = sigma[g].coeff(gm);
    if (c.is_zero()) throw Error(ErrorCode::BadSigma, "sigma(" + bp.gens[g].name + ") has no " + bp.gens[g].name + " term");
    Terms rest = sigma[g].terms();
    rest.erase(gm);
    if (terms_degree(rest) > 1 || delta[g].degree() > 2)
      throw Error(ErrorCode::TailDegree, what + " is not filtration compatible");
    Terms tail;
    for (const auto& [mono, a] : rest) {
      Monomial r(m);
      for (std::size_t k = 0; k < b; ++k) r.e[k] = mono.e[k];
      r.e[b] = 1;
      add_term(tail, r, a);
    }
    add_scaled(tail, extend_terms(delta[g].terms(), m), one);
    if ((invertible || bp.gens[g].invertible) && !tail.empty())
      throw Error(ErrorCode::BadInverse, what + " must be monomial when an invertible generator is involved");
    if (!c.is_one() || !tail.empty())
      p.rules.push_back(RewriteRule{static_cast<int>(b), static_cast<int>(g), c, tail});
    step.sigma.push_back(extend_terms(sigma[g].terms(), m));
    step.delta.push_back(extend_terms(delta[g].terms(), m));
  }
  p.tower.push_back(std::move(step));

  for (Flag f : {Flag::Domain, Flag::Noetherian, Flag::Affine})
    if (const FlagEntry* e = bp.find_flag(f)) p.set_flag(f, "inherited by Ore extension; " + e->provenance);
  if (const FlagEntry* s = bp.find_flag(Flag::Stratiform))
    p.set_flag(Flag::Stratiform, "stratiform length plus one Ore step; " + s->provenance, s->length + 1);
  return p;
}

AlgebraPtr ore_extend(const Algebra& base, const std::string& var, const std::vector<Element>& sigma,
                      const std::vector<Element>& delta, bool invertible, const ValidationOptions& opts) {
  return Algebra::create(ore_extend_presentation(base, var, sigma, delta, invertible), opts);
}

AlgebraPtr tensor_product(const Algebra& a, const Algebra& b, bool assert_domain) {
  const Presentation& pa = a.presentation();
  const Presentation& pb = b.presentation();
  if (pa.field != pb.field) throw Error(ErrorCode::FieldMismatch, "tensor factors over different fields");
  Presentation p;
  p.name = pa.name + "_tensor_" + pb.name;
  p.field = pa.field;
  p.gens = pa.gens;
  const std::size_t na = pa.size();
  const std::size_t m = na + pb.size();
  for (auto g : pb.gens) {
    while (p.index_of(g.name) >= 0) g.name += "_2";
    p.gens.push_back(g);
  }
  for (const auto& r : pa.rules) p.rules.push_back(RewriteRule{r.j, r.i, r.leading, extend_terms(r.tail, m)});
  for (const auto& r : pb.rules)
    p.rules.push_back(RewriteRule{r.j + static_cast<int>(na), r.i + static_cast<int>(na), r.leading,
                                  extend_terms(r.tail, m, na)});
  for (const auto& r : pa.reductions) p.reductions.push_back(ReductionRule{r.i, extend_terms(r.rhs, m)});
  for (const auto& r : pb.reductions)
    p.reductions.push_back(ReductionRule{r.i + static_cast<int>(na), extend_terms(r.rhs, m, na)});
  if (pa.has_flag(Flag::Affine) && pb.has_flag(Flag::Affine))
    p.set_flag(Flag::Affine, "tensor of affine algebras; " + pa.find_flag(Flag::Affine)->provenance + "; " +
                                 pb.find_flag(Flag::Affine)->provenance);
  if (assert_domain && pa.has_flag(Flag::Domain) && pb.has_flag(Flag::Domain))
    p.set_flag(Flag::Domain, "user assertion: tensor product of domains is a domain");
  return Algebra::create(std::move(p));
}

}  // namespace skewcalc
