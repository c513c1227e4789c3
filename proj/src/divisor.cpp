#include "skewcalc/divisor.hpp"

namespace skewcalc {

namespace {

void require_domain(const Algebra& alg) {
  if (!alg.presentation().has_flag(Flag::Domain))
    throw Error(ErrorCode::NotADomain, "subword search requires the DOMAIN flag");
}

std::vector<Monomial> monomials_upto(const Algebra& alg, int d) { return alg.filtration_basis(d); }

/// All g (as a basis) with m_a * g * m_b inside span(S), solved jointly.
struct PairSolver {
  const Algebra& alg;
  const std::vector<Monomial>& gbasis;

  std::vector<std::pair<Element, Element>> solve(const std::vector<Terms>& S, const Monomial& ma,
                                                 const Monomial& mb) const {
    Echelon ech(alg.field(), true);
    for (std::size_t k = 0; k < S.size(); ++k) ech.insert(S[k], k);
    const std::size_t off = S.size();
    const Scalar one = Scalar::one(alg.field());
    std::vector<std::pair<Element, Element>> out;
    for (std::size_t k = 0; k < gbasis.size(); ++k) {
      const Terms img = alg.mul(alg.mul_mono(ma, gbasis[k]), Terms{{mb, one}});
      auto res = ech.insert(img, off + k);
      if (res.independent) continue;
      Terms g, s;
      for (const auto& [label, c] : res.dependency) {
        if (label >= off) {
          add_term(g, gbasis[label - off], c);
        } else {
          add_scaled(s, S[label], -c);
        }
      }
      if (s.empty())
        throw Error(ErrorCode::NotADomain,
                    "zero divisor: " + monomial_to_string(ma, alg.presentation().names()) + " * (" +
                        terms_to_string(g, alg.presentation().names()) + ") * " +
                        monomial_to_string(mb, alg.presentation().names()) + " = 0");
      out.emplace_back(alg.element(std::move(g)), alg.element(std::move(s)));
    }
    return out;
  }
};

}  // namespace

std::vector<SubwordHit> subword_search(const Algebra& alg, const Element& f, const SubwordCaps& caps, int degree_cap) {
  require_domain(alg);
  if (f.is_zero()) throw Error(ErrorCode::BadParams, "subword search needs a nonzero element");
  const auto gbasis = monomials_upto(alg, degree_cap);
  PairSolver solver{alg, gbasis};
  std::vector<SubwordHit> hits;
  for (const auto& ma : monomials_upto(alg, caps.max_deg_a))
    for (const auto& mb : monomials_upto(alg, caps.max_deg_b))
      for (auto& [g, s] : solver.solve({f.terms()}, ma, mb)) {
        // s = lambda * f with lambda != 0; rescale g so that a*g*b = f.
        const auto& [lm, lc] = *f.terms().rbegin();
        const Scalar lambda = s.coeff(lm) / lc;
        hits.push_back(SubwordHit{f, alg.monomial(ma), lambda.inverse() * g, alg.monomial(mb)});
      }
  return hits;
}

BoundedSubalgebra::BoundedSubalgebra(const Algebra& alg, int degree_cap, std::size_t ceiling)
    : alg_(alg), cap_(degree_cap), ceiling_(ceiling), span_(alg.field()) {
  std::vector<Terms> frontier;
  absorb(alg.one().terms(), frontier);
}

void BoundedSubalgebra::absorb(const Terms& v, std::vector<Terms>& frontier) {
  if (v.empty() || terms_degree(v) > cap_) return;
  if (!span_.insert(v).independent) return;
  if (span_.rank() > ceiling_)
    throw Error(ErrorCode::ResourceLimit, "subalgebra span exceeds " + std::to_string(ceiling_) + " dimensions");
  vectors_.push_back(v);
  frontier.push_back(v);
}

std::size_t BoundedSubalgebra::add_generators(const std::vector<Element>& gens) {
  const std::size_t before = span_.rank();
  std::vector<Terms> fresh;
  for (const auto& g : gens) {
    if (g.is_zero() || terms_degree(g.terms()) > cap_) continue;
    if (span_.contains(g.terms())) {
      // Already spanned, but still needed as a multiplier for later words.
      bool known = false;
      for (const auto& h : gens_) known = known || h == g.terms();
      if (known) continue;
    }
    fresh.push_back(g.terms());
  }
  if (fresh.empty()) return 0;
  std::vector<Terms> frontier;
  for (const auto& v : std::vector<Terms>(vectors_))
    for (const auto& s : fresh) absorb(alg_.mul(v, s), frontier);
  for (const auto& s : fresh) gens_.push_back(s);
  while (!frontier.empty()) {
    std::vector<Terms> next;
    for (const auto& v : frontier)
      for (const auto& s : gens_) absorb(alg_.mul(v, s), next);
    frontier = std::move(next);
  }
  return span_.rank() - before;
}

std::vector<Element> BoundedSubalgebra::basis() const {
  std::vector<Element> out;
  for (auto& t : span_.reduced_basis()) out.push_back(alg_.element(std::move(t)));
  return out;
}

std::vector<Element> subalgebra_closure_bounded(const Algebra& alg, const std::vector<Element>& S, int degree_cap) {
  BoundedSubalgebra sub(alg, degree_cap);
  sub.add_generators(S);
  return sub.basis();
}

std::string closure_status_name(ClosureStatus s) { return s == ClosureStatus::Full ? "FULL" : "INCONCLUSIVE"; }

ClosureReport divisor_closure(const Algebra& alg, const std::vector<Element>& F, const ClosureCaps& caps) {
  require_domain(alg);
  if (caps.degree_cap < 0 || caps.max_rounds < 1) throw Error(ErrorCode::BadParams, "caps must be positive");
  ClosureReport rep;
  rep.F = F;
  rep.caps = caps;
  for (const auto& f : F)
    if (f.is_zero()) throw Error(ErrorCode::BadParams, "F must consist of nonzero elements");

  const auto gbasis = monomials_upto(alg, caps.degree_cap);
  const auto abasis = monomials_upto(alg, caps.subword.max_deg_a);
  const auto bbasis = monomials_upto(alg, caps.subword.max_deg_b);
  PairSolver solver{alg, gbasis};
  BoundedSubalgebra sub(alg, caps.degree_cap);
  std::vector<Element> required;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    required.push_back(alg.gen(static_cast<int>(i)));
    if (alg.presentation().gens[i].invertible) required.push_back(alg.gen_inverse(static_cast<int>(i)));
  }
  auto is_full = [&]() {
    for (const auto& r : required)
      if (!sub.contains(r)) return false;
    return true;
  };

  for (int round = 1; round <= caps.max_rounds; ++round) {
    // Round 1 factors each element of F; later rounds factor the whole certified span.
    std::vector<std::vector<Terms>> sources;
    if (round == 1) {
      for (const auto& f : F) sources.push_back({f.terms()});
    } else {
      std::vector<Terms> span;
      for (const auto& e : sub.basis()) span.push_back(e.terms());
      sources.push_back(std::move(span));
    }
    ClosureRound cr;
    std::vector<Element> found;
    Echelon seen(alg.field());
    for (const auto& S : sources)
      for (const auto& ma : abasis)
        for (const auto& mb : bbasis)
          for (auto& [g, s] : solver.solve(S, ma, mb)) {
            found.push_back(g);
            if (round > 1 && sub.contains(g)) continue;
            if (!seen.insert(g.terms()).independent) continue;
            cr.new_subwords.push_back(SubwordHit{s, alg.monomial(ma), g, alg.monomial(mb)});
          }
    const std::size_t before = sub.dim();
    sub.add_generators(found);
    cr.span_dim = sub.dim();
    rep.rounds.push_back(std::move(cr));
    if (is_full()) {
      rep.status = ClosureStatus::Full;
      break;
    }
    if (round > 1 && sub.dim() == before) break;
  }
  rep.certified_basis = sub.basis();
  return rep;
}

ControllingResult is_controlling(const Algebra& alg, const std::vector<Element>& F, const ClosureCaps& caps) {
  ControllingResult r;
  r.report = divisor_closure(alg, F, caps);
  r.controlling = r.report.status == ClosureStatus::Full;
  return r;
}

}  // namespace skewcalc
