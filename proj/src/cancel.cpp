#include "skewcalc/cancel.hpp"

#include "skewcalc/linalg.hpp"

namespace skewcalc {

Element Morphism::apply(const Element& f) const {
  const Algebra& tgt = *target;
  Element out = tgt.zero();
  for (const auto& [m, c] : f.terms()) {
    Element acc = tgt.one();
    for (const auto& [i, s] : monomial_word(m)) {
      if (s > 0) {
        acc = acc * images[i];
      } else if (i < static_cast<int>(inverse_images.size()) && inverse_images[i]) {
        acc = acc * *inverse_images[i];
      } else if (is_unit_monomial(images[i])) {
        acc = acc * unit_monomial_inverse(images[i]);
      } else {
        throw Error(ErrorCode::BadInverse,
                    "no inverse image for " + source->presentation().gens[i].name + " under " + name);
      }
    }
    out = out + c * acc;
  }
  return out;
}

Morphism identity_on_names(const AlgebraPtr& source, const AlgebraPtr& target, std::string name) {
  Morphism m;
  m.name = std::move(name);
  m.source = source;
  m.target = target;
  for (const auto& g : source->presentation().gens) m.images.push_back(target->gen(g.name));
  m.inverse_images.resize(m.images.size());
  return m;
}

namespace {

std::string rel_name(const Presentation& p, int j, int i) { return p.gens[j].name + "*" + p.gens[i].name; }

}  // namespace

MorphismCheck verify_morphism(const Morphism& m) {
  const Algebra& src = *m.source;
  const Presentation& p = src.presentation();
  MorphismCheck res;
  if (m.images.size() != src.size()) {
    res.witness = "expected " + std::to_string(src.size()) + " generator images";
    return res;
  }
  for (const auto& img : m.images)
    if (img.algebra_ptr() != m.target) {
      res.witness = "generator image lives in another algebra";
      return res;
    }
  const int n = static_cast<int>(src.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const Element lhs = m.images[j] * m.images[i];
      Element rhs = src.leading(j, i) * (m.images[i] * m.images[j]);
      if (!src.tail(j, i).empty()) rhs = rhs + m.apply(src.element(src.tail(j, i)));
      if (lhs != rhs) {
        res.witness = "relation " + rel_name(p, j, i) + " fails: difference " + (lhs - rhs).to_string();
        return res;
      }
    }
  for (int i = 0; i + 1 < n; ++i) {
    const Terms* r = src.reduction(i);
    if (!r) continue;
    const Element diff = m.images[i] * m.images[i + 1] - m.apply(src.element(*r));
    if (!diff.is_zero()) {
      res.witness = "relation " + rel_name(p, i, i + 1) + " fails: difference " + diff.to_string();
      return res;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!p.gens[i].invertible) continue;
    Element inv;
    try {
      inv = m.apply(src.gen_inverse(i));
    } catch (const Error& e) {
      res.witness = e.what();
      return res;
    }
    const Element one = m.target->one();
    if (m.images[i] * inv != one || inv * m.images[i] != one) {
      res.witness = "inverse image of " + p.gens[i].name + " is not a two-sided inverse";
      return res;
    }
  }
  res.ok = true;
  return res;
}

namespace {

/// Checks that `to` undoes `from` on the degree <= cap piece of from's source, and that
/// from's images span the target piece of the same degree.
bool check_side(const Morphism& from, const Morphism& to, int cap, std::size_t& dim, std::string& witness) {
  const Algebra& a = *from.source;
  const auto basis = a.filtration_basis(cap);
  dim = basis.size();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Element g = a.gen(static_cast<int>(k));
    if (to.apply(from.apply(g)) != g) {
      witness = a.presentation().gens[k].name + " is not fixed by the composite through " + from.name;
      return false;
    }
  }
  for (const auto& m : basis) {
    const Element x = a.monomial(m);
    const Element y = from.apply(x);
    if (y.degree() > cap) {
      witness = "image of " + x.to_string() + " under " + from.name + " leaves the degree " + std::to_string(cap) +
                " piece";
      return false;
    }
    if (to.apply(y) != x) {
      witness = x.to_string() + " is not recovered through " + from.name;
      return false;
    }
  }
  return true;
}

}  // namespace

IsoCheck verify_isomorphism_bounded(const Morphism& m, const Morphism& inverse, int degree_cap) {
  IsoCheck res;
  for (const Morphism* f : {&m, &inverse}) {
    const auto c = verify_morphism(*f);
    if (!c.ok) {
      res.witness = f->name + ": " + c.witness;
      return res;
    }
  }
  // Surjectivity onto generators at the cap: every target generator must lie in the span
  // of images of the source piece.
  const Algebra& tgt = *m.target;
  Echelon img(tgt.field());
  for (const auto& mono : m.source->filtration_basis(degree_cap)) img.insert(m.apply(m.source->monomial(mono)).terms());
  for (std::size_t k = 0; k < tgt.size(); ++k)
    if (!img.contains(tgt.gen(static_cast<int>(k)).terms())) {
      res.witness = tgt.presentation().gens[k].name + " not in the image of " + m.name + " at degree cap " +
                    std::to_string(degree_cap);
      return res;
    }
  if (!check_side(m, inverse, degree_cap, res.source_dim, res.witness)) return res;
  if (!check_side(inverse, m, degree_cap, res.target_dim, res.witness)) return res;
  if (res.source_dim != res.target_dim) {
    res.witness = "filtration pieces have different dimensions";
    return res;
  }
  res.ok = true;
  return res;
}

std::optional<std::string> noncommutativity_witness(const Algebra& alg) {
  const auto& p = alg.presentation();
  for (std::size_t j = 0; j < alg.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const Element c = commutator(alg.gen(static_cast<int>(i)), alg.gen(static_cast<int>(j)));
      if (!c.is_zero()) return "[" + p.gens[i].name + ", " + p.gens[j].name + "] = " + c.to_string();
    }
  return std::nullopt;
}

}  // namespace skewcalc
