#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewcalc/algebra.hpp"

namespace skewcalc {

/// Algebra map given by generator images. Invertible source generators need
/// an image inverse, either supplied or computed from a unit-monomial image.
struct Morphism {
  std::string name;
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<Element> images;
  std::vector<std::optional<Element>> inverse_images;

  Element apply(const Element& f) const;
};

/// Map sending each source generator to the target generator of the same name.
Morphism identity_on_names(const AlgebraPtr& source, const AlgebraPtr& target, std::string name = "id");

struct MorphismCheck {
  bool ok = false;
  std::string witness;
};

/// Every defining relation of the source maps to zero; inverse images are two-sided inverses.
MorphismCheck verify_morphism(const Morphism& m);

struct IsoCheck {
  bool ok = false;
  std::string witness;
  /// Dimension of the degree <= cap filtration piece on each side.
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
};

/// Both composites fix every generator, and the two maps restrict to mutually inverse
/// bijections between the filtration pieces of degree <= degree_cap.
IsoCheck verify_isomorphism_bounded(const Morphism& m, const Morphism& inverse, int degree_cap);

/// A commutator of generators that is nonzero, or nullopt for a commutative algebra.
std::optional<std::string> noncommutativity_witness(const Algebra& alg);

}  // namespace skewcalc
