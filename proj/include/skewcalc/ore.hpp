#pragma once

#include <string>
#include <vector>

#include "skewcalc/algebra.hpp"

namespace skewcalc {

/// Pads every monomial to `new_size` generators, placing the old exponents at `offset`.
Terms extend_terms(const Terms& t, std::size_t new_size, std::size_t offset = 0);

/// Presentation of base[t; sigma, delta] with rules t*g = sigma(g)*t + delta(g).
/// Throws BAD_SIGMA when sigma(g) has no g-component, TAIL_DEGREE when the
/// rule would not be filtration compatible, BAD_INVERSE for a non-monomial
/// rule on an invertible generator.
Presentation ore_extend_presentation(const Algebra& base, const std::string& var, const std::vector<Element>& sigma,
                                     const std::vector<Element>& delta, bool invertible);

/// Validated Ore extension.
AlgebraPtr ore_extend(const Algebra& base, const std::string& var, const std::vector<Element>& sigma,
                      const std::vector<Element>& delta, bool invertible, const ValidationOptions& opts = {});

/// Plain tensor product; clashing generator names of `b` get the suffix "_2".
/// DOMAIN is kept only when both factors carry it and `assert_domain` is set.
AlgebraPtr tensor_product(const Algebra& a, const Algebra& b, bool assert_domain = false);

}  // namespace skewcalc
