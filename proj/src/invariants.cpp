#include "skewcalc/invariants.hpp"

#include <cmath>

#include "skewcalc/linalg.hpp"

namespace skewcalc {

CenterBasis center_bounded(const Algebra& alg, int d) {
  CenterBasis out;
  out.degree_bound = d;
  const std::vector<Monomial> basis = alg.filtration_basis(d);
  const std::size_t m = alg.size();
  Echelon images(alg.field(), true);
  Echelon kernel(alg.field());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Element f = alg.monomial(basis[k]);
    Terms stacked;
    for (std::size_t g = 0; g < m; ++g) {
      const Element comm = commutator(f, alg.gen(static_cast<int>(g)));
      for (const auto& [mono, c] : comm.terms()) {
        Monomial key = mono;
        key.e.push_back(static_cast<int>(g));
        stacked.emplace(std::move(key), c);
      }
    }
    auto res = images.insert(stacked, k);
    if (res.independent) continue;
    Terms v;
    for (const auto& [label, c] : res.dependency) add_term(v, basis[label], c);
    kernel.insert(v);
  }
  bool monomial = true;
  for (Terms& t : kernel.reduced_basis()) {
    monomial = monomial && t.size() == 1;
    out.basis.push_back(alg.element(std::move(t)));
  }
  out.structure = monomial ? "monomial" : "general";
  return out;
}

GrowthTable growth_dims(const Algebra& alg, int N, std::size_t ceiling) {
  if (N < 0) throw Error(ErrorCode::BadParams, "N must be non-negative");
  GrowthTable table;
  table.gen_space = "span(1, generators, inverses of invertible generators)";
  std::vector<Monomial> letters;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    letters.push_back(alg.letter(static_cast<int>(i), 1));
    if (alg.presentation().gens[i].invertible) letters.push_back(alg.letter(static_cast<int>(i), -1));
  }
  Echelon span(alg.field());
  const Terms one{{Monomial(alg.size()), Scalar::one(alg.field())}};
  span.insert(one);
  table.dims.push_back(1);
  std::vector<Terms> frontier{one};
  for (int n = 1; n <= N; ++n) {
    std::vector<Terms> next;
    for (const Terms& f : frontier) {
      for (const Monomial& l : letters) {
        Terms prod = alg.mul(f, Terms{{l, Scalar::one(alg.field())}});
        if (span.insert(prod).independent) next.push_back(std::move(prod));
        if (span.rank() > ceiling)
          throw Error(ErrorCode::ResourceLimit, "growth span exceeds " + std::to_string(ceiling) + " dimensions");
      }
    }
    table.dims.push_back(span.rank());
    frontier = std::move(next);
  }
  return table;
}

GkEstimate gk_estimate(const GrowthTable& table) {
  const std::size_t len = table.dims.size();
  if (len < 6) throw Error(ErrorCode::InsufficientData, "growth table needs at least 6 entries");
  const std::size_t N = len - 1;
  GkEstimate g;
  g.window_start = std::max<std::size_t>(1, (N + 1) / 2);
  g.window_end = N;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(N - g.window_start + 1);
  for (std::size_t n = g.window_start; n <= N; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(static_cast<double>(table.dims[n]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  g.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double icpt = (sy - g.slope * sx) / cnt;
  double ss = 0;
  for (std::size_t n = g.window_start; n <= N; ++n) {
    const double r = std::log(static_cast<double>(table.dims[n])) - (icpt + g.slope * std::log(static_cast<double>(n)));
    ss += r * r;
  }
  g.residual = std::sqrt(ss / cnt);

  // Exact polynomial growth on the window: Delta^{d+1} vanishes at >= 2 positions.
  std::vector<mpz_class> diff;
  for (std::size_t n = g.window_start; n <= N; ++n) diff.emplace_back(static_cast<unsigned long>(table.dims[n]));
  std::optional<int> degree;
  for (int d = 0; diff.size() >= 3; ++d) {
    std::vector<mpz_class> next;
    for (std::size_t k = 0; k + 1 < diff.size(); ++k) next.push_back(diff[k + 1] - diff[k]);
    bool all_zero = true;
    for (const auto& v : next) all_zero = all_zero && v == 0;
    if (all_zero) {
      degree = d;
      break;
    }
    diff = std::move(next);
  }
  if (degree) {
    g.method = "finite-difference";
    g.estimate = *degree;
  } else {
    g.method = "log-log";
    g.estimate = g.slope;
  }
  const double r = std::round(g.estimate);
  if (std::fabs(g.estimate - r) <= 0.25) g.snapped = static_cast<int>(r);
  return g;
}

Element apply_endomorphism(const Algebra& alg, const std::vector<Element>& images, const Element& f) {
  Element out = alg.zero();
  for (const auto& [m, c] : f.terms()) {
    Element acc = alg.one();
    for (const auto& [i, s] : monomial_word(m)) acc = acc * (s > 0 ? images[i] : unit_monomial_inverse(images[i]));
    out = out + c * acc;
  }
  return out;
}

Element apply_derivation(const Algebra& alg, const std::vector<Element>& images, const Element& f) {
  Element out = alg.zero();
  for (const auto& [m, c] : f.terms()) {
    const auto w = monomial_word(m);
    for (std::size_t r = 0; r < w.size(); ++r) {
      Element left = alg.one();
      for (std::size_t k = 0; k < r; ++k) left = left * alg.monomial(alg.letter(w[k].first, w[k].second));
      Element d = images[w[r].first];
      if (w[r].second < 0) {
        const Element inv = alg.gen_inverse(w[r].first);
        d = -(inv * d * inv);
      }
      Element right = alg.one();
      for (std::size_t k = r + 1; k < w.size(); ++k) right = right * alg.monomial(alg.letter(w[k].first, w[k].second));
      out = out + c * (left * d * right);
    }
  }
  return out;
}

LocalityResult is_locally_algebraic(const Algebra& alg, const std::vector<Element>& sigma, int bound) {
  if (sigma.size() != alg.size()) throw Error(ErrorCode::BadParams, "one image per generator required");
  LocalityResult res;
  Echelon span(alg.field());
  std::vector<Element> frontier;
  auto add = [&](const Element& e) {
    if (span.insert(e.terms()).independent) frontier.push_back(e);
  };
  add(alg.one());
  for (std::size_t i = 0; i < alg.size(); ++i) {
    add(alg.gen(static_cast<int>(i)));
    if (alg.presentation().gens[i].invertible) add(alg.gen_inverse(static_cast<int>(i)));
  }
  auto max_degree = [&]() {
    long d = 0;
    for (const auto& t : span.reduced_basis()) d = std::max(d, terms_degree(t));
    return d;
  };
  res.degree_trace.push_back(max_degree());
  for (int it = 0; it < bound; ++it) {
    std::vector<Element> cur = std::move(frontier);
    frontier.clear();
    for (const auto& e : cur) add(apply_endomorphism(alg, sigma, e));
    if (frontier.empty()) {
      res.certified = true;
      for (auto& t : span.reduced_basis()) res.witness.push_back(alg.element(std::move(t)));
      return res;
    }
    res.degree_trace.push_back(max_degree());
  }
  return res;
}

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "TRUE";
    case Tri::False: return "FALSE";
    case Tri::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

NilpotencyResult is_locally_nilpotent(const Algebra& alg, const std::vector<Element>& delta, int bound) {
  if (delta.size() != alg.size()) throw Error(ErrorCode::BadParams, "one image per generator required");
  NilpotencyResult res;
  bool all_die = true;
  int kmax = 0;
  const auto names = alg.presentation().names();
  for (std::size_t g = 0; g < alg.size(); ++g) {
    std::vector<Element> seq{alg.gen(static_cast<int>(g))};
    std::vector<long> trace{seq.back().degree()};
    bool died = false;
    for (int k = 1; k <= bound; ++k) {
      Element next = apply_derivation(alg, delta, seq.back());
      trace.push_back(next.degree());
      if (next.is_zero()) {
        died = true;
        kmax = std::max(kmax, k);
        break;
      }
      for (std::size_t i = 0; i < seq.size(); ++i) {
        const Element& prev = seq[i];
        const auto& [lm, lc] = *prev.terms().rbegin();
        const Scalar c = next.coeff(lm) / lc;
        if (!c.is_zero() && next == c * prev) {
          res.status = Tri::False;
          res.cycle = names[g] + ": delta^" + std::to_string(k) + " = " + c.to_string() + " * delta^" + std::to_string(i);
          res.degree_trace.push_back(trace);
          return res;
        }
      }
      seq.push_back(std::move(next));
    }
    res.degree_trace.push_back(trace);
    all_die = all_die && died;
  }
  if (all_die) {
    res.status = Tri::True;
    res.k = kmax;
  }
  return res;
}

int stratiform_length(const StratTower& t) {
  int n = 0;
  for (auto k : t.steps) n += k == StratKind::Ore ? 1 : 0;
  return n;
}

StratTower tower_compose(const StratTower& t, int ore_steps) {
  StratTower r = t;
  for (int i = 0; i < ore_steps; ++i) r.steps.push_back(StratKind::Ore);
  return r;
}

StratTower strat_tower(const Presentation& p) {
  StratTower t;
  if (const FlagEntry* f = p.find_flag(Flag::Stratiform)) t.steps.assign(static_cast<std::size_t>(f->length), StratKind::Ore);
  return t;
}

}  // namespace skewcalc
