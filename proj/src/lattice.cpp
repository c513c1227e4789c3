#include <utility>

#include "skewcalc/invariants.hpp"

namespace skewcalc {

namespace {

using Row = std::vector<mpz_class>;

void row_axpy(Row& dst, const Row& src, const mpz_class& f) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= f * src[k];
}

/// Floor division for mpz.
mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero entry remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k)
        if (rows[k][c] != 0 && (best == rows.size() || abs(rows[k][c]) < abs(rows[best][c]))) best = k;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (rows[k][c] == 0) continue;
        row_axpy(rows[k], rows[r], fdiv(rows[k][c], rows[r][c]));
        if (rows[k][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t k = 0; k < r; ++k) row_axpy(rows[k], rows[r], fdiv(rows[k][c], rows[r][c]));
    ++r;
  }
  rows.resize(r);
  return rows;
}

bool TorusCenter::contains(const std::vector<long>& u) const {
  if (basis.empty()) {
    for (long x : u)
      if (x != 0) return false;
    return true;
  }
  std::vector<mpz_class> rest(u.begin(), u.end());
  for (const auto& row : basis) {
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    if (rest[c] % row[c] != 0) return false;
    const mpz_class f = rest[c] / row[c];
    row_axpy(rest, row, f);
  }
  for (const auto& v : rest)
    if (v != 0) return false;
  return true;
}

TorusCenter center_torus(int n, std::uint64_t ell, const std::vector<std::vector<long>>& a) {
  if (n < 1 || ell < 1) throw Error(ErrorCode::BadParams, "center_torus needs n >= 1 and ell >= 1");
  if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::BadParams, "exponent matrix must be n x n");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) throw Error(ErrorCode::BadParams, "exponent matrix must be n x n");
    for (int j = 0; j < n; ++j)
      if (a[i][j] != -a[j][i]) throw Error(ErrorCode::BadParams, "exponent matrix must be antisymmetric");
  }
  const mpz_class L(static_cast<unsigned long>(ell));
  // Integer kernel of M = [a | ell*I] (n x 2n) via unimodular column operations:
  // columns of M are tracked together with the identity, so M*U = [H | 0].
  const std::size_t w = 2 * static_cast<std::size_t>(n);
  std::vector<Row> cols(w, Row(static_cast<std::size_t>(n) + w, 0));
  for (std::size_t j = 0; j < w; ++j) {
    for (int i = 0; i < n; ++i)
      cols[j][i] = j < static_cast<std::size_t>(n) ? mpz_class(a[i][j]) : (static_cast<int>(j) - n == i ? L : mpz_class(0));
    cols[j][static_cast<std::size_t>(n) + j] = 1;
  }
  std::size_t piv = 0;
  for (int i = 0; i < n && piv < w; ++i) {
    while (true) {
      std::size_t best = w;
      for (std::size_t k = piv; k < w; ++k)
        if (cols[k][i] != 0 && (best == w || abs(cols[k][i]) < abs(cols[best][i]))) best = k;
      if (best == w) break;
      std::swap(cols[piv], cols[best]);
      bool done = true;
      for (std::size_t k = piv + 1; k < w; ++k) {
        if (cols[k][i] == 0) continue;
        row_axpy(cols[k], cols[piv], fdiv(cols[k][i], cols[piv][i]));
        if (cols[k][i] != 0) done = false;
      }
      if (done) break;
    }
    if (cols[piv][i] != 0) ++piv;
  }
  std::vector<Row> gens;
  for (std::size_t k = piv; k < w; ++k) {
    Row u(cols[k].begin() + n, cols[k].begin() + n + n);
    gens.push_back(std::move(u));
  }
  TorusCenter tc;
  tc.basis = hermite_normal_form(std::move(gens));
  tc.index = 1;
  for (std::size_t k = 0; k < tc.basis.size(); ++k) tc.index *= tc.basis[k][k];
  return tc;
}

}  // namespace skewcalc
