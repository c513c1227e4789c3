#include "skewcalc/linalg.hpp"

namespace skewcalc {

void add_combo(Combo& acc, const Combo& c, const Scalar& s) {
  if (s.is_zero()) return;
  for (const auto& [l, v] : c) {
    const Scalar add = v * s;
    auto [it, inserted] = acc.emplace(l, add);
    if (inserted) continue;
    it->second = it->second + add;
    if (it->second.is_zero()) acc.erase(it);
  }
}

Terms Echelon::reduce_tracked(const Terms& v0, Combo& combo) const {
  Terms v = v0;
  bool have_last = false;
  Monomial last;
  while (!v.empty()) {
    auto it = have_last ? v.lower_bound(last) : v.end();
    const Row* row = nullptr;
    while (it != v.begin()) {
      --it;
      auto r = rows_.find(it->first);
      if (r != rows_.end()) {
        row = &r->second;
        break;
      }
    }
    if (row == nullptr) break;
    last = it->first;
    have_last = true;
    const Scalar c = it->second;
    add_scaled(v, row->v, -c);
    if (track_) add_combo(combo, row->combo, c);
  }
  return v;
}

Terms Echelon::reduce(const Terms& v) const {
  Combo unused;
  if (!track_) return reduce_tracked(v, unused);
  Echelon& self = const_cast<Echelon&>(*this);
  const bool saved = self.track_;
  self.track_ = false;
  Terms r = reduce_tracked(v, unused);
  self.track_ = saved;
  return r;
}

Echelon::Outcome Echelon::insert(const Terms& v, std::size_t label) {
  Combo combo;
  Terms r = reduce_tracked(v, combo);
  Outcome out;
  if (r.empty()) {
    if (track_) {
      // v - sum(combo * inputs) = 0, i.e. input[label] - combo = 0.
      Combo dep;
      dep.emplace(label, Scalar::one(field_));
      add_combo(dep, combo, -Scalar::one(field_));
      out.dependency = std::move(dep);
    }
    return out;
  }
  const Monomial lead = r.rbegin()->first;
  const Scalar inv = r.rbegin()->second.inverse();
  Row row;
  row.v = scale_terms(r, inv);
  if (track_) {
    Combo c;
    c.emplace(label, inv);
    add_combo(c, combo, -inv);
    row.combo = std::move(c);
  }
  rows_.emplace(lead, std::move(row));
  out.independent = true;
  return out;
}

std::vector<Terms> Echelon::reduced_basis() const {
  std::vector<Terms> out;
  Echelon acc(field_);
  // Back-substitute from the smallest pivot upward.
  for (const auto& [lead, row] : rows_) {
    Terms r = row.v;
    Terms tail = r;
    tail.erase(lead);
    Terms red = acc.reduce(tail);
    add_term(red, lead, r.at(lead));
    acc.rows_.emplace(lead, Row{red, {}});
    out.push_back(red);
  }
  return out;
}

std::vector<Monomial> Echelon::pivots() const {
  std::vector<Monomial> out;
  for (const auto& kv : rows_) out.push_back(kv.first);
  return out;
}

}  // namespace skewcalc

namespace skewcalc {

Vec zero_vec(const FieldDescriptor& f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

Mat identity_mat(const FieldDescriptor& f, std::size_t n) {
  Mat m(n, zero_vec(f, n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar::one(f);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  const FieldDescriptor f = a[0].empty() ? b[0][0].field() : a[0][0].field();
  Mat out(a.size(), zero_vec(f, cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    }
  return out;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  Vec out;
  out.reserve(a.size());
  for (const auto& row : a) {
    Scalar acc = Scalar::zero(v.empty() ? row[0].field() : v[0].field());
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero() && !v[j].is_zero()) acc = acc + row[j] * v[j];
    out.push_back(acc);
  }
  return out;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Scalar inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t mat_rank(Mat m) { return rref(m).size(); }

std::vector<Vec> nullspace(const Mat& m, const FieldDescriptor& f, std::size_t cols) {
  Mat r = m;
  const auto piv = rref(r);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_piv[free]) continue;
    Vec v = zero_vec(f, cols);
    v[free] = Scalar::one(f);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r[k][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (m.empty()) return std::nullopt;
  const std::size_t cols = m[0].size();
  Mat aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto piv = rref(aug);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  Vec x = zero_vec(b[0].field(), cols);
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug[k][cols];
  return x;
}

}  // namespace skewcalc
