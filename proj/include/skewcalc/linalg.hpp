#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "skewcalc/monomial.hpp"

namespace skewcalc {

/// Sparse coefficient combination over labelled input vectors.
using Combo = std::map<std::size_t, Scalar>;

/// Incremental row echelon form over Terms vectors. Each row is normalized so
/// that its leading (largest) monomial has coefficient 1. With tracking on,
/// every row remembers its expression in terms of the labelled inputs.
class Echelon {
 public:
  explicit Echelon(const FieldDescriptor& field, bool track = false) : field_(field), track_(track) {}

  struct Outcome {
    bool independent = false;
    /// For a dependent insert: the relation sum(combo[l] * input[l]) = 0.
    Combo dependency;
  };

  Outcome insert(const Terms& v, std::size_t label = 0);
  /// Remainder of `v` after reduction by the current rows.
  Terms reduce(const Terms& v) const;
  /// Remainder and the combination with v = remainder + sum(combo[l] * input[l]).
  Terms reduce_tracked(const Terms& v, Combo& combo) const;
  bool contains(const Terms& v) const { return reduce(v).empty(); }

  std::size_t rank() const noexcept { return rows_.size(); }
  /// Fully reduced basis ordered by ascending leading monomial.
  std::vector<Terms> reduced_basis() const;
  std::vector<Monomial> pivots() const;

 private:
  struct Row {
    Terms v;
    Combo combo;
  };
  FieldDescriptor field_;
  bool track_;
  std::map<Monomial, Row, MonomialLess> rows_;
};

void add_combo(Combo& acc, const Combo& c, const Scalar& s);

/// Dense vectors and row-major matrices over one field.
using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

Vec zero_vec(const FieldDescriptor& f, std::size_t n);
Mat identity_mat(const FieldDescriptor& f, std::size_t n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
bool vec_is_zero(const Vec& v);

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(Mat& m);
std::size_t mat_rank(Mat m);
/// Basis of {v : m v = 0}; `cols` is needed when m has no rows.
std::vector<Vec> nullspace(const Mat& m, const FieldDescriptor& f, std::size_t cols);
/// Some x with m x = b, if any.
std::optional<Vec> solve(const Mat& m, const Vec& b);

}  // namespace skewcalc
