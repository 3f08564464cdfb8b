/*
  linalg.hpp — exact linear algebra over the rationals.

  Dense Eigen matrices over mpq_class. Eigen's own decompositions pivot by
  magnitude, which is meaningless (and non-deterministic in spirit) for exact
  scalars, so elimination is hand-rolled here: first nonzero entry is the
  pivot, always. Everything downstream (kernels, solves, span membership)
  goes through rref_inplace so results are reproducible bit for bit.
*/
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gkm/rational.hpp"

namespace gkm {

using QMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Reduced row echelon form. Returns the rank; if `pivots` is given it
// receives the pivot column of each of the first rank rows.
int rref_inplace(QMat& a, std::vector<int>* pivots = nullptr);

int rank_of(QMat a);

// Columns form a basis of { x : a x = 0 }. Free variables are set to 1 in
// increasing column order, so the basis is canonical.
QMat kernel_basis(const QMat& a);

// One solution of a x = b, or nullopt if inconsistent.
std::optional<QVec> solve_linear(const QMat& a, const QVec& b);

// Throws Error("Singular") on a non-invertible input.
QMat inverse(const QMat& a);

// Incremental row-space with membership tests and coordinates relative to
// the independent vectors that were absorbed. Used wherever we grow a basis
// one candidate at a time (graded components, section spaces, hom spaces).
class SpanBuilder {
 public:
  explicit SpanBuilder(int ambient_dim, bool track_coords = false);

  // Absorbs v if independent of what is already here; returns whether it was.
  bool add(const QVec& v);

  bool contains(const QVec& v) const;

  // Coefficients c with v = sum c_i * (i-th absorbed vector), or nullopt if
  // v is outside the span. Requires track_coords.
  std::optional<QVec> coords(const QVec& v) const;

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }

 private:
  // rows_[k] is reduced: zero below earlier pivots, 1 at its own pivot.
  // combos_[k] expresses rows_[k] over the absorbed originals.
  int ambient_;
  bool track_;
  std::vector<QVec> rows_;
  std::vector<int> pivots_;
  std::vector<QVec> combos_;

  // Reduces v against rows_, returning the residue and (if tracking) the
  // coefficients of the part that was removed.
  void reduce(QVec& v, QVec* combo) const;
};

}  // namespace gkm
