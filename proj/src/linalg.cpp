#include "gkm/linalg.hpp"

#include "gkm/error.hpp"

namespace gkm {

int rref_inplace(QMat& a, std::vector<int>* pivots) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  if (pivots) pivots->clear();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    a.row(r) /= a(r, c);
    for (int i = 0; i < rows; ++i) {
      if (i != r && a(i, c) != 0) a.row(i) -= a(i, c) * a.row(r);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

int rank_of(QMat a) { return rref_inplace(a); }

QMat kernel_basis(const QMat& a) {
  const int cols = static_cast<int>(a.cols());
  QMat m = a;
  std::vector<int> pivots;
  const int rank = rref_inplace(m, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  QMat basis(cols, cols - rank);
  basis.setZero();
  int k = 0;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    basis(c, k) = 1;
    for (int r = 0; r < rank; ++r) basis(pivots[r], k) = -m(r, c);
    ++k;
  }
  return basis;
}

std::optional<QVec> solve_linear(const QMat& a, const QVec& b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  QMat aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  std::vector<int> pivots;
  const int rank = rref_inplace(aug, &pivots);
  QVec x = QVec::Zero(cols);
  for (int r = 0; r < rank; ++r) {
    if (pivots[r] == cols) return std::nullopt;  // row (0 ... 0 | 1)
    x(pivots[r]) = aug(r, cols);
  }
  return x;
}

QMat inverse(const QMat& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) fail("Singular", "inverse of a non-square matrix");
  QMat aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = QMat::Identity(n, n);
  std::vector<int> pivots;
  const int rank = rref_inplace(aug, &pivots);
  if (rank < n || pivots[n - 1] != n - 1)
    fail("Singular", "matrix is not invertible");
  return aug.rightCols(n);
}

SpanBuilder::SpanBuilder(int ambient_dim, bool track_coords)
    : ambient_(ambient_dim), track_(track_coords) {}

void SpanBuilder::reduce(QVec& v, QVec* combo) const {
  if (combo) *combo = QVec::Zero(dim());
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rational& c = v(pivots_[k]);
    if (c == 0) continue;
    Rational coeff = c;  // rows_[k] has a unit pivot
    v -= coeff * rows_[k];
    if (combo) (*combo)(static_cast<int>(k)) = coeff;
  }
}

bool SpanBuilder::add(const QVec& v) {
  QVec res = v;
  QVec combo;
  reduce(res, track_ ? &combo : nullptr);
  int piv = -1;
  for (int i = 0; i < ambient_; ++i) {
    if (res(i) != 0) {
      piv = i;
      break;
    }
  }
  if (piv < 0) return false;
  Rational lead = res(piv);
  res /= lead;
  QVec tracked;
  if (track_) {
    // res = (v - sum combo_k * rows_k) / lead; rows_k are themselves
    // combinations of earlier absorbed originals.
    tracked = QVec::Zero(static_cast<int>(rows_.size()) + 1);
    tracked(static_cast<int>(rows_.size())) = Rational(1) / lead;
    for (size_t k = 0; k < rows_.size(); ++k) {
      QVec ck = combos_[k];
      Rational f = -combo(static_cast<int>(k)) / lead;
      for (int j = 0; j < ck.size(); ++j) tracked(j) += f * ck(j);
    }
  }
  // Back-substitute to keep stored rows fully reduced against each other.
  for (size_t k = 0; k < rows_.size(); ++k) {
    Rational c = rows_[k](piv);
    if (c == 0) continue;
    rows_[k] -= c * res;
    if (track_) {
      QVec nk = QVec::Zero(tracked.size());
      nk.head(combos_[k].size()) = combos_[k];
      nk -= c * tracked;
      combos_[k] = nk;
    }
  }
  if (track_) {
    for (auto& ck : combos_) {
      if (ck.size() < tracked.size()) {
        QVec nk = QVec::Zero(tracked.size());
        nk.head(ck.size()) = ck;
        ck = nk;
      }
    }
    combos_.push_back(tracked);
  }
  rows_.push_back(res);
  pivots_.push_back(piv);
  return true;
}

namespace {
bool zero_vec(const QVec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}
}  // namespace

bool SpanBuilder::contains(const QVec& v) const {
  QVec res = v;
  reduce(res, nullptr);
  return zero_vec(res);
}

std::optional<QVec> SpanBuilder::coords(const QVec& v) const {
  if (!track_) fail("Unsupported", "SpanBuilder built without coordinate tracking");
  QVec res = v;
  QVec combo;
  reduce(res, &combo);
  if (!zero_vec(res)) return std::nullopt;
  QVec out = QVec::Zero(dim());
  for (size_t k = 0; k < rows_.size(); ++k) {
    const QVec& ck = combos_[k];
    for (int j = 0; j < ck.size(); ++j) out(j) += combo(static_cast<int>(k)) * ck(j);
  }
  return out;
}

}  // namespace gkm
