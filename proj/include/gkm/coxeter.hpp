/*
  coxeter.hpp — Coxeter systems with a chosen realization.

  A Realization carries the Coxeter matrix plus roots/coroots in a space V
  of any dimension. The group itself is driven by a second, internal
  realization over the basis of simple roots with an integral Cartan matrix
  (the Kac–Moody style root basis); in that model every real root is
  coordinatewise >= 0 or <= 0, which turns descent testing — and hence
  reduced words, normal forms and Bruhat order — into sign inspection.
  Group elements are stored as (lex-least reduced word, matrix, inverse
  matrix) in that internal model; the user realization only ever enters
  through the action on polynomials and through root/coroot labels.

  Bond orders are restricted to m in {2, 3, 4, 6} and infinity (stored as
  0), the orders admitting an integral root basis.
*/
#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkm/linalg.hpp"
#include "gkm/poly.hpp"
#include "gkm/ratfun.hpp"

namespace gkm {

// m[s][t] with m[s][s] == 1; the value 0 encodes an infinite bond.
using CoxMatrix = std::vector<std::vector<int>>;

struct Realization {
  std::string name;
  int rank = 0;
  int dim = 0;
  CoxMatrix cox;
  QMat roots;                       // dim x rank, column s = alpha_s
  QMat coroots;                     // rank x dim, row s = alpha_s^vee
  std::vector<std::string> labels;  // generator names, default "s0", "s1", ...

  // <alpha_s^vee, alpha_t>
  Rational pairing(int s, int t) const { return (coroots.row(s) * roots.col(t))(0, 0); }
};

// The integral root basis on V = span of the simple roots themselves:
// roots = identity, coroots = Cartan matrix with the off-diagonal pairs
// (0,0), (-1,-1), (-1,-2), (-1,-3), (-2,-2) for m = 2, 3, 4, 6, infinity.
Realization canonical_realization(const CoxMatrix& cox);

// Built-in systems: "a1", "a2", "b2", "g2", "universalN" (N = 2..9, all
// bonds infinite), "affine-a2" (rank 3 on a 4-dimensional space containing
// the invariant form delta). Throws Error("Unsupported") on other names.
Realization preset_realization(const std::string& name);

// A group element: lex-least reduced word plus the matrices of w and w^{-1}
// in the internal root-basis realization. Total order is by length, then
// lexicographic on the word — the enumeration order used everywhere.
class Element {
 public:
  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_id() const { return word_.empty(); }

  bool operator==(const Element& o) const { return word_ == o.word_; }
  bool operator!=(const Element& o) const { return word_ != o.word_; }
  bool operator<(const Element& o) const {
    if (word_.size() != o.word_.size()) return word_.size() < o.word_.size();
    return word_ < o.word_;
  }

 private:
  friend class Group;
  std::vector<int> word_;
  QMat m_, minv_;
};

class Group {
 public:
  // Validates: pairings <alpha_s^vee, alpha_s> = 2; for finite bonds the
  // two-colored quantum number [m-1] equals 1 in both colors (else
  // Error("UnbalancedRealization")) and (M_s M_t)^m = id; for infinite
  // bonds the product of the two pairings is >= 4 (else
  // Error("InfiniteEdgeTooSmall")).
  explicit Group(Realization r);

  const Realization& realization() const { return real_; }
  int rank() const { return real_.rank; }
  int dim() const { return real_.dim; }
  const std::string& label(int s) const { return real_.labels[s]; }
  int generator_index(const std::string& label) const;  // Error("Unsupported")

  Element id() const;
  Element gen(int s) const;
  Element mul(const Element& a, const Element& b) const;
  Element mul(const Element& a, int s) const;
  Element mul(int s, const Element& a) const;
  Element inv(const Element& a) const;
  Element from_word(const std::vector<int>& w) const;
  bool is_reduced(const std::vector<int>& w) const;

  bool right_descent(const Element& w, int s) const;  // ws < w
  bool left_descent(const Element& w, int s) const;   // sw < w

  // Action on the user realization.
  const QMat& matrix(const Element& w) const;  // memoized, dim x dim
  Poly act(const Element& w, const Poly& f) const;
  RatFun act(const Element& w, const RatFun& f) const;
  Poly root(int s) const;    // alpha_s as a linear polynomial on V
  QVec coroot(int s) const;  // alpha_s^vee as a coordinate row
  Rational coroot_pair(int s, const Poly& linear) const;  // <alpha_s^vee, f>

  // Divided difference (f - s(f)) / alpha_s; exact, lands in Sym(V).
  Poly demazure(int s, const Poly& f) const;

  bool bruhat_leq(const Element& x, const Element& y) const;
  // All z <= y, sorted by (length, lex word).
  std::vector<Element> interval(const Element& y) const;
  // Upper covers w -> wt with l(wt) = l(w) + 1 (complete; finite even when
  // W is infinite), and lower covers, each sorted.
  std::vector<Element> covers(const Element& w) const;
  std::vector<Element> cocovers(const Element& w) const;

  bool is_reflection(const Element& t) const;
  // Positive root / coroot attached to a reflection, in the user
  // realization: t = w s w^{-1} with l(t) = 2 l(w) + 1 gives w(alpha_s).
  Poly reflection_root(const Element& t) const;
  QVec reflection_coroot(const Element& t) const;

  std::vector<std::vector<int>> reduced_words(const Element& w) const;

  // beta_j = s_{i_1} ... s_{i_{j-1}}(alpha_{i_j}) for a word (i_1 ... i_l);
  // for a reduced word these are the left inversions of the product.
  std::vector<Poly> prefix_roots(const std::vector<int>& word) const;
  // Product of the prefix roots of the normal form ("Poincare product").
  Poly inversion_product(const Element& w) const;

  // All bit strings e (e[j] in {0,1}) with prod_j s_{i_j}^{e[j]} = target,
  // in increasing binary order (e[0] most significant).
  std::vector<std::vector<int>> subexpressions(const std::vector<int>& word,
                                               const Element& target) const;
  // The right-greedy ("canonical") subexpression for target inside word;
  // Error("NotASubword") if target is not reachable greedily.
  std::vector<int> canonical_subexpression(const Element& target,
                                           const std::vector<int>& word) const;

  std::string word_str(const std::vector<int>& word) const;   // "stu" style
  std::string element_str(const Element& w) const;            // "e" for id
  std::vector<int> parse_word(const std::string& text) const;

 private:
  Realization real_;
  Realization canon_;
  std::vector<QMat> gen_user_;   // dim x dim
  std::vector<QMat> gen_canon_;  // rank x rank
  mutable std::map<std::vector<int>, QMat> matrix_cache_;

  void validate() const;
  Element make(QMat m, QMat minv) const;  // extract normal form
  bool canon_right_descent(const QMat& m, int s) const;
};

}  // namespace gkm
