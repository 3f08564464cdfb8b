/*
  nilhecke.hpp — the smash product Q_W = Frac(R) # W and the divided
  difference elements D_w inside it.

  A Q_W element is a finitely supported map Element -> RatFun with
  (f d_x)(g d_y) = f * x(g) d_{xy}. The generators are
      D_s = (1/alpha_s)(d_e - d_s),
  and D_w is the product of the D_s along a reduced word (braid relations
  hold in Q_W for balanced realizations; the tests pin that).

  Expanding d_y over the D-basis gives the equivariant Schubert evaluations
  d(x, y): two independent computations are provided — a triangular solve
  against the D_w (whose leading coefficient at d_w is (-1)^l(w)/p_w with
  p_w the inversion product), and the closed sum over reduced subwords with
  prefix-root weights. They must agree, and the library never collapses the
  two routes.
*/
#pragma once

#include <map>

#include "gkm/coxeter.hpp"
#include "gkm/ratfun.hpp"

namespace gkm {

using QW = std::map<Element, RatFun>;

class NilHecke {
 public:
  explicit NilHecke(const Group& g) : g_(g) {}
  const Group& group() const { return g_; }

  // Basic arithmetic on Q_W elements.
  static void add_term(QW& a, const Element& x, const RatFun& f);
  static QW add(const QW& a, const QW& b);
  static QW sub(const QW& a, const QW& b);
  QW scale(const QW& a, const RatFun& f) const;  // left multiply by f d_e
  QW mul(const QW& a, const QW& b) const;

  QW one() const;                 // d_e
  QW delta(const Element& w) const;
  QW delta_gen(int s) const;
  QW D_gen(int s) const;
  const QW& D(const Element& w) const;  // memoized along the normal form
  QW poly(const Poly& f) const;         // f d_e

  // d(x, y) for all x <= y, via the triangular solve. Values are honest
  // polynomials; a surviving denominator throws Error("NonPolynomial").
  std::map<Element, Poly> d_values(const Element& y) const;
  // The same numbers as a sum over reduced subwords of word(y).
  std::map<Element, Poly> d_values_subwords(const Element& y) const;

  // Right multiplication law by a linear form lambda:
  //   D_w . lambda = w(lambda) D_w + sum over lower covers v = w t of
  //   <alpha_t^vee, lambda> D_v.
  // Computed from that formula; mul(D(w), poly(lambda)) is the direct
  // route the tests compare against.
  QW pieri(const Element& w, const Poly& lambda) const;

  Poly inversion_product(const Element& w) const { return g_.inversion_product(w); }

 private:
  const Group& g_;
  mutable std::map<Element, QW> dcache_;
};

}  // namespace gkm
