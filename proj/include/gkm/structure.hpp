/*
  structure.hpp — the structure algebra of the moment graph.

  A section over a finite vertex set Omega (always taken downward closed in
  Bruhat order and sorted by length-then-lex) assigns a polynomial to each
  vertex subject to the edge condition: whenever w = t v for a reflection t,
  the difference of the two values is divisible by the root of t. Sections
  multiply pointwise.

  The distinguished basis consists of the restrictions of the equivariant
  Schubert sections P(x): their value at y is the evaluation d(x, y) from
  the nil-Hecke module, supported on {y >= x}, with P(x)_x equal to the
  inversion product p_x. Straightening peels a section bottom-up against
  this basis with exact divisions; failure to divide is reported as
  NotInSpan, never patched over.
*/
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gkm/nilhecke.hpp"

namespace gkm {

using Section = std::map<Element, Poly>;  // zero values are dropped

struct Edge {
  Element lo, hi;  // l(lo) < l(hi), hi = t * lo
  Poly label;      // positive root of the reflection t
};

class StructureAlgebra {
 public:
  explicit StructureAlgebra(const Group& g) : g_(g), nh_(g) {}

  const Group& group() const { return g_; }
  const NilHecke& nil() const { return nh_; }

  // d(x, y); zero when x is not below y. Columns are memoized.
  const std::map<Element, Poly>& d_column(const Element& y) const;
  Poly d(const Element& x, const Element& y) const;

  // --- sections -----------------------------------------------------------
  Section schubert(const Element& x, const std::vector<Element>& omega) const;
  Section unit(const std::vector<Element>& omega) const;  // = schubert(id)
  // The section v -> v(f); multiplication by it is the right R-action.
  Section translate_poly(const Poly& f, const std::vector<Element>& omega) const;

  static Section add(const Section& a, const Section& b);
  static Section sub(const Section& a, const Section& b);
  Section mul(const Section& a, const Section& b) const;      // pointwise
  Section scalar_mul(const Poly& f, const Section& z) const;  // f * z_v
  Section right_mul(const Section& z, const Poly& f) const;   // v(f) * z_v

  // --- the moment graph ----------------------------------------------------
  std::vector<Edge> edges(const std::vector<Element>& omega) const;
  // Labels at each vertex must be pairwise non-proportional
  // (Error("GKMViolation") otherwise).
  void validate_graph(const std::vector<Element>& omega) const;
  // Edge divisibility for one putative section (Error("GKMViolation")).
  void validate_section(const Section& z, const std::vector<Element>& omega) const;
  bool is_section(const Section& z, const std::vector<Element>& omega) const;

  // --- straightening -------------------------------------------------------
  // z = sum_x c_x P(x)|_Omega with c_x in R; Error("NotInSpan") when the
  // peel leaves a residue or a division fails. Omega must be downward
  // closed for the result to be meaningful.
  std::map<Element, Poly> straighten(const Section& z,
                                     const std::vector<Element>& omega) const;

  // --- W-symmetries ---------------------------------------------------------
  // Right translation (x . z)_v = z_{v x}; Omega must be stable under
  // right multiplication by x (Error("SupportNotStable")).
  Section translate(const Element& x, const Section& z,
                    const std::vector<Element>& omega) const;

  // s . P(w) expressed via the closed formula: identity when ws > w, else
  //   P(w) - w(alpha_s) P(ws) - sum over covers v of ws in Omega of
  //   <alpha_t^vee, alpha_s> P(v) with t = (ws)^{-1} v.
  Section s_dot_schubert(int s, const Element& w,
                         const std::vector<Element>& omega) const;

  // Splits z = a + b * tau_s with a, b invariant under the right s-shift,
  // tau_s the translate of alpha_s / 2. Returns (a, b). Omega must be
  // s-stable; the division (z_w - z_{ws}) / w(alpha_s) is exact for
  // genuine sections.
  std::pair<Section, Section> s_split(const Section& z, int s,
                                      const std::vector<Element>& omega) const;

  // --- multiplication laws --------------------------------------------------
  // Coefficients of P(w) * translate_poly(lambda) in the Schubert basis:
  //   w(lambda) at w, and -<alpha_t^vee, lambda> at each cover v = w t.
  std::map<Element, Poly> pieri_schubert(const Element& w, const Poly& lambda,
                                         const std::vector<Element>& omega) const;

  // --- the degree-zero fiber ------------------------------------------------
  // Coordinates of z in the fiber Z (x) k: augmentations of the
  // straightening coefficients, in omega order.
  QVec bar_coords(const Section& z, const std::vector<Element>& omega) const;
  // Matrix of multiplication by P(x) on the fiber over Omega.
  QMat bar_action(const Element& x, const std::vector<Element>& omega) const;

 private:
  const Group& g_;
  NilHecke nh_;
  mutable std::map<Element, std::map<Element, Poly>> dcache_;
};

}  // namespace gkm
