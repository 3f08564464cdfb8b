/*
  hecke.hpp — the Hecke algebra in the Soergel normalization.

  Coefficients are Laurent polynomials in v over the integers; the standard
  basis H_w satisfies (H_s - v^{-1})(H_s + v) = 0, i.e.
      H_w H_s = H_{ws}                       if ws > w,
      H_w H_s = H_{ws} + (v^{-1} - v) H_w    if ws < w.
  The bar involution fixes exactly the canonical basis b_w, computed by the
  usual mu-correction recursion; b_s = H_s + v, and the product of the b_s
  along a word is the character of the corresponding Bott–Samelson object.

  The pairing used for hom spaces is coefficientwise: (a, b) = sum_x a_x b_x.
*/
#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkm/coxeter.hpp"

namespace gkm {

// exponent of v -> integer coefficient, zero coefficients dropped
using Laurent = std::map<int, long long>;

Laurent laurent_add(const Laurent& a, const Laurent& b);
Laurent laurent_sub(const Laurent& a, const Laurent& b);
Laurent laurent_mul(const Laurent& a, const Laurent& b);
Laurent laurent_bar(const Laurent& a);  // v -> v^{-1}
long long laurent_coeff(const Laurent& a, int k);
// Canonical print, ascending exponents: "v^-1 + 2 + v^2", "0" when empty.
std::string laurent_str(const Laurent& a);

class Hecke {
 public:
  using Elt = std::map<Element, Laurent>;

  explicit Hecke(const Group& g) : g_(g) {}

  Elt h(const Element& w) const;  // standard basis element
  Elt scale(const Elt& a, const Laurent& c) const;
  static Elt add(const Elt& a, const Elt& b);
  static Elt sub(const Elt& a, const Elt& b);
  Elt mul_gen(const Elt& a, int s) const;  // a * H_s
  Elt mul(const Elt& a, const Elt& b) const;
  Elt bar(const Elt& a) const;

  // Canonical basis, memoized: bar-invariant, h_{w,w} = 1, and all other
  // coefficients in v Z[v].
  const Elt& canonical(const Element& w) const;
  // mu(x, w): coefficient of v in the H_x coordinate of b_w.
  long long mu(const Element& x, const Element& w) const;

  // prod_i (H_{s_i} + v) — the Bott–Samelson character of the word.
  Elt bs_character(const std::vector<int>& word) const;

  Laurent pairing(const Elt& a, const Elt& b) const;

  std::string str(const Elt& a) const;

 private:
  const Group& g_;
  mutable std::map<Element, Elt> canon_cache_;
};

}  // namespace gkm
