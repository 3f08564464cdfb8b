/*
  bimodule.hpp — Bott–Samelson bimodules in the string basis.

  BS(word) is the tensor product of one B_s = R ⊗_{R^s} R (1) per letter,
  with componentwise multiplication. As a left R-module it is free on the
  string basis c_e, e in {0,1}^n: slot i carries 1⊗1 when e_i = 1 and the
  central element c_s (degree +1) when e_i = 0. Everything here — the right
  R-action, the ring structure, the intersection form, the decomposition
  over the fraction field, the structure-algebra action, and the submodule
  generated by 1⊗ — reduces to three slot identities:

      c_id·f = s(f)·c_id − ∂_s(f)·c_s,   c_s·f = f·c_s,   c_s·c_s = −α_s·c_s,

  applied right-to-left with a pending scalar that still has to cross the
  remaining slots. Over Q = Frac(R) the module splits into components
  indexed by products of chosen letters; the κ-basis (c̃_s = twisted slot,
  c_s = untwisted) realizes the splitting, with c_id = (c̃_s − c_s)/α_s.
*/
#pragma once

#include <set>

#include "gkm/structure.hpp"

namespace gkm {

// Left-R coefficients on the string basis; zero coordinates are omitted.
struct BSElement {
  std::vector<int> word;
  std::map<std::vector<int>, Poly> coords;

  bool is_zero() const { return coords.empty(); }
  bool operator==(const BSElement& o) const {
    return word == o.word && coords == o.coords;
  }
};

// Coefficients on the κ-basis over the fraction field; bit 1 = c̃ slot.
struct QBSElement {
  std::vector<int> word;
  std::map<std::vector<int>, RatFun> coords;
};

// The P_{w,x} generators of H_w = Z·1⊗, one per x in the interval below
// the Demazure product of the word.
struct HwBasis {
  std::vector<int> word;
  bool reduced = true;
  std::map<Element, BSElement> elements;
};

class BottSamelson {
 public:
  BottSamelson(const Group& g, std::vector<int> word);

  const Group& group() const { return g_; }
  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }

  // --- string basis ---------------------------------------------------------
  BSElement zero() const { return BSElement{word_, {}}; }
  BSElement basis(const std::vector<int>& bits) const;
  BSElement one_tensor() const { return basis(std::vector<int>(word_.size(), 1)); }
  BSElement c_top() const { return basis(std::vector<int>(word_.size(), 0)); }
  static int string_degree(const std::vector<int>& bits);  // #zeros - #ones
  bool homogeneous_of(const BSElement& b, int d) const;

  static BSElement add(BSElement a, const BSElement& b);
  static BSElement sub(BSElement a, const BSElement& b);
  static BSElement scale(BSElement a, const Poly& f);  // left multiplication

  // --- bimodule and ring structure ------------------------------------------
  BSElement right_mul(const BSElement& b, const Poly& f) const;
  BSElement multiply(const BSElement& a, const BSElement& b) const;
  Poly trace(const BSElement& b) const;  // coefficient of c_top
  Poly iform(const BSElement& a, const BSElement& b) const;

  // --- decomposition over the fraction field --------------------------------
  QBSElement to_kappa(const BSElement& b) const;
  // Error("DenominatorNotCleared") when the result is not integral.
  BSElement from_kappa(const QBSElement& q) const;
  // The component a κ-monomial lives in: product of the chosen letters.
  Element kappa_target(const std::vector<int>& bits) const;
  std::set<Element> support(const BSElement& b) const;
  Element demazure_product() const;

  // Componentwise action of a section: multiply the x-component by z_x.
  // Vertices absent from z act by zero.
  BSElement z_act(const Section& z, const BSElement& b) const;

  // --- graded pieces and the support filtration -----------------------------
  // Monomial-by-string basis of the degree-d part over the rationals.
  std::vector<BSElement> degree_basis(int d) const;
  // Basis of the degree-d part of Γ_A = {b : support(b) ⊆ A}.
  std::vector<BSElement> gamma(const std::set<Element>& A, int d) const;

  // --- the cohomology submodule ---------------------------------------------
  HwBasis hw_basis(const StructureAlgebra& sa) const;
  HwBasis hw_basis() const { return hw_basis(StructureAlgebra(g_)); }
  // Expansion of P_{w,x}·λ in the P basis (coefficients keyed by target;
  // includes the diagonal term). Error("NotInHw") if the expansion leaves
  // the span, Error("PieriViolation") on support or leading-term failure.
  std::map<Element, Poly> pieri(const HwBasis& hw, const Element& x,
                                const Poly& lambda) const;

 private:
  const Group& g_;
  std::vector<int> word_;

  Poly letter_root(int i) const { return g_.root(word_[i]); }
};

}  // namespace gkm
