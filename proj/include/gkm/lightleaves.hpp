// Light-leaf bases of Bott–Samelson bimodules.
//
// For each subexpression e of a word w there is a morphism built from four
// elementary pieces, chosen per letter by the Bruhat decoration (U if the
// running target goes up under the letter, D if it comes down) and the bit:
//   U1  extend by identity            degree  0
//   U0  end dot        f⊗g ↦ fg       degree +1
//   D0  merge   f⊗g⊗h ↦ f∂_s(g)⊗h     degree −1
//   D1  cap     f⊗g⊗h ↦ f∂_s(g)h      degree  0
// D steps first rewrite the maintained reduced word to end in the letter;
// with all bonds in {2, ∞} that only ever takes adjacent swaps of commuting
// letters, which is why general bonds fall back to canonical leaves only.
//
// The light-leaf element ll_{w,e} is the image of 1⊗ under the adjoint of
// that morphism with respect to the intersection forms: it is the unique
// element with ⟨ll_{w,e}, c_b⟩ = Tr(LL_{w,e}(c_b)) over the string basis,
// recovered by one linear solve against the Gram matrix (whose determinant
// is a unit, so the solve stays inside the polynomial ring).

#pragma once

#include <map>
#include <vector>

#include "gkm/bimodule.hpp"
#include "gkm/coxeter.hpp"
#include "gkm/structure.hpp"

namespace gkm {

// Inverse of a graded square matrix over R with unit determinant. Every
// elimination step then has a nonzero scalar pivot (in a nonzero Leibniz
// term all entries have degree zero), so no fractions ever appear.
// Error("GramNotUnit") when a scalar pivot is missing.
std::vector<std::vector<Poly>> unimodular_inverse(
    std::vector<std::vector<Poly>> a, int nvars);

struct LightLeaf {
  std::vector<int> bits;        // the subexpression e
  Element target;               // w^e
  std::string decorations;      // one of "U", "D" per letter
  int defect = 0;               // #(U, bit 0) − #(D, bit 0)
  bool canonical = false;       // no D decoration (the all-U subexpression)
  BSElement element;            // ll_{w,e} ∈ BS(w)
  BSElement unit_image;         // LL_{w,e}(1⊗_w): 1⊗ if canonical, else 0
  std::vector<int> target_word; // maintained reduced word for the target
};

class LightLeaves {
 public:
  // The rewrite policy only changes which reduced word is maintained for
  // the running target (rewrite lazily at D steps, or eagerly keep the
  // word sorted). Dual canonical leaves must not depend on it.
  enum class Policy { lazy, eager };

  LightLeaves(const Group& g, std::vector<int> word,
              Policy policy = Policy::lazy);

  const Group& group() const { return g_; }
  const BottSamelson& bs() const { return bs_; }
  const std::vector<int>& word() const { return bs_.word(); }

  // All bonds between word letters lie in {2, ∞} (with vanishing pairings
  // at 2-bonds); otherwise only canonical leaves are available.
  bool full_support() const { return full_; }

  // Every subexpression under full support, only the canonical ones
  // otherwise.
  const std::vector<LightLeaf>& leaves() const { return leaves_; }
  const LightLeaf& leaf(const std::vector<int>& bits) const;

  // Dual family: ⟨dual(e), ll_f⟩ = δ_{e,f}, aligned with leaves().
  // ll*_{can_x} is the Schubert element 𝒫_{w,x}.
  const std::vector<BSElement>& dual_leaves() const;
  const BSElement& dual_leaf(const std::vector<int>& bits) const;

  // The non-canonical leaves; they span the defective submodule D_w.
  std::vector<BSElement> defective() const;

  // H_w = D_w^⊥: every Schubert element of the Z-orbit basis pairs to zero
  // with every non-canonical leaf, equals the dual canonical leaf, and the
  // rank bookkeeping closes (corank = interval size).
  bool orthogonal_check(const StructureAlgebra& sa) const;

  // {ll_e : w^e ≤ x} is a basis of Γ_{≤x}; {ll*_e : w^e ≥ x} of Γ_{≥x}.
  std::vector<BSElement> gamma_leq(const Element& x) const;
  std::vector<BSElement> gamma_geq(const Element& x) const;

 private:
  const Group& g_;
  BottSamelson bs_;
  Policy policy_;
  bool full_ = false;
  std::vector<LightLeaf> leaves_;
  std::vector<BSElement> duals_;
  std::map<std::vector<int>, int> index_;

  void require_full(const char* what) const;
  LightLeaf build_leaf(const std::vector<int>& bits,
                       const std::vector<std::vector<Poly>>& gram_inv) const;
};

}  // namespace gkm
