// Soergel modules: scalar extensions k⊗B of Bott–Samelson (or sheaf-section)
// modules, carrying the induced action of Z̄ = Z/R_+Z through the Schubert
// classes P̄_x and the right multiplication by V.
//
// Hom spaces are computed degree by degree as commutants; these are finite
// linear problems because the modules are finite-dimensional. Whether a
// module is indecomposable over a chosen action set is decided exactly in
// its degree-zero endomorphism algebra: the radical is cut out by the trace
// form of the regular representation (characteristic zero), a semisimple
// quotient of dimension one proves indecomposability, and a splitting is
// exhibited as an explicit idempotent found by Fitting's lemma on elements
// whose minimal polynomial has a rational root of partial multiplicity.
// Anything the search cannot settle raises an error instead of guessing.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkm/bimodule.hpp"
#include "gkm/coxeter.hpp"
#include "gkm/hecke.hpp"
#include "gkm/linalg.hpp"

namespace gkm {

struct SoergelModule {
  std::vector<int> degrees;           // degree of each basis vector
  std::vector<std::string> names;     // basis labels, for reports
  std::map<Element, QMat> p_act;      // action of P̄_x, raises degree 2ℓ(x);
                                      // absent keys act as zero
  std::vector<QMat> v_act;            // right action of each coordinate of V,
                                      // raises degree 2
  int dim() const { return static_cast<int>(degrees.size()); }
};

// The class of b in k⊗BS(w); coordinates indexed by strings in the order
// of bar_bs (big-endian bit masks).
QVec bar_element(const BottSamelson& bs, const BSElement& b);

// k⊗BS(word) with the P̄_x for x in the interval below the Demazure product
// and the right action of the coordinates of V. Every operator is graded,
// so each matrix entry is the constant term of a homogeneous coordinate
// polynomial: zero unless the degrees line up, and then equal to the value
// of that coordinate at any point. The entries are therefore computed by
// evaluating the κ-decomposition at a generic rational point (exact mpq
// arithmetic; a point avoiding all denominators is found by retrying).
// The overload sharing a StructureAlgebra reuses its memoized d-columns.
SoergelModule bar_bs(const Group& g, const std::vector<int>& word);
SoergelModule bar_bs(const Group& g, const std::vector<int>& word,
                     const StructureAlgebra& sa);

// Direct sum of shifted copies of k: all P̄_x (x ≠ id) and all of V act as
// zero. trivial_module(g, {0}) is the Z̄-module k itself.
SoergelModule trivial_module(const Group& g, std::vector<int> degrees);

SoergelModule direct_sum(const SoergelModule& a, const SoergelModule& b);

// Which operators a map must commute with.
enum class ActionSet { zbar, right_r, none };

struct HomSpace {
  std::map<int, std::vector<QMat>> maps;  // degree -> basis of maps M -> N
  Laurent graded_dim() const;             // v^degree per basis map
};

// Graded maps M -> N commuting with the chosen action set. For zbar these
// are module maps over Z̄ (the right R-action is a combination of the P̄_s,
// so it commutes automatically); for right_r only the V-action constrains.
HomSpace hom_over(const SoergelModule& m, const SoergelModule& n, ActionSet a);

struct EndReport {
  bool indecomposable = false;
  int end0_dim = 0;        // dim of the degree-0 endomorphism algebra
  int semisimple_dim = 0;  // dim of its quotient by the radical
  QMat idempotent;         // a nontrivial idempotent when decomposable
};

// Error("Undecided") when neither a proof of locality nor an explicit
// idempotent was found.
EndReport decomposition_report(const SoergelModule& m, ActionSet a);
bool indecomposable_over(const SoergelModule& m, ActionSet a);

// Instance check that k⊗(sections of BS(word) supported at the identity)
// maps isomorphically onto ∩_{x≠id} Ann(P̄_x): per degree d ≤ dmax, the
// dimensions of k⊗Γ_id, of its image in k⊗BS, and of the annihilator
// intersection all agree.
bool theta_check(const Group& g, const std::vector<int>& word, int dmax);

/*
  The rank-3 universal group, word stustu: a degree-2 element b of BS whose
  class b̄ kills the right action of R_+ although the sections through the
  identity only start in degree 4 — so 1 ↦ b̄ is a right-R-module map k⊗BS
  that no section provides, and the comparison map from sections to
  right-module maps is not surjective.

  The record reports the computed coefficient of H_id in the canonical
  basis element at stustu verbatim, plus its comparison against the
  reference value v^4 + v^6; the comparison is recorded, not enforced.
*/
struct UniversalVerdict {
  int deg = 0;                       // degree of b (2)
  bool in_gamma_id = true;           // false: degree-2 sections at id vanish
  bool annihilates_rplus = false;    // true: b̄ · λ = 0 for all λ in V
  std::string kl_coeff;              // computed coefficient of H_id
  bool kl_matches_reference = false; // computed == "v^4 + v^6"?
  bool theta_surjective = true;      // false: right-R maps exceed sections
  std::string to_json() const;       // fixed five-key schema
};

// Error("VerificationFailed") if any of the structural claims fails (the
// reference comparison for the coefficient is only recorded).
UniversalVerdict counterexample_universal();

}  // namespace gkm
