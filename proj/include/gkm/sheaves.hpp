/*
  sheaves.hpp — canonical sheaves on Bruhat moment graphs.

  The moment graph of an interval [id, w] has the interval as vertices and
  an edge x — tx for every reflection t with both ends in the interval,
  labeled by the positive root of t. The canonical sheaf is built top-down:
  the stalk at w is free of rank one generated in degree -l(w); at each
  lower vertex x the sections on {y > x} restrict into the direct sum of
  stalk_y / alpha over the up-edges at x, and the stalk at x is the minimal
  graded free cover of that image (new generators in each degree are a
  complement of R_+ times the part already reached).

  Sections are carried along explicitly as free generators: each new stalk
  generator lifts a section of the part already built, each vertex also
  contributes the generators of the kernel of its own edge restrictions
  (sections supported at that single vertex), and existing generators are
  extended downward by solving the edge conditions. That the restriction of
  sections to an upward-closed set is onto (flabbiness) is a theorem about
  this construction which the code assumes; every consequence used here is
  re-checked numerically — in particular linear independence of the
  monomial multiples of the section generators, so a failure surfaces as an
  error rather than a wrong answer.

  The reduction of the sections modulo R_+ is handed to the module layer in
  the shared format (action matrices of the section basis and the right
  variables), which decides indecomposability exactly. Stalk characters are
  compared against the canonical-basis coefficients h_{x,w}: with the top
  normalization above the expected character at x is v^{-l(x)} h_{x,w}(1/v).
*/
#pragma once

#include <string>
#include <vector>

#include "gkm/hecke.hpp"
#include "gkm/smod.hpp"
#include "gkm/structure.hpp"

namespace gkm {

// Vertices are the Bruhat interval below `top` in (length, lex) order;
// up[i] lists the edges whose lower end is vertex i.
struct MomentGraph {
  Element top;
  std::vector<Element> vertices;
  std::map<Element, int> index;
  struct GraphEdge {
    int lo = 0, hi = 0;
    Poly label;
  };
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> up;
};

// Error("GKMViolation") if some vertex sees proportional edge labels.
MomentGraph moment_graph(const Group& g, const Element& w);

struct BMPSheaf {
  MomentGraph graph;

  // Generator degrees of the stalk at each vertex.
  std::vector<std::vector<int>> stalk_degrees;

  // Per edge: matrix of the map stalk_lo -> stalk_hi / label; rows indexed
  // by the generators of stalk_hi, columns by the generators of stalk_lo.
  // Entries are chosen polynomial representatives.
  std::vector<std::vector<std::vector<Poly>>> edge_maps;

  // Free generators of the global sections. values[v] holds the
  // coordinates over the stalk generators at vertex v.
  struct SectionGen {
    int degree = 0;
    int birth = 0;  // vertex index where the generator appeared
    std::vector<std::vector<Poly>> values;
  };
  std::vector<SectionGen> sections;

  Laurent stalk_character(int v) const;
  Laurent sections_character() const;
};

// Top-down construction over interval(w).
BMPSheaf bmp_build(const Group& g, const Element& w);

// The reduction k ⊗ Γ of the global sections: degrees are the generator
// degrees, p_act holds the componentwise action of every Schubert section
// of the interval, v_act the right action of the variables.
// Error("SectionsNotFree") if the monomial multiples of the generators
// turn out dependent, Error("NotInSections") if an action leaves the span.
SoergelModule global_sections(const Group& g, const BMPSheaf& sheaf);

// Stalk characters versus the canonical basis: at each vertex x the
// character must equal v^{-l(x)} h_{x,w}(1/v). Mismatches are described,
// not thrown: they void the framework assumption, no more.
struct StalkReport {
  bool all_match = true;
  std::vector<std::string> mismatches;
};
StalkReport stalk_kl_report(const Group& g, const BMPSheaf& sheaf);

// The rank-3 affine counterexample: w = stutst. Its section reduction is
// indecomposable over the sections but splits as a graded right module
// over the variables, witnessed by an explicit idempotent. A stalk/KL
// mismatch only clears stalks_match_kl (framework assumption failed);
// Error("Undecided") can escape the module layer, nothing is guessed.
struct AffineVerdict {
  bool stalks_match_kl = false;
  bool zbar_indecomposable = false;
  bool rightR_decomposable = false;
  QMat idempotent;         // right-module witness, empty if none
  Laurent sections_rank;   // graded rank of the sections
  std::string to_json() const;
};
AffineVerdict counterexample_affine();

}  // namespace gkm
