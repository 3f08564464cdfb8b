// Light-leaf families: frozen small cases, degree/defect bookkeeping,
// biorthogonality with the dual family, agreement with the cohomology
// submodule, and the leaf bases of both support filtrations.
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "gkm/bimodule.hpp"
#include "gkm/error.hpp"
#include "gkm/lightleaves.hpp"
#include "gkm/structure.hpp"

using namespace gkm;

namespace {

Poly C(const Group& g, int c) { return Poly::constant(g.dim(), c); }

// Stack elements of one Bott–Samelson bimodule as rational vectors indexed
// by (string, monomial); columns span a Q-subspace of one graded piece.
QMat stack(const std::vector<BSElement>& els) {
  std::map<std::pair<std::vector<int>, Expo>, int> idx;
  for (const BSElement& b : els)
    for (const auto& [bits, p] : b.coords)
      for (const auto& [expo, c] : p.terms())
        idx.emplace(std::make_pair(bits, expo), static_cast<int>(idx.size()));
  QMat m = QMat::Zero(std::max<int>(1, idx.size()), std::max<int>(1, els.size()));
  for (size_t j = 0; j < els.size(); ++j)
    for (const auto& [bits, p] : els[j].coords)
      for (const auto& [expo, c] : p.terms())
        m(idx.at({bits, expo}), j) = c;
  return m;
}

bool same_span(const std::vector<BSElement>& a, const std::vector<BSElement>& b) {
  std::vector<BSElement> both = a;
  both.insert(both.end(), b.begin(), b.end());
  long r = rank_of(stack(both));
  return r == rank_of(stack(a)) && r == rank_of(stack(b));
}

void monomials(int nvars, int total, Expo& cur, std::vector<Expo>& out) {
  if (static_cast<int>(cur.size()) == nvars - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    monomials(nvars, total - k, cur, out);
    cur.pop_back();
  }
}

Poly monomial_poly(int nvars, const Expo& e) {
  Poly p = Poly::constant(nvars, 1);
  for (int i = 0; i < nvars; ++i)
    for (int k = 0; k < e[i]; ++k) p = p * Poly::variable(nvars, i);
  return p;
}

// All R-multiples of the given homogeneous elements landing in degree d.
std::vector<BSElement> r_span_in_degree(const BottSamelson& bs, int nvars,
                                        const std::vector<BSElement>& gens,
                                        int d) {
  std::vector<BSElement> out;
  for (const BSElement& gen : gens) {
    int dg = -17;
    for (int t = -16; t <= 16; ++t)
      if (bs.homogeneous_of(gen, t)) dg = t;
    REQUIRE(dg > -17);
    if ((d - dg) % 2 != 0 || d < dg) continue;
    std::vector<Expo> mons;
    Expo cur;
    monomials(nvars, (d - dg) / 2, cur, mons);
    for (const Expo& e : mons)
      out.push_back(BottSamelson::scale(gen, monomial_poly(nvars, e)));
  }
  return out;
}

}  // namespace

TEST_CASE("one letter: frozen leaves and duals") {
  Group g(preset_realization("a1"));
  LightLeaves ll(g, {0});
  const BottSamelson& bs = ll.bs();
  Poly a = g.root(0);

  REQUIRE(ll.full_support());
  REQUIRE(ll.leaves().size() == 2);

  CHECK(ll.leaf({1}).element == bs.one_tensor());
  CHECK(ll.leaf({0}).element == bs.c_top());
  CHECK(ll.leaf({1}).defect == 0);
  CHECK(ll.leaf({0}).defect == 1);
  // Both subexpressions are canonical here: each is the unique all-U
  // subexpression for its target.
  CHECK(ll.leaf({1}).canonical);
  CHECK(ll.leaf({0}).canonical);
  CHECK(ll.leaf({1}).decorations == "U");
  CHECK(ll.leaf({0}).decorations == "U");

  // duals: the dual of (0) is 1⊗ (the identity Schubert element), the dual
  // of (1) is α·1⊗ + c_top (the length-one Schubert element).
  CHECK(ll.dual_leaf({0}) == bs.one_tensor());
  CHECK(ll.dual_leaf({1}) ==
        BottSamelson::add(BottSamelson::scale(bs.one_tensor(), a), bs.c_top()));

  StructureAlgebra sa(g);
  CHECK(ll.orthogonal_check(sa));
}

TEST_CASE("repeated letter: the four frozen leaves") {
  Group g(preset_realization("a1"));
  LightLeaves ll(g, {0, 0});
  const BottSamelson& bs = ll.bs();
  Poly a = g.root(0);
  Element e = g.id(), s = g.gen(0);

  REQUIRE(ll.full_support());
  REQUIRE(ll.leaves().size() == 4);

  // Frozen elements, one per subexpression.
  CHECK(ll.leaf({0, 0}).element == bs.basis({0, 0}));
  CHECK(ll.leaf({0, 1}).element == bs.basis({0, 1}));
  CHECK(ll.leaf({1, 0}).element ==
        BottSamelson::scale(bs.basis({1, 1}), C(g, -1)));
  CHECK(ll.leaf({1, 1}).element ==
        BottSamelson::add(
            BottSamelson::sub(BottSamelson::scale(bs.basis({1, 1}), a),
                              bs.basis({1, 0})),
            bs.basis({0, 1})));

  // Decorations, defects, canonicity.
  CHECK(ll.leaf({0, 0}).decorations == "UU");
  CHECK(ll.leaf({1, 1}).decorations == "UD");
  CHECK(ll.leaf({0, 0}).defect == 2);
  CHECK(ll.leaf({0, 1}).defect == 1);
  CHECK(ll.leaf({1, 0}).defect == -1);
  CHECK(ll.leaf({1, 1}).defect == 0);
  CHECK(ll.leaf({0, 0}).canonical);
  CHECK(ll.leaf({0, 1}).canonical);
  CHECK_FALSE(ll.leaf({1, 0}).canonical);
  CHECK_FALSE(ll.leaf({1, 1}).canonical);
  CHECK(ll.leaf({0, 0}).bits == g.canonical_subexpression(e, bs.word()));
  CHECK(ll.leaf({0, 1}).bits == g.canonical_subexpression(s, bs.word()));

  // Targets and the degree formula deg = defect − length(target).
  for (const LightLeaf& l : ll.leaves()) {
    CHECK(bs.homogeneous_of(l.element, l.defect - l.target.length()));
    std::set<Element> sup = bs.support(l.element);
    for (const Element& x : sup) CHECK(g.bruhat_leq(x, l.target));
  }
  CHECK(ll.leaf({1, 1}).target == e);
  CHECK(ll.leaf({1, 0}).target == s);
  CHECK(bs.support(ll.leaf({1, 1}).element) == std::set<Element>{e});

  // The morphism itself sends 1⊗ to 1⊗ exactly on canonical leaves.
  for (const LightLeaf& l : ll.leaves()) {
    if (l.canonical) {
      BottSamelson bu(g, l.target_word);
      CHECK(l.unit_image == bu.one_tensor());
    } else {
      CHECK(l.unit_image.is_zero());
    }
  }

  // Biorthogonality of the dual family.
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      Poly p = bs.iform(ll.dual_leaves()[i], ll.leaves()[j].element);
      CHECK(p == (i == j ? C(g, 1) : Poly::zero(g.dim())));
    }

  StructureAlgebra sa(g);
  HwBasis hw = bs.hw_basis(sa);
  CHECK(ll.dual_leaf({0, 0}) == hw.elements.at(e));
  CHECK(ll.dual_leaf({0, 1}) == hw.elements.at(s));
  CHECK(ll.orthogonal_check(sa));
}

TEST_CASE("universal pair: all leaves canonical, duals span the top filtration") {
  Group g(preset_realization("universal3"));
  LightLeaves ll(g, {0, 1});
  const BottSamelson& bs = ll.bs();
  Element st = g.mul(g.gen(0), 1);

  REQUIRE(ll.full_support());
  REQUIRE(ll.leaves().size() == 4);
  for (const LightLeaf& l : ll.leaves()) {
    CHECK(l.canonical);
    CHECK(l.element == bs.basis(l.bits));  // canonical leaves are pure strings
    CHECK(l.unit_image == BottSamelson(g, l.target_word).one_tensor());
  }

  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      Poly p = bs.iform(ll.dual_leaves()[i], ll.leaves()[j].element);
      CHECK(p == (i == j ? C(g, 1) : Poly::zero(g.dim())));
    }

  // Γ_{≥st} is generated by the single dual leaf at the top.
  std::vector<BSElement> top = ll.gamma_geq(st);
  REQUIRE(top.size() == 1);
  CHECK(top[0] == ll.dual_leaf({1, 1}));
  for (int d : {2, 4}) {
    std::vector<BSElement> direct = bs.gamma({st}, d);
    CHECK(same_span(direct, r_span_in_degree(bs, g.dim(), top, d)));
  }

  StructureAlgebra sa(g);
  CHECK(ll.orthogonal_check(sa));
}

TEST_CASE("universal triple: filtration bases from leaves and dual leaves") {
  Group g(preset_realization("universal3"));
  LightLeaves ll(g, {0, 1, 0});
  const BottSamelson& bs = ll.bs();
  StructureAlgebra sa(g);

  REQUIRE(ll.full_support());
  REQUIRE(ll.leaves().size() == 8);
  long canonical = 0;
  for (const LightLeaf& l : ll.leaves()) canonical += l.canonical;
  CHECK(canonical == 6);  // = |{x ≤ sts}| in the universal group

  for (const LightLeaf& l : ll.leaves()) {
    CHECK(bs.homogeneous_of(l.element, l.defect - l.target.length()));
    for (const Element& x : bs.support(l.element))
      CHECK(g.bruhat_leq(x, l.target));
    if (l.canonical) CHECK(l.element == bs.basis(l.bits));
  }

  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) {
      Poly p = bs.iform(ll.dual_leaves()[i], ll.leaves()[j].element);
      CHECK(p == (i == j ? C(g, 1) : Poly::zero(g.dim())));
    }
  CHECK(ll.orthogonal_check(sa));

  // Leaves with target ≤ x are an R-basis of the sections supported below x;
  // dual leaves with target ≥ x one of the sections supported above x.
  Element sts = bs.demazure_product();
  std::vector<Element> omega = g.interval(sts);
  for (const Element& x : omega) {
    std::set<Element> below, above;
    for (const Element& y : omega) {
      if (g.bruhat_leq(y, x)) below.insert(y);
      if (g.bruhat_leq(x, y)) above.insert(y);
    }
    for (int d : {-1, 0, 1, 2, 3}) {
      CHECK(same_span(bs.gamma(below, d),
                      r_span_in_degree(bs, g.dim(), ll.gamma_leq(x), d)));
      CHECK(same_span(bs.gamma(above, d),
                      r_span_in_degree(bs, g.dim(), ll.gamma_geq(x), d)));
    }
  }
}

TEST_CASE("two-bond rewrites: leaves are policy independent") {
  // s,t commute; u is free against both. The descents met along (s,t,s,t)
  // force the maintained word to be rewritten before every cap or merge.
  Realization ra = canonical_realization({{1, 2, 0}, {2, 1, 0}, {0, 0, 1}});
  Group g(ra);
  StructureAlgebra sa(g);

  for (std::vector<int> word :
       {std::vector<int>{0, 1, 0}, std::vector<int>{0, 1, 0, 1}}) {
    LightLeaves lazy(g, word, LightLeaves::Policy::lazy);
    LightLeaves eager(g, word, LightLeaves::Policy::eager);

    REQUIRE(lazy.full_support());
    REQUIRE(lazy.leaves().size() == (1u << word.size()));
    long canonical = 0;
    for (const LightLeaf& l : lazy.leaves()) canonical += l.canonical;
    CHECK(canonical == 4);  // Ω = {e, s, t, st}

    for (size_t m = 0; m < lazy.leaves().size(); ++m) {
      const LightLeaf& a = lazy.leaves()[m];
      const LightLeaf& b = eager.leaves()[m];
      CHECK(a.bits == b.bits);
      CHECK(a.decorations == b.decorations);
      CHECK(a.defect == b.defect);
      CHECK(a.target == b.target);
      CHECK(a.element == b.element);
      CHECK(lazy.dual_leaves()[m] == eager.dual_leaves()[m]);
      CHECK(lazy.bs().homogeneous_of(a.element, a.defect - a.target.length()));
      for (const Element& x : lazy.bs().support(a.element))
        CHECK(g.bruhat_leq(x, a.target));
    }
    CHECK(lazy.orthogonal_check(sa));
    CHECK(eager.orthogonal_check(sa));
  }
}

TEST_CASE("general bonds: canonical leaves only") {
  Group g(preset_realization("a2"));
  LightLeaves ll(g, {0, 1, 0});
  const BottSamelson& bs = ll.bs();

  CHECK_FALSE(ll.full_support());
  REQUIRE(ll.leaves().size() == 6);  // one per element of the full interval
  for (const LightLeaf& l : ll.leaves()) {
    CHECK(l.canonical);
    CHECK(l.bits == g.canonical_subexpression(l.target, bs.word()));
    CHECK(l.element == bs.basis(l.bits));
    CHECK(l.unit_image == BottSamelson(g, l.target_word).one_tensor());
    CHECK(bs.homogeneous_of(l.element, l.defect - l.target.length()));
  }

  CHECK_THROWS_WITH_AS(ll.leaf({1, 0, 1}), doctest::Contains("canonical"),
                       Error);
  CHECK_THROWS_WITH_AS(ll.dual_leaves(), doctest::Contains("{2, infinity}"),
                       Error);
  CHECK_THROWS_WITH_AS(ll.defective(), doctest::Contains("{2, infinity}"),
                       Error);
  CHECK_THROWS_WITH_AS(ll.gamma_leq(g.id()), doctest::Contains("{2, infinity}"),
                       Error);
}

TEST_CASE("unimodular inverse: frozen example and failure") {
  Group g(preset_realization("a1"));
  Poly a = g.root(0);
  Poly one = C(g, 1), zero = Poly::zero(g.dim());

  auto inv = unimodular_inverse({{zero, one}, {one, -a}}, g.dim());
  CHECK(inv[0][0] == a);
  CHECK(inv[0][1] == one);
  CHECK(inv[1][0] == one);
  CHECK(inv[1][1] == zero);

  CHECK_THROWS_WITH_AS(unimodular_inverse({{a}}, g.dim()),
                       doctest::Contains("GramNotUnit"), Error);
}
