/*
  sheaves.cpp — top-down construction of canonical sheaves on moment graphs.

  Everything happens degree by degree in explicit monomial coordinates. At a
  vertex x the already-built sections restrict into ⊕_E stalk_hi/α_E over the
  up-edges; per degree that image is maintained as a span whose basis vectors
  remember their expansion over the stalk generators found at x so far. A
  restriction that escapes R_+ · (image) is a new stalk generator and the
  section it came from is extended by that generator; one that stays inside
  is expanded and the combination becomes the section's value at x. Sections
  supported at x alone are the kernel of the edge conditions, swept with the
  same coordinates and capped just past the symmetric degree bound l(w) of a
  free section basis — growth at the cap aborts loudly instead of guessing.
*/
#include "gkm/sheaves.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "gkm/error.hpp"

namespace gkm {

namespace {

bool vec_zero(const QVec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

// All exponent vectors of the given total degree, in a fixed order; a
// variable index in `skip` is forced to exponent zero.
void monomials_rec(int nvars, int deg, int pos, int skip, Expo& cur,
                   std::vector<Expo>& out) {
  if (pos == nvars) {
    if (deg == 0) out.push_back(cur);
    return;
  }
  int top = (pos == skip) ? 0 : deg;
  for (int e = 0; e <= top; ++e) {
    cur[pos] = e;
    monomials_rec(nvars, deg - e, pos + 1, skip, cur, out);
  }
  cur[pos] = 0;
}

std::vector<Expo> monomials(int nvars, int deg, int skip = -1) {
  std::vector<Expo> out;
  Expo cur(nvars, 0);
  monomials_rec(nvars, deg, 0, skip, cur, out);
  return out;
}

Poly monomial_poly(int nvars, const Expo& e) {
  Poly p = Poly::zero(nvars);
  p.add_term(e, Rational(1));
  return p;
}

// Substitution that kills a linear form: the pivot variable is rewritten as
// minus the complementary combination, so substituted polynomials are
// canonical representatives modulo the form.
struct Reducer {
  int pivot = -1;
  QMat subst;
};

Reducer make_reducer(const Poly& label, int nvars) {
  QVec c = label.linear_coeffs();
  Reducer r;
  for (int i = 0; i < nvars && r.pivot < 0; ++i)
    if (c(i) != 0) r.pivot = i;
  if (r.pivot < 0) fail("GKMViolation", "zero edge label");
  r.subst = QMat::Identity(nvars, nvars);
  r.subst(r.pivot, r.pivot) = 0;
  for (int i = 0; i < nvars; ++i)
    if (i != r.pivot) r.subst(i, r.pivot) = -c(i) / c(r.pivot);
  return r;
}

// Monomial coordinates of one degree piece of a direct sum of shifted free
// modules: slot s with generator degree d_s contributes the monomials of
// polynomial degree (d - d_s)/2, minus a per-slot pivot variable when the
// slot lives in a quotient.
struct GradedCoords {
  std::vector<std::pair<int, Expo>> keys;
  std::map<std::pair<int, Expo>, int> pos;

  int dim() const { return static_cast<int>(keys.size()); }

  void add_slot(int slot, int gen_deg, int d, int nvars, int skip) {
    int diff = d - gen_deg;
    if (diff < 0 || diff % 2 != 0) return;
    for (Expo& e : monomials(nvars, diff / 2, skip)) {
      pos.emplace(std::make_pair(slot, e), static_cast<int>(keys.size()));
      keys.emplace_back(slot, std::move(e));
    }
  }

  int at(int slot, const Expo& e) const {
    auto it = pos.find({slot, e});
    if (it == pos.end()) fail("Internal", "graded coordinate out of range");
    return it->second;
  }
};

// out += scale * f placed at `slot`.
void add_poly(const GradedCoords& gc, int slot, const Poly& f,
              const Rational& scale, QVec& out) {
  for (const auto& [e, c] : f.terms()) out(gc.at(slot, e)) += scale * c;
}

}  // namespace

MomentGraph moment_graph(const Group& g, const Element& w) {
  MomentGraph mg;
  mg.top = w;
  mg.vertices = g.interval(w);
  for (int i = 0; i < static_cast<int>(mg.vertices.size()); ++i)
    mg.index[mg.vertices[i]] = i;
  StructureAlgebra sa(g);
  sa.validate_graph(mg.vertices);
  mg.up.assign(mg.vertices.size(), {});
  for (const Edge& e : sa.edges(mg.vertices)) {
    mg.up[mg.index.at(e.lo)].push_back(static_cast<int>(mg.edges.size()));
    mg.edges.push_back({mg.index.at(e.lo), mg.index.at(e.hi), e.label});
  }
  return mg;
}

Laurent BMPSheaf::stalk_character(int v) const {
  Laurent out;
  for (int d : stalk_degrees[v]) out[d] += 1;
  return out;
}

Laurent BMPSheaf::sections_character() const {
  Laurent out;
  for (const SectionGen& gen : sections) out[gen.degree] += 1;
  return out;
}

BMPSheaf bmp_build(const Group& g, const Element& w) {
  BMPSheaf sh;
  sh.graph = moment_graph(g, w);
  const MomentGraph& mg = sh.graph;
  const int nv = static_cast<int>(mg.vertices.size());
  const int nvars = g.dim();
  sh.stalk_degrees.assign(nv, {});
  sh.edge_maps.resize(mg.edges.size());

  std::vector<Reducer> red;
  std::vector<std::vector<Poly>> var_image;  // per edge, reduced variables
  red.reserve(mg.edges.size());
  for (const MomentGraph::GraphEdge& ge : mg.edges) {
    red.push_back(make_reducer(ge.label, nvars));
    std::vector<Poly> vi;
    for (int i = 0; i < nvars; ++i)
      vi.push_back(Poly::variable(nvars, i).substituted(red.back().subst));
    var_image.push_back(std::move(vi));
  }

  std::vector<BMPSheaf::SectionGen>& G = sh.sections;

  // The stalk at the top is free of rank one, generated in degree -l(w).
  {
    sh.stalk_degrees[nv - 1] = {-w.length()};
    BMPSheaf::SectionGen gen;
    gen.degree = -w.length();
    gen.birth = nv - 1;
    gen.values.assign(nv, {});
    gen.values[nv - 1] = {Poly::constant(nvars, Rational(1))};
    G.push_back(std::move(gen));
  }

  for (int vi = nv - 2; vi >= 0; --vi) {
    const std::vector<int>& ups = mg.up[vi];
    const int ng = static_cast<int>(G.size());

    // Coordinate slots of the edge target ⊕_E stalk_hi / α_E at this vertex.
    struct Slot {
      int edge, row, deg, pivot;
    };
    std::vector<Slot> slots;
    for (int e : ups) {
      const std::vector<int>& degs = sh.stalk_degrees[mg.edges[e].hi];
      for (int r = 0; r < static_cast<int>(degs.size()); ++r)
        slots.push_back({e, r, degs[r], red[e].pivot});
    }

    auto edge_coords = [&](int d) {
      GradedCoords gc;
      for (int si = 0; si < static_cast<int>(slots.size()); ++si)
        gc.add_slot(si, slots[si].deg, d, nvars, slots[si].pivot);
      return gc;
    };

    // Reduced restriction of a section into the edge target.
    auto restrict_gen = [&](const BMPSheaf::SectionGen& gen,
                            const GradedCoords& gc) {
      QVec out = QVec::Zero(gc.dim());
      for (int si = 0; si < static_cast<int>(slots.size()); ++si) {
        const Slot& sl = slots[si];
        const Poly& val = gen.values[mg.edges[sl.edge].hi][sl.row];
        if (val.is_zero()) continue;
        add_poly(gc, si, val.substituted(red[sl.edge].subst), Rational(1),
                 out);
      }
      return out;
    };

    int dlo = G[0].degree, dhi = G[0].degree;
    for (const BMPSheaf::SectionGen& gen : G) {
      dlo = std::min(dlo, gen.degree);
      dhi = std::max(dhi, gen.degree);
    }

    std::vector<int>& degs_here = sh.stalk_degrees[vi];
    std::vector<int> gen_of;  // stalk generator -> defining section
    std::vector<std::map<int, Poly>> values_here(ng);

    // Image sweep. Basis vectors of the image remember their expansion over
    // the stalk generators found here, so expressing a later restriction is
    // a span-coordinate lookup.
    struct BasisEntry {
      QVec img;
      std::map<int, Poly> exp;
    };
    std::vector<BasisEntry> prev;
    GradedCoords gc_prev;

    for (int d = dlo; d <= dhi; d += 2) {
      GradedCoords gc = edge_coords(d);
      std::vector<BasisEntry> cur;
      SpanBuilder sb(gc.dim(), true);

      // R_+ times the previous degree of the image.
      for (const BasisEntry& be : prev) {
        for (int i = 0; i < nvars; ++i) {
          QVec v = QVec::Zero(gc.dim());
          for (int idx = 0; idx < gc_prev.dim(); ++idx) {
            const Rational& c = be.img(idx);
            if (c == 0) continue;
            const auto& [slot, e] = gc_prev.keys[idx];
            Poly prod =
                monomial_poly(nvars, e) * var_image[slots[slot].edge][i];
            add_poly(gc, slot, prod, c, v);
          }
          if (!sb.add(v)) continue;
          BasisEntry ne;
          ne.img = std::move(v);
          Poly xi = Poly::variable(nvars, i);
          for (const auto& [j, f] : be.exp) ne.exp[j] = f * xi;
          cur.push_back(std::move(ne));
        }
      }

      // Restrictions of the section generators of this degree: fresh
      // directions are new stalk generators, the rest get expanded.
      for (int k = 0; k < ng; ++k) {
        if (G[k].degree != d) continue;
        QVec v = restrict_gen(G[k], gc);
        if (vec_zero(v)) continue;  // value at this vertex is zero
        if (sb.add(v)) {
          int j = static_cast<int>(degs_here.size());
          degs_here.push_back(d);
          gen_of.push_back(k);
          values_here[k] = {{j, Poly::constant(nvars, Rational(1))}};
          BasisEntry ne;
          ne.img = std::move(v);
          ne.exp = {{j, Poly::constant(nvars, Rational(1))}};
          cur.push_back(std::move(ne));
          continue;
        }
        auto co = sb.coords(v);
        if (!co) fail("Internal", "restriction escaped its own image span");
        std::map<int, Poly> exp;
        for (int t = 0; t < co->size(); ++t) {
          if ((*co)(t) == 0) continue;
          for (const auto& [j, f] : cur[t].exp) {
            Poly piece = (*co)(t)*f;
            auto it = exp.find(j);
            if (it == exp.end())
              exp.emplace(j, std::move(piece));
            else
              it->second += piece;
          }
        }
        for (auto it = exp.begin(); it != exp.end();)
          it = it->second.is_zero() ? exp.erase(it) : std::next(it);
        values_here[k] = std::move(exp);
      }

      gc_prev = std::move(gc);
      prev = std::move(cur);
    }

    const int kx = static_cast<int>(degs_here.size());

    // Chosen representatives of the edge maps out of this vertex: column j
    // is the value of the defining section of generator j upstairs.
    for (int e : ups) {
      int hi = mg.edges[e].hi;
      int rh = static_cast<int>(sh.stalk_degrees[hi].size());
      sh.edge_maps[e].assign(rh, std::vector<Poly>(kx, Poly::zero(nvars)));
      for (int j = 0; j < kx; ++j)
        for (int r = 0; r < rh; ++r)
          sh.edge_maps[e][r][j] = G[gen_of[j]].values[hi][r];
    }

    // Values of the previously built sections at this vertex.
    for (int k = 0; k < ng; ++k) {
      std::vector<Poly> dense(kx, Poly::zero(nvars));
      for (auto& [j, f] : values_here[k]) dense[j] = std::move(f);
      G[k].values[vi] = std::move(dense);
    }

    // Kernel of the edge conditions: sections supported at this vertex. A
    // free section basis has degrees in [-l(w), l(w)], so the sweep runs two
    // steps past l(w) and aborts if a generator still shows up above it.
    if (kx > 0) {
      int dmin = degs_here[0], dmax = degs_here[0];
      for (int d : degs_here) {
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
      }
      const int cap = std::max(dmax, w.length()) + 4;
      GradedCoords sc_prev;
      std::vector<QVec> kprev;
      for (int d = dmin; d <= cap; d += 2) {
        GradedCoords sc;
        for (int j = 0; j < kx; ++j)
          sc.add_slot(j, degs_here[j], d, nvars, -1);
        if (sc.dim() == 0) continue;
        GradedCoords gc = edge_coords(d);
        QMat a = QMat::Zero(gc.dim(), sc.dim());
        for (int col = 0; col < sc.dim(); ++col) {
          const auto& [j, mono] = sc.keys[col];
          Poly mp = monomial_poly(nvars, mono);
          for (int si = 0; si < static_cast<int>(slots.size()); ++si) {
            const Slot& sl = slots[si];
            const Poly& entry = sh.edge_maps[sl.edge][sl.row][j];
            if (entry.is_zero()) continue;
            Poly q = (entry * mp).substituted(red[sl.edge].subst);
            for (const auto& [e, c] : q.terms()) a(gc.at(si, e), col) += c;
          }
        }
        // Span of R_+ times the lower kernel, then fresh kernel directions.
        SpanBuilder sk(sc.dim());
        for (const QVec& u : kprev) {
          for (int i = 0; i < nvars; ++i) {
            QVec v = QVec::Zero(sc.dim());
            for (int idx = 0; idx < sc_prev.dim(); ++idx) {
              if (u(idx) == 0) continue;
              auto [j, mono] = sc_prev.keys[idx];
              mono[i] += 1;
              v(sc.at(j, mono)) += u(idx);
            }
            sk.add(v);
          }
        }
        QMat ker = kernel_basis(a);
        std::vector<QVec> kcur;
        for (int c = 0; c < ker.cols(); ++c) {
          QVec z = ker.col(c);
          kcur.push_back(z);
          if (!sk.add(z)) continue;
          if (d > w.length())
            fail("KernelSweepTruncated",
                 "kernel generator of degree " + std::to_string(d) +
                     " at vertex " + g.element_str(mg.vertices[vi]));
          BMPSheaf::SectionGen gen;
          gen.degree = d;
          gen.birth = vi;
          gen.values.assign(nv, {});
          for (int u = vi; u < nv; ++u)
            gen.values[u].assign(sh.stalk_degrees[u].size(),
                                 Poly::zero(nvars));
          for (int idx = 0; idx < sc.dim(); ++idx) {
            if (z(idx) == 0) continue;
            const auto& [j, mono] = sc.keys[idx];
            gen.values[vi][j].add_term(mono, z(idx));
          }
          G.push_back(std::move(gen));
        }
        sc_prev = std::move(sc);
        kprev = std::move(kcur);
      }
    }
  }
  return sh;
}

SoergelModule global_sections(const Group& g, const BMPSheaf& sh) {
  const MomentGraph& mg = sh.graph;
  const int nv = static_cast<int>(mg.vertices.size());
  const int nvars = g.dim();
  const int n = static_cast<int>(sh.sections.size());

  SoergelModule m;
  for (int k = 0; k < n; ++k) {
    m.degrees.push_back(sh.sections[k].degree);
    m.names.push_back(
        "g" + std::to_string(k) + "[" +
        g.element_str(mg.vertices[sh.sections[k].birth]) + "]");
  }

  // One coordinate slot per (vertex, stalk generator).
  std::vector<int> soff(nv, 0);
  std::vector<int> slot_deg;
  for (int v = 0; v < nv; ++v) {
    soff[v] = static_cast<int>(slot_deg.size());
    for (int d : sh.stalk_degrees[v]) slot_deg.push_back(d);
  }

  auto vectorize = [&](int k, const Poly& mult, const GradedCoords& gc) {
    QVec out = QVec::Zero(gc.dim());
    const BMPSheaf::SectionGen& gen = sh.sections[k];
    for (int v = 0; v < nv; ++v)
      for (int r = 0; r < static_cast<int>(gen.values[v].size()); ++r) {
        const Poly& f = gen.values[v][r];
        if (f.is_zero()) continue;
        add_poly(gc, soff[v] + r, f * mult, Rational(1), out);
      }
    return out;
  };

  // Degrees where expansions are needed: generator degrees plus wherever a
  // Schubert section can land below the top generator degree.
  int maxdeg = m.degrees.empty() ? 0 : *std::max_element(m.degrees.begin(),
                                                         m.degrees.end());
  std::set<int> wanted(m.degrees.begin(), m.degrees.end());
  for (const Element& x : mg.vertices)
    for (int dj : m.degrees)
      if (dj + 2 * x.length() <= maxdeg) wanted.insert(dj + 2 * x.length());

  // Per degree: a tracked basis of all monomial multiples of the section
  // generators. Freeness says every single one must be independent.
  struct DegSpace {
    GradedCoords gc;
    SpanBuilder sb;
    std::vector<int> from;         // absorbed vector -> section index
    std::vector<bool> is_const;    // absorbed vector is the bare generator
  };
  std::map<int, DegSpace> spaces;
  for (int dd : wanted) {
    GradedCoords gc;
    for (int s = 0; s < static_cast<int>(slot_deg.size()); ++s)
      gc.add_slot(s, slot_deg[s], dd, nvars, -1);
    DegSpace ds{std::move(gc), SpanBuilder(0, true), {}, {}};
    ds.sb = SpanBuilder(ds.gc.dim(), true);
    for (int k = 0; k < n; ++k) {
      int diff = dd - m.degrees[k];
      if (diff < 0 || diff % 2 != 0) continue;
      for (const Expo& e : monomials(nvars, diff / 2)) {
        if (!ds.sb.add(vectorize(k, monomial_poly(nvars, e), ds.gc)))
          fail("SectionsNotFree",
               "dependent monomial multiple of section generators in degree " +
                   std::to_string(dd));
        ds.from.push_back(k);
        ds.is_const.push_back(diff == 0);
      }
    }
    spaces.emplace(dd, std::move(ds));
  }

  // Componentwise action of each Schubert section, reduced modulo R_+.
  StructureAlgebra sa(g);
  for (const Element& x : mg.vertices) {
    Section p = sa.schubert(x, mg.vertices);
    QMat mat = QMat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      int dd = m.degrees[j] + 2 * x.length();
      if (dd > maxdeg) continue;  // lands above every generator
      const DegSpace& ds = spaces.at(dd);
      QVec tau = QVec::Zero(ds.gc.dim());
      const BMPSheaf::SectionGen& gen = sh.sections[j];
      for (int v = 0; v < nv; ++v) {
        auto pv = p.find(mg.vertices[v]);
        if (pv == p.end() || pv->second.is_zero()) continue;
        for (int r = 0; r < static_cast<int>(gen.values[v].size()); ++r) {
          const Poly& f = gen.values[v][r];
          if (f.is_zero()) continue;
          add_poly(ds.gc, soff[v] + r, f * pv->second, Rational(1), tau);
        }
      }
      auto co = ds.sb.coords(tau);
      if (!co) fail("NotInSections", "Schubert action leaves the span at " +
                                         g.element_str(x));
      for (int t = 0; t < co->size(); ++t)
        if (ds.is_const[t] && (*co)(t) != 0) mat(ds.from[t], j) = (*co)(t);
    }
    m.p_act.emplace(x, std::move(mat));
  }

  // The right action of the variables is the characteristic map: x_i acts
  // as the degree-two combination of Schubert classes it maps to.
  const Realization& rz = g.realization();
  for (int i = 0; i < nvars; ++i) {
    QMat mat = QMat::Zero(n, n);
    for (int s = 0; s < g.rank(); ++s) {
      auto it = m.p_act.find(g.gen(s));
      if (it == m.p_act.end()) continue;  // generator outside the interval
      mat -= rz.coroots(s, i) * it->second;
    }
    m.v_act.push_back(std::move(mat));
  }
  return m;
}

StalkReport stalk_kl_report(const Group& g, const BMPSheaf& sh) {
  StalkReport rep;
  Hecke he(g);
  const Hecke::Elt& b = he.canonical(sh.graph.top);
  for (int v = 0; v < static_cast<int>(sh.graph.vertices.size()); ++v) {
    const Element& x = sh.graph.vertices[v];
    Laurent expected;
    auto it = b.find(x);
    if (it != b.end())
      for (const auto& [k, c] : it->second) expected[-x.length() - k] += c;
    Laurent actual = sh.stalk_character(v);
    if (actual != expected) {
      rep.all_match = false;
      rep.mismatches.push_back(g.element_str(x) + ": stalk " +
                               laurent_str(actual) +
                               ", canonical basis expects " +
                               laurent_str(expected));
    }
  }
  return rep;
}

std::string AffineVerdict::to_json() const {
  std::ostringstream os;
  os << "{\"zbar_indecomposable\": "
     << (zbar_indecomposable ? "true" : "false")
     << ", \"rightR_decomposable\": "
     << (rightR_decomposable ? "true" : "false") << "}";
  return os.str();
}

AffineVerdict counterexample_affine() {
  Group g(preset_realization("affine-a2"));
  Element w = g.from_word({0, 1, 2, 1, 0, 1});
  BMPSheaf sh = bmp_build(g, w);

  AffineVerdict v;
  v.stalks_match_kl = stalk_kl_report(g, sh).all_match;
  v.sections_rank = sh.sections_character();

  SoergelModule b = global_sections(g, sh);
  EndReport zr = decomposition_report(b, ActionSet::zbar);
  v.zbar_indecomposable = zr.indecomposable;
  EndReport rr = decomposition_report(b, ActionSet::right_r);
  v.rightR_decomposable = !rr.indecomposable;
  if (v.rightR_decomposable) v.idempotent = rr.idempotent;

  if (v.stalks_match_kl && (!v.zbar_indecomposable || !v.rightR_decomposable))
    fail("VerificationFailed",
         "sections verdict contradicts the expected split: " + v.to_json());
  return v;
}

}  // namespace gkm
