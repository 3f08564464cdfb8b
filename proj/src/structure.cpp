#include "gkm/structure.hpp"

#include <algorithm>

#include "gkm/error.hpp"

namespace gkm {

const std::map<Element, Poly>& StructureAlgebra::d_column(const Element& y) const {
  auto it = dcache_.find(y);
  if (it != dcache_.end()) return it->second;
  return dcache_.emplace(y, nh_.d_values(y)).first->second;
}

Poly StructureAlgebra::d(const Element& x, const Element& y) const {
  const auto& col = d_column(y);
  auto it = col.find(x);
  return it == col.end() ? Poly::zero(g_.dim()) : it->second;
}

Section StructureAlgebra::schubert(const Element& x,
                                   const std::vector<Element>& omega) const {
  Section out;
  for (const Element& y : omega) {
    Poly v = d(x, y);
    if (!v.is_zero()) out.emplace(y, std::move(v));
  }
  return out;
}

Section StructureAlgebra::unit(const std::vector<Element>& omega) const {
  return schubert(g_.id(), omega);
}

Section StructureAlgebra::translate_poly(const Poly& f,
                                         const std::vector<Element>& omega) const {
  Section out;
  for (const Element& y : omega) {
    Poly v = g_.act(y, f);
    if (!v.is_zero()) out.emplace(y, std::move(v));
  }
  return out;
}

Section StructureAlgebra::add(const Section& a, const Section& b) {
  Section out = a;
  for (const auto& [y, f] : b) {
    auto [it, fresh] = out.emplace(y, f);
    if (!fresh) {
      it->second += f;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

Section StructureAlgebra::sub(const Section& a, const Section& b) {
  Section out = a;
  for (const auto& [y, f] : b) {
    auto [it, fresh] = out.emplace(y, -f);
    if (!fresh) {
      it->second -= f;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

Section StructureAlgebra::mul(const Section& a, const Section& b) const {
  Section out;
  for (const auto& [y, f] : a) {
    auto it = b.find(y);
    if (it == b.end()) continue;
    Poly p = f * it->second;
    if (!p.is_zero()) out.emplace(y, std::move(p));
  }
  return out;
}

Section StructureAlgebra::scalar_mul(const Poly& f, const Section& z) const {
  Section out;
  for (const auto& [y, g] : z) {
    Poly p = f * g;
    if (!p.is_zero()) out.emplace(y, std::move(p));
  }
  return out;
}

Section StructureAlgebra::right_mul(const Section& z, const Poly& f) const {
  Section out;
  for (const auto& [y, g] : z) {
    Poly p = g * g_.act(y, f);
    if (!p.is_zero()) out.emplace(y, std::move(p));
  }
  return out;
}

std::vector<Edge> StructureAlgebra::edges(const std::vector<Element>& omega) const {
  std::vector<Edge> out;
  for (size_t i = 0; i < omega.size(); ++i) {
    for (size_t j = i + 1; j < omega.size(); ++j) {
      // omega is sorted by length-lex, so omega[j] is the longer one.
      const Element& v = omega[i];
      const Element& w = omega[j];
      if ((w.length() - v.length()) % 2 == 0) continue;
      Element t = g_.mul(w, g_.inv(v));
      if (!g_.is_reflection(t)) continue;
      out.push_back({v, w, g_.reflection_root(t)});
    }
  }
  return out;
}

void StructureAlgebra::validate_graph(const std::vector<Element>& omega) const {
  // Proportional labels at a shared vertex break the localization theory.
  auto proportional = [](const Poly& a, const Poly& b) {
    QVec u = a.linear_coeffs(), v = b.linear_coeffs();
    for (int i = 0; i < u.size(); ++i)
      for (int j = i + 1; j < u.size(); ++j)
        if (u(i) * v(j) != u(j) * v(i)) return false;
    return true;
  };
  std::map<Element, std::vector<Poly>> at_vertex;
  for (const Edge& e : edges(omega)) {
    at_vertex[e.lo].push_back(e.label);
    at_vertex[e.hi].push_back(e.label);
  }
  for (const auto& [v, labels] : at_vertex) {
    for (size_t i = 0; i < labels.size(); ++i)
      for (size_t j = i + 1; j < labels.size(); ++j)
        if (proportional(labels[i], labels[j]))
          fail("GKMViolation", "proportional edge labels at vertex " +
                                   g_.element_str(v) + ": " + labels[i].str() +
                                   " and " + labels[j].str());
  }
}

void StructureAlgebra::validate_section(const Section& z,
                                        const std::vector<Element>& omega) const {
  auto value = [&](const Element& y) {
    auto it = z.find(y);
    return it == z.end() ? Poly::zero(g_.dim()) : it->second;
  };
  for (const Edge& e : edges(omega)) {
    Poly diff = value(e.hi) - value(e.lo);
    if (diff.is_zero()) continue;
    if (!diff.try_divide(e.label))
      fail("GKMViolation", "edge " + g_.element_str(e.lo) + " -- " +
                               g_.element_str(e.hi) + ": difference " +
                               diff.str() + " is not divisible by " +
                               e.label.str());
  }
}

bool StructureAlgebra::is_section(const Section& z,
                                  const std::vector<Element>& omega) const {
  try {
    validate_section(z, omega);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::map<Element, Poly> StructureAlgebra::straighten(
    const Section& z, const std::vector<Element>& omega) const {
  std::map<Element, Poly> coeffs;
  Section rem = z;
  // omega is sorted bottom-up; subtracting c_x P(x) only touches y >= x,
  // which come later, so one sweep suffices.
  for (const Element& x : omega) {
    auto it = rem.find(x);
    if (it == rem.end()) continue;
    auto q = it->second.try_divide(g_.inversion_product(x));
    if (!q)
      fail("NotInSpan", "value " + it->second.str() + " at " +
                            g_.element_str(x) +
                            " is not divisible by the inversion product");
    if (q->is_zero()) continue;
    rem = sub(rem, scalar_mul(*q, schubert(x, omega)));
    coeffs.emplace(x, std::move(*q));
  }
  if (!rem.empty())
    fail("NotInSpan", "residue remains at " +
                          g_.element_str(rem.begin()->first) +
                          " after the straightening sweep");
  return coeffs;
}

Section StructureAlgebra::translate(const Element& x, const Section& z,
                                    const std::vector<Element>& omega) const {
  Section out;
  for (const Element& v : omega) {
    Element vx = g_.mul(v, x);
    if (std::find(omega.begin(), omega.end(), vx) == omega.end())
      fail("SupportNotStable", "translate by " + g_.element_str(x) +
                                   " sends " + g_.element_str(v) +
                                   " outside the support set");
    auto it = z.find(vx);
    if (it != z.end()) out.emplace(v, it->second);
  }
  return out;
}

Section StructureAlgebra::s_dot_schubert(int s, const Element& w,
                                         const std::vector<Element>& omega) const {
  Element ws = g_.mul(w, s);
  if (ws.length() > w.length()) return schubert(w, omega);
  Section out = schubert(w, omega);
  out = sub(out, scalar_mul(g_.act(w, g_.root(s)), schubert(ws, omega)));
  for (const Element& v : g_.covers(ws)) {
    if (std::find(omega.begin(), omega.end(), v) == omega.end()) continue;
    Element t = g_.mul(g_.inv(ws), v);  // v = ws * t
    QVec cr = g_.reflection_coroot(t);
    Rational c = 0;
    QVec as = g_.root(s).linear_coeffs();
    for (int i = 0; i < g_.dim(); ++i) c += cr(i) * as(i);
    if (c == 0) continue;
    out = sub(out, scalar_mul(Poly::constant(g_.dim(), c), schubert(v, omega)));
  }
  return out;
}

std::pair<Section, Section> StructureAlgebra::s_split(
    const Section& z, int s, const std::vector<Element>& omega) const {
  for (const Element& v : omega) {
    Element vs = g_.mul(v, s);
    if (std::find(omega.begin(), omega.end(), vs) == omega.end())
      fail("SupportNotStable", "support set is not stable under the right " +
                                   g_.label(s) + "-shift");
  }
  auto value = [&](const Element& y) {
    auto it = z.find(y);
    return it == z.end() ? Poly::zero(g_.dim()) : it->second;
  };
  Section b;
  for (const Element& w : omega) {
    Element ws = g_.mul(w, s);
    if (ws.length() < w.length()) continue;  // handle each pair from below
    Poly diff = value(w) - value(ws);
    Poly bw = diff.is_zero() ? diff : diff.divided_exact(g_.act(w, g_.root(s)));
    if (!bw.is_zero()) {
      b.emplace(w, bw);
      b.emplace(ws, std::move(bw));
    }
  }
  // a = z - b * tau_s with tau_s the translate of alpha_s / 2.
  Section tau = translate_poly(Rational(1, 2) * g_.root(s), omega);
  Section a = sub(z, mul(b, tau));
  return {a, b};
}

std::map<Element, Poly> StructureAlgebra::pieri_schubert(
    const Element& w, const Poly& lambda, const std::vector<Element>& omega) const {
  std::map<Element, Poly> out;
  Poly wl = g_.act(w, lambda);
  if (!wl.is_zero()) out.emplace(w, wl);
  const QVec lam = lambda.linear_coeffs();
  for (const Element& v : g_.covers(w)) {
    if (std::find(omega.begin(), omega.end(), v) == omega.end()) continue;
    Element t = g_.mul(g_.inv(w), v);  // v = w t
    QVec cr = g_.reflection_coroot(t);
    Rational c = 0;
    for (int i = 0; i < g_.dim(); ++i) c += cr(i) * lam(i);
    if (c == 0) continue;
    out.emplace(v, Poly::constant(g_.dim(), -c));
  }
  return out;
}

QVec StructureAlgebra::bar_coords(const Section& z,
                                  const std::vector<Element>& omega) const {
  auto coeffs = straighten(z, omega);
  QVec out = QVec::Zero(static_cast<int>(omega.size()));
  for (size_t i = 0; i < omega.size(); ++i) {
    auto it = coeffs.find(omega[i]);
    if (it != coeffs.end()) out(static_cast<int>(i)) = it->second.augment();
  }
  return out;
}

QMat StructureAlgebra::bar_action(const Element& x,
                                  const std::vector<Element>& omega) const {
  const int n = static_cast<int>(omega.size());
  QMat m = QMat::Zero(n, n);
  Section px = schubert(x, omega);
  for (int j = 0; j < n; ++j) {
    Section prod = mul(px, schubert(omega[j], omega));
    m.col(j) = bar_coords(prod, omega);
  }
  return m;
}

}  // namespace gkm
