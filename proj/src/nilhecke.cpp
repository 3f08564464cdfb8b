#include "gkm/nilhecke.hpp"

#include "gkm/error.hpp"

namespace gkm {

void NilHecke::add_term(QW& a, const Element& x, const RatFun& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = a.emplace(x, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) a.erase(it);
  }
}

QW NilHecke::add(const QW& a, const QW& b) {
  QW out = a;
  for (const auto& [x, f] : b) add_term(out, x, f);
  return out;
}

QW NilHecke::sub(const QW& a, const QW& b) {
  QW out = a;
  for (const auto& [x, f] : b) add_term(out, x, -f);
  return out;
}

QW NilHecke::scale(const QW& a, const RatFun& f) const {
  QW out;
  for (const auto& [x, g] : a) add_term(out, x, f * g);
  return out;
}

QW NilHecke::mul(const QW& a, const QW& b) const {
  QW out;
  for (const auto& [x, f] : a) {
    for (const auto& [y, g] : b) {
      add_term(out, g_.mul(x, y), f * g_.act(x, g));
    }
  }
  return out;
}

QW NilHecke::one() const { return delta(g_.id()); }

QW NilHecke::delta(const Element& w) const {
  QW out;
  out.emplace(w, RatFun(Poly::constant(g_.dim(), 1)));
  return out;
}

QW NilHecke::delta_gen(int s) const { return delta(g_.gen(s)); }

QW NilHecke::D_gen(int s) const {
  const RatFun inv_alpha = RatFun(Poly::constant(g_.dim(), 1)).divided_by(g_.root(s));
  QW out;
  out.emplace(g_.id(), inv_alpha);
  out.emplace(g_.gen(s), -inv_alpha);
  return out;
}

const QW& NilHecke::D(const Element& w) const {
  auto it = dcache_.find(w);
  if (it != dcache_.end()) return it->second;
  QW val;
  if (w.is_id()) {
    val = one();
  } else {
    const int s = w.word().front();
    val = mul(D_gen(s), D(g_.mul(s, w)));
  }
  return dcache_.emplace(w, std::move(val)).first->second;
}

QW NilHecke::poly(const Poly& f) const {
  QW out;
  add_term(out, g_.id(), RatFun(f));
  return out;
}

std::map<Element, Poly> NilHecke::d_values(const Element& y) const {
  // Peel from the longest remaining support element z: the only D_x with a
  // d_z term and x of maximal length is D_z itself, whose coefficient
  // there is (-1)^l(z) / p_z.
  std::map<Element, Poly> out;
  QW rem = delta(y);
  while (!rem.empty()) {
    const Element z = std::prev(rem.end())->first;
    const RatFun coeff = std::prev(rem.end())->second;
    RatFun dz = coeff * RatFun(g_.inversion_product(z));
    // d(z, y) = (-1)^l(z) a_z with a_z = coeff * (-1)^l(z) p_z, so the
    // signs cancel and d(z, y) = coeff * p_z. It must be a polynomial.
    out.emplace(z, dz.as_poly());
    RatFun a_z = (z.length() % 2 == 0) ? dz : -dz;
    rem = sub(rem, scale(D(z), a_z));
  }
  return out;
}

std::map<Element, Poly> NilHecke::d_values_subwords(const Element& y) const {
  const std::vector<int>& word = y.word();
  const std::vector<Poly> beta = g_.prefix_roots(word);
  std::map<Element, Poly> out;
  for (const Element& x : g_.interval(y)) {
    Poly total = Poly::zero(g_.dim());
    for (const auto& bits : g_.subexpressions(word, x)) {
      int weight = 0;
      for (int b : bits) weight += b;
      if (weight != x.length()) continue;  // only reduced subwords count
      Poly prod = Poly::constant(g_.dim(), 1);
      for (size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) prod = prod * beta[j];
      total += prod;
    }
    if (!total.is_zero()) out.emplace(x, total);
  }
  return out;
}

QW NilHecke::pieri(const Element& w, const Poly& lambda) const {
  QW out = scale(D(w), RatFun(g_.act(w, lambda)));
  const QVec lam = lambda.linear_coeffs();
  for (const Element& v : g_.cocovers(w)) {
    const Element t = g_.mul(g_.inv(v), w);  // w = v t with t a reflection
    const QVec cr = g_.reflection_coroot(t);
    Rational c = 0;
    for (int i = 0; i < g_.dim(); ++i) c += cr(i) * lam(i);
    if (c == 0) continue;
    QW term = scale(D(v), RatFun(Poly::constant(g_.dim(), c)));
    out = add(out, term);
  }
  return out;
}

}  // namespace gkm
