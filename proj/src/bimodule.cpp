// Bott–Samelson bimodules: string calculus, κ-decomposition, Z-action.

#include "gkm/bimodule.hpp"

#include <algorithm>

#include "gkm/error.hpp"
#include "gkm/linalg.hpp"

namespace gkm {

namespace {

std::vector<int> prepend(int bit, const std::vector<int>& suffix) {
  std::vector<int> out;
  out.reserve(suffix.size() + 1);
  out.push_back(bit);
  out.insert(out.end(), suffix.begin(), suffix.end());
  return out;
}

template <typename X>
void accum(std::map<std::vector<int>, X>& m, const std::vector<int>& key,
           const X& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = m.emplace(key, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) m.erase(it);
  }
}

// All exponent vectors over nvars summing to total.
void monomials_rec(int nvars, int pos, int left, Expo& cur,
                   std::vector<Expo>& out) {
  if (pos == nvars - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[pos] = k;
    monomials_rec(nvars, pos + 1, left - k, cur, out);
  }
}

std::vector<Expo> monomials_of_degree(int nvars, int total) {
  std::vector<Expo> out;
  Expo cur(nvars, 0);
  if (nvars == 0) return out;
  monomials_rec(nvars, 0, total, cur, out);
  return out;
}

}  // namespace

BottSamelson::BottSamelson(const Group& g, std::vector<int> word)
    : g_(g), word_(std::move(word)) {
  for (int s : word_)
    if (s < 0 || s >= g_.rank()) fail("Unsupported", "letter out of range");
}

BSElement BottSamelson::basis(const std::vector<int>& bits) const {
  if (static_cast<int>(bits.size()) != length())
    fail("WordMismatch", "bit string length differs from word length");
  BSElement out{word_, {}};
  out.coords.emplace(bits, Poly::constant(g_.dim(), 1));
  return out;
}

int BottSamelson::string_degree(const std::vector<int>& bits) {
  int d = 0;
  for (int b : bits) d += b ? -1 : 1;
  return d;
}

bool BottSamelson::homogeneous_of(const BSElement& b, int d) const {
  for (const auto& [bits, p] : b.coords) {
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) return false;
    if (p.degree() + string_degree(bits) != d) return false;
  }
  return true;
}

BSElement BottSamelson::add(BSElement a, const BSElement& b) {
  if (a.word != b.word) fail("WordMismatch", "adding different words");
  for (const auto& [bits, p] : b.coords) accum(a.coords, bits, p);
  return a;
}

BSElement BottSamelson::sub(BSElement a, const BSElement& b) {
  if (a.word != b.word) fail("WordMismatch", "subtracting different words");
  for (const auto& [bits, p] : b.coords) accum(a.coords, bits, -p);
  return a;
}

BSElement BottSamelson::scale(BSElement a, const Poly& f) {
  if (f.is_zero()) return BSElement{a.word, {}};
  for (auto& [bits, p] : a.coords) p = p * f;
  return a;
}

/*
  The workhorse: move a scalar leftward across the slots of one string
  monomial. Crossing a c_s slot is free; crossing a 1⊗1 slot splits into
  s(f)·c_id − ∂_s(f)·c_s. The pending map is keyed by the suffix of slot
  types already fixed.
*/
BSElement BottSamelson::right_mul(const BSElement& b, const Poly& f) const {
  BSElement out{word_, {}};
  for (const auto& [bits, coeff] : b.coords) {
    std::map<std::vector<int>, Poly> cur;
    cur.emplace(std::vector<int>{}, f);
    for (int i = length() - 1; i >= 0; --i) {
      std::map<std::vector<int>, Poly> next;
      for (const auto& [suf, p] : cur) {
        if (bits[i] == 0) {
          accum(next, prepend(0, suf), p);
        } else {
          accum(next, prepend(1, suf), g_.act(g_.gen(word_[i]), p));
          accum(next, prepend(0, suf), -g_.demazure(word_[i], p));
        }
      }
      cur = std::move(next);
    }
    for (const auto& [res, p] : cur) accum(out.coords, res, coeff * p);
  }
  return out;
}

BSElement BottSamelson::multiply(const BSElement& a, const BSElement& b) const {
  if (a.word != b.word) fail("WordMismatch", "multiplying different words");
  BSElement out{word_, {}};
  Poly one = Poly::constant(g_.dim(), 1);
  for (const auto& [ea, ca] : a.coords) {
    for (const auto& [eb, cb] : b.coords) {
      std::map<std::vector<int>, Poly> cur;
      cur.emplace(std::vector<int>{}, one);
      for (int i = length() - 1; i >= 0; --i) {
        std::map<std::vector<int>, Poly> next;
        for (const auto& [suf, p] : cur) {
          if (ea[i] == 1 && eb[i] == 1) {
            accum(next, prepend(1, suf), g_.act(g_.gen(word_[i]), p));
            accum(next, prepend(0, suf), -g_.demazure(word_[i], p));
          } else if (ea[i] == 0 && eb[i] == 0) {
            accum(next, prepend(0, suf), -(letter_root(i) * p));
          } else {
            accum(next, prepend(0, suf), p);
          }
        }
        cur = std::move(next);
      }
      Poly cc = ca * cb;
      for (const auto& [res, p] : cur) accum(out.coords, res, cc * p);
    }
  }
  return out;
}

Poly BottSamelson::trace(const BSElement& b) const {
  auto it = b.coords.find(std::vector<int>(word_.size(), 0));
  return it == b.coords.end() ? Poly::zero(g_.dim()) : it->second;
}

Poly BottSamelson::iform(const BSElement& a, const BSElement& b) const {
  return trace(multiply(a, b));
}

QBSElement BottSamelson::to_kappa(const BSElement& b) const {
  QBSElement out{word_, {}};
  RatFun one(Poly::constant(g_.dim(), 1));
  for (const auto& [bits, coeff] : b.coords) {
    std::map<std::vector<int>, RatFun> cur;
    cur.emplace(std::vector<int>{}, one);
    for (int i = length() - 1; i >= 0; --i) {
      std::map<std::vector<int>, RatFun> next;
      for (const auto& [suf, r] : cur) {
        if (bits[i] == 0) {
          accum(next, prepend(0, suf), r);
        } else {
          // c_id = (c̃ − c_s)/α, so c_id·r = (s(r)/α)·c̃ − (r/α)·c_s.
          Poly alpha = letter_root(i);
          accum(next, prepend(1, suf),
                g_.act(g_.gen(word_[i]), r).divided_by(alpha));
          accum(next, prepend(0, suf), (-r).divided_by(alpha));
        }
      }
      cur = std::move(next);
    }
    RatFun c(coeff);
    for (const auto& [res, r] : cur) accum(out.coords, res, c * r);
  }
  return out;
}

BSElement BottSamelson::from_kappa(const QBSElement& q) const {
  if (q.word != word_) fail("WordMismatch", "kappa element of different word");
  std::map<std::vector<int>, RatFun> acc;
  Poly one = Poly::constant(g_.dim(), 1);
  for (const auto& [bits, coeff] : q.coords) {
    std::map<std::vector<int>, Poly> cur;
    cur.emplace(std::vector<int>{}, one);
    for (int i = length() - 1; i >= 0; --i) {
      std::map<std::vector<int>, Poly> next;
      for (const auto& [suf, p] : cur) {
        if (bits[i] == 0) {
          accum(next, prepend(0, suf), p);
        } else {
          // c̃·p = s(p)·c̃ = s(p)·(α·c_id + c_s).
          Poly sp = g_.act(g_.gen(word_[i]), p);
          accum(next, prepend(1, suf), letter_root(i) * sp);
          accum(next, prepend(0, suf), sp);
        }
      }
      cur = std::move(next);
    }
    for (const auto& [res, p] : cur) accum(acc, res, coeff * RatFun(p));
  }
  BSElement out{word_, {}};
  for (const auto& [bits, r] : acc) {
    try {
      accum(out.coords, bits, r.as_poly());
    } catch (const Error&) {
      fail("DenominatorNotCleared",
           "kappa coordinates do not recombine integrally");
    }
  }
  return out;
}

Element BottSamelson::kappa_target(const std::vector<int>& bits) const {
  Element x = g_.id();
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) x = g_.mul(x, word_[i]);
  return x;
}

std::set<Element> BottSamelson::support(const BSElement& b) const {
  // The x-component collects every κ-monomial with target x; it is nonzero
  // as soon as any one of those coordinates is.
  std::set<Element> out;
  for (const auto& [bits, r] : to_kappa(b).coords)
    if (!r.is_zero()) out.insert(kappa_target(bits));
  return out;
}

Element BottSamelson::demazure_product() const {
  Element x = g_.id();
  for (int s : word_) {
    Element xs = g_.mul(x, s);
    if (xs.length() > x.length()) x = xs;
  }
  return x;
}

BSElement BottSamelson::z_act(const Section& z, const BSElement& b) const {
  QBSElement q = to_kappa(b);
  QBSElement scaled{word_, {}};
  for (const auto& [bits, r] : q.coords) {
    auto it = z.find(kappa_target(bits));
    if (it == z.end()) continue;
    accum(scaled.coords, bits, r * RatFun(it->second));
  }
  return from_kappa(scaled);
}

std::vector<BSElement> BottSamelson::degree_basis(int d) const {
  std::vector<BSElement> out;
  int n = length();
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> bits(n);
    for (int j = 0; j < n; ++j) bits[j] = (mask >> (n - 1 - j)) & 1;
    int td = d - string_degree(bits);
    if (td < 0 || td % 2) continue;
    for (const Expo& e : monomials_of_degree(g_.dim(), td / 2)) {
      Poly m = Poly::zero(g_.dim());
      m.add_term(e, 1);
      out.push_back(scale(basis(bits), m));
    }
  }
  return out;
}

std::vector<BSElement> BottSamelson::gamma(const std::set<Element>& A,
                                           int d) const {
  std::vector<BSElement> bas = degree_basis(d);
  if (bas.empty()) return {};
  int ncols = static_cast<int>(bas.size());
  std::vector<QBSElement> kap;
  kap.reserve(bas.size());
  for (const BSElement& b : bas) kap.push_back(to_kappa(b));

  int n = length();
  std::vector<QVec> rows;
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> bits(n);
    for (int j = 0; j < n; ++j) bits[j] = (mask >> (n - 1 - j)) & 1;
    if (A.count(kappa_target(bits))) continue;

    // Clear the coordinate at this κ-monomial to a common denominator and
    // demand that every monomial of the numerator vanish.
    std::map<Poly, int> denom;
    for (const QBSElement& q : kap) {
      auto it = q.coords.find(bits);
      if (it == q.coords.end()) continue;
      for (const auto& [fac, m] : it->second.denominator_factors()) {
        int& cur = denom[fac];
        cur = std::max(cur, m);
      }
    }
    Poly big = Poly::constant(g_.dim(), 1);
    for (const auto& [fac, m] : denom)
      for (int k = 0; k < m; ++k) big = big * fac;

    std::vector<Poly> nums(bas.size(), Poly::zero(g_.dim()));
    std::set<Expo> expos;
    for (size_t i = 0; i < kap.size(); ++i) {
      auto it = kap[i].coords.find(bits);
      if (it == kap[i].coords.end()) continue;
      nums[i] = (it->second * RatFun(big)).as_poly();
      for (const auto& [e, c] : nums[i].terms()) expos.insert(e);
    }
    for (const Expo& e : expos) {
      QVec row = QVec::Zero(ncols);
      for (int i = 0; i < ncols; ++i) row(i) = nums[i].coeff(e);
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return bas;

  QMat m(static_cast<int>(rows.size()), ncols);
  for (size_t r = 0; r < rows.size(); ++r) m.row(static_cast<int>(r)) = rows[r];
  QMat ker = kernel_basis(m);
  std::vector<BSElement> out;
  for (int j = 0; j < ker.cols(); ++j) {
    BSElement v = zero();
    for (int i = 0; i < ncols; ++i) {
      if (ker(i, j) == 0) continue;
      v = add(std::move(v), scale(bas[i], Poly::constant(g_.dim(), ker(i, j))));
    }
    out.push_back(std::move(v));
  }
  return out;
}

HwBasis BottSamelson::hw_basis(const StructureAlgebra& sa) const {
  HwBasis out;
  out.word = word_;
  out.reduced = g_.is_reduced(word_);
  std::vector<Element> omega = g_.interval(demazure_product());
  BSElement unit = one_tensor();
  for (const Element& x : omega)
    out.elements.emplace(x, z_act(sa.schubert(x, omega), unit));
  return out;
}

std::map<Element, Poly> BottSamelson::pieri(const HwBasis& hw, const Element& x,
                                            const Poly& lambda) const {
  BSElement r = right_mul(hw.elements.at(x), lambda);
  // The P basis is dual to the canonical string monomials under the
  // intersection form, and the form is linear over left coefficients, so
  // pairing peels the expansion off directly; the residual check keeps the
  // duality assumption honest.
  std::map<Element, Poly> out;
  BSElement residual = r;
  for (const auto& [y, py] : hw.elements) {
    Poly c = iform(r, basis(g_.canonical_subexpression(y, word_)));
    if (c.is_zero()) continue;
    out.emplace(y, c);
    residual = sub(std::move(residual), scale(py, c));
  }
  if (!residual.is_zero())
    fail("NotInHw", "product leaves the span of the P basis");
  Poly lead = g_.act(x, lambda);
  auto self = out.find(x);
  if (self == out.end() || self->second != lead)
    fail("PieriViolation", "leading coefficient is not x(lambda)");
  for (const auto& [y, c] : out) {
    if (y == x) continue;
    if (y.length() != x.length() + 1 || !g_.bruhat_leq(x, y))
      fail("PieriViolation", "support outside the covers of x");
  }
  return out;
}

}  // namespace gkm
