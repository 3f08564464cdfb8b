#include "gkm/lightleaves.hpp"

#include <algorithm>

#include "gkm/error.hpp"

namespace gkm {

namespace {

Poly one_poly(int nvars) { return Poly::constant(nvars, 1); }

BSElement neg(BSElement b, int nvars) {
  return BottSamelson::scale(std::move(b), Poly::constant(nvars, -1));
}

// Append a string bit to every coordinate (extend the word by one letter).
BSElement append_bit(const BSElement& b, std::vector<int> word, int bit) {
  BSElement out{std::move(word), {}};
  for (const auto& [key, p] : b.coords) {
    std::vector<int> k = key;
    k.push_back(bit);
    out.coords.emplace(std::move(k), p);
  }
  return out;
}

// Split off the last string bit: out[0] and out[1] live over the shortened
// word and collect the coordinates whose last bit was 0 resp. 1.
std::array<BSElement, 2> split_last(const BSElement& b,
                                    const std::vector<int>& prefix_word) {
  std::array<BSElement, 2> out{BSElement{prefix_word, {}},
                               BSElement{prefix_word, {}}};
  for (const auto& [key, p] : b.coords) {
    std::vector<int> k(key.begin(), key.end() - 1);
    out[key.back()].coords.emplace(std::move(k), p);
  }
  return out;
}

// Swap two adjacent string bits (the factor-swap isomorphism for a 2-bond).
BSElement swap_bits(const BSElement& b, std::vector<int> word, int p) {
  BSElement out{std::move(word), {}};
  for (const auto& [key, c] : b.coords) {
    std::vector<int> k = key;
    std::swap(k[p], k[p + 1]);
    out.coords.emplace(std::move(k), c);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Poly>> unimodular_inverse(
    std::vector<std::vector<Poly>> a, int nvars) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<Poly>> inv(n, std::vector<Poly>(n, Poly::zero(nvars)));
  for (int i = 0; i < n; ++i) inv[i][i] = one_poly(nvars);
  const Expo zero_expo(nvars, 0);
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int r = col; r < n; ++r)
      if (!a[r][col].is_zero() && a[r][col].degree() == 0) {
        pr = r;
        break;
      }
    if (pr < 0) fail("GramNotUnit", "no scalar pivot left; determinant is not a unit");
    std::swap(a[pr], a[col]);
    std::swap(inv[pr], inv[col]);
    Rational scale = Rational(1) / a[col][col].coeff(zero_expo);
    for (int k = 0; k < n; ++k) {
      a[col][k] *= scale;
      inv[col][k] *= scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Poly f = a[r][col];
      for (int k = 0; k < n; ++k) {
        a[r][k] -= f * a[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

LightLeaves::LightLeaves(const Group& g, std::vector<int> word, Policy policy)
    : g_(g), bs_(g, std::move(word)), policy_(policy) {
  const auto& w = bs_.word();
  const int n = bs_.length();

  full_ = true;
  for (int a : w)
    for (int b : w) {
      if (a == b) continue;
      int m = g_.realization().cox[a][b];
      bool ok = m == 0 || (m == 2 && g_.realization().pairing(a, b) == 0 &&
                           g_.realization().pairing(b, a) == 0);
      if (!ok) full_ = false;
    }

  // Gram matrix of the string basis and its (polynomial) inverse.
  const long N = 1L << n;
  auto bits_of = [&](long mask) {
    std::vector<int> bits(n);
    for (int j = 0; j < n; ++j) bits[j] = (mask >> (n - 1 - j)) & 1;
    return bits;
  };
  std::vector<BSElement> strings;
  strings.reserve(N);
  for (long m = 0; m < N; ++m) strings.push_back(bs_.basis(bits_of(m)));
  std::vector<std::vector<Poly>> gram(N, std::vector<Poly>(N, Poly::zero(g_.dim())));
  for (long i = 0; i < N; ++i)
    for (long j = i; j < N; ++j) {
      gram[i][j] = bs_.iform(strings[i], strings[j]);
      gram[j][i] = gram[i][j];
    }
  std::vector<std::vector<Poly>> gram_inv = unimodular_inverse(gram, g_.dim());

  if (full_) {
    for (long m = 0; m < N; ++m) {
      leaves_.push_back(build_leaf(bits_of(m), gram_inv));
      index_.emplace(leaves_.back().bits, static_cast<int>(leaves_.size()) - 1);
    }
    // Dual family: invert the leaf Gram ⟨ll_e, ll_f⟩ = Lᵀ G L.
    std::vector<std::vector<Poly>> lcoord(N, std::vector<Poly>(N, Poly::zero(g_.dim())));
    for (long f = 0; f < N; ++f)
      for (long i = 0; i < N; ++i) {
        auto it = leaves_[f].element.coords.find(strings[i].coords.begin()->first);
        if (it != leaves_[f].element.coords.end()) lcoord[i][f] = it->second;
      }
    std::vector<std::vector<Poly>> gl(N, std::vector<Poly>(N, Poly::zero(g_.dim())));
    for (long i = 0; i < N; ++i)
      for (long f = 0; f < N; ++f) {
        Poly acc = Poly::zero(g_.dim());
        for (long j = 0; j < N; ++j)
          if (!gram[i][j].is_zero() && !lcoord[j][f].is_zero())
            acc += gram[i][j] * lcoord[j][f];
        gl[i][f] = std::move(acc);
      }
    std::vector<std::vector<Poly>> lgram(N, std::vector<Poly>(N, Poly::zero(g_.dim())));
    for (long e = 0; e < N; ++e)
      for (long f = 0; f < N; ++f) {
        Poly acc = Poly::zero(g_.dim());
        for (long i = 0; i < N; ++i)
          if (!lcoord[i][e].is_zero() && !gl[i][f].is_zero())
            acc += lcoord[i][e] * gl[i][f];
        lgram[e][f] = std::move(acc);
      }
    std::vector<std::vector<Poly>> linv = unimodular_inverse(std::move(lgram), g_.dim());
    duals_.reserve(N);
    for (long e = 0; e < N; ++e) {
      BSElement d = bs_.zero();
      for (long f = 0; f < N; ++f)
        if (!linv[e][f].is_zero())
          d = BottSamelson::add(std::move(d),
                                BottSamelson::scale(leaves_[f].element, linv[e][f]));
      duals_.push_back(std::move(d));
    }
  } else {
    // General bonds: the canonical (all-U) leaves never need a rewrite, so
    // the same chain still produces them.
    for (const Element& x : g_.interval(bs_.demazure_product())) {
      leaves_.push_back(build_leaf(g_.canonical_subexpression(x, w), gram_inv));
      index_.emplace(leaves_.back().bits, static_cast<int>(leaves_.size()) - 1);
    }
  }
}

LightLeaf LightLeaves::build_leaf(
    const std::vector<int>& bits,
    const std::vector<std::vector<Poly>>& gram_inv) const {
  const auto& w = bs_.word();
  const int n = bs_.length();
  const int nvars = g_.dim();

  LightLeaf out;
  out.bits = bits;

  Element x = g_.id();
  std::vector<int> u;
  std::vector<BSElement> images{BSElement{{}, {{{}, one_poly(nvars)}}}};

  auto apply_swap = [&](int p) {
    int a = u[p], b = u[p + 1];
    if (g_.realization().cox[a][b] != 2 || g_.realization().pairing(a, b) != 0 ||
        g_.realization().pairing(b, a) != 0)
      fail("Unsupported", "factor swap needs a 2-bond with vanishing pairings");
    std::swap(u[p], u[p + 1]);
    for (BSElement& img : images) img = swap_bits(img, u, p);
  };

  for (int i = 0; i < n; ++i) {
    const int s = w[i];
    const Poly alpha = g_.root(s);
    const Element xs = g_.mul(x, s);
    const bool up = xs.length() > x.length();
    out.decorations += up ? 'U' : 'D';
    if (bits[i] == 0) out.defect += up ? 1 : -1;

    std::vector<BSElement> next(images.size() * 2);
    if (up) {
      if (bits[i] == 1) {
        std::vector<int> nu = u;
        nu.push_back(s);
        for (size_t c = 0; c < images.size(); ++c)
          for (int b = 0; b < 2; ++b)
            next[2 * c + b] = append_bit(images[c], nu, b);
        u = std::move(nu);
      } else {
        BottSamelson bu(g_, u);
        for (size_t c = 0; c < images.size(); ++c) {
          next[2 * c + 1] = images[c];
          next[2 * c + 0] = neg(bu.right_mul(images[c], alpha), nvars);
        }
      }
    } else {
      // Rewrite u to end with s: bubble its last occurrence rightwards.
      int k = -1;
      for (int p = static_cast<int>(u.size()) - 1; p >= 0; --p)
        if (u[p] == s) {
          k = p;
          break;
        }
      if (k < 0) fail("Unsupported", "descent letter missing from the reduced word");
      for (int p = k; p + 1 < static_cast<int>(u.size()); ++p) apply_swap(p);

      std::vector<int> y(u.begin(), u.end() - 1);
      if (bits[i] == 0) {
        for (size_t c = 0; c < images.size(); ++c) {
          auto ab = split_last(images[c], y);
          // merge: (1,1) dies, (1,0) and (0,1) land on bit 1, (0,0) on bit 0,
          // all with a sign.
          next[2 * c + 1] = neg(append_bit(ab[0], u, 1), nvars);
          next[2 * c + 0] =
              BottSamelson::sub(neg(append_bit(ab[1], u, 1), nvars),
                                append_bit(ab[0], u, 0));
        }
      } else {
        BottSamelson by(g_, y);
        for (size_t c = 0; c < images.size(); ++c) {
          auto ab = split_last(images[c], y);
          // cap: (1,1) dies, (1,0) and (0,1) give −1, (0,0) gives α_s acting
          // from the right.
          next[2 * c + 1] = neg(ab[0], nvars);
          next[2 * c + 0] =
              BottSamelson::sub(by.right_mul(ab[0], alpha), ab[1]);
        }
        u = std::move(y);
      }
    }
    if (bits[i] == 1) x = xs;
    images = std::move(next);

    if (policy_ == Policy::eager) {
      // Keep the maintained word sorted within its commutation class.
      bool moved = true;
      while (moved) {
        moved = false;
        for (int p = 0; p + 1 < static_cast<int>(u.size()); ++p)
          if (u[p] > u[p + 1] && g_.realization().cox[u[p]][u[p + 1]] == 2 &&
              g_.realization().pairing(u[p], u[p + 1]) == 0 &&
              g_.realization().pairing(u[p + 1], u[p]) == 0) {
            apply_swap(p);
            moved = true;
          }
      }
    }
  }

  out.target = x;
  out.target_word = u;
  out.canonical = out.decorations.find('D') == std::string::npos;
  out.unit_image = images.back();

  // ⟨ll, c_b⟩ = Tr(LL(c_b)); solve against the Gram matrix of BS(w).
  const long N = 1L << n;
  const std::vector<int> zeros(u.size(), 0);
  std::vector<Poly> t;
  t.reserve(N);
  for (long m = 0; m < N; ++m) {
    auto it = images[m].coords.find(zeros);
    t.push_back(it == images[m].coords.end() ? Poly::zero(nvars) : it->second);
  }
  out.element = bs_.zero();
  for (long i = 0; i < N; ++i) {
    Poly v = Poly::zero(nvars);
    for (long j = 0; j < N; ++j)
      if (!gram_inv[i][j].is_zero() && !t[j].is_zero()) v += gram_inv[i][j] * t[j];
    if (!v.is_zero()) {
      std::vector<int> key(n);
      for (int j = 0; j < n; ++j) key[j] = (i >> (n - 1 - j)) & 1;
      out.element.coords.emplace(std::move(key), std::move(v));
    }
  }
  return out;
}

void LightLeaves::require_full(const char* what) const {
  if (!full_)
    fail("Unsupported", std::string(what) +
                            " needs every bond among the word's letters in {2, infinity}");
}

const LightLeaf& LightLeaves::leaf(const std::vector<int>& bits) const {
  auto it = index_.find(bits);
  if (it == index_.end()) {
    if (!full_)
      fail("Unsupported",
           "only canonical light leaves exist for general bonds");
    fail("Unsupported", "no such subexpression");
  }
  return leaves_[it->second];
}

const std::vector<BSElement>& LightLeaves::dual_leaves() const {
  require_full("the dual light-leaf family");
  return duals_;
}

const BSElement& LightLeaves::dual_leaf(const std::vector<int>& bits) const {
  require_full("the dual light-leaf family");
  return duals_[index_.at(bits)];
}

std::vector<BSElement> LightLeaves::defective() const {
  require_full("the defective submodule");
  std::vector<BSElement> out;
  for (const LightLeaf& l : leaves_)
    if (!l.canonical) out.push_back(l.element);
  return out;
}

bool LightLeaves::orthogonal_check(const StructureAlgebra& sa) const {
  require_full("the orthogonality check");
  const std::vector<Element> omega = g_.interval(bs_.demazure_product());
  long canonical_count = 0;
  for (const LightLeaf& l : leaves_)
    if (l.canonical) ++canonical_count;
  if (canonical_count != static_cast<long>(omega.size())) return false;
  if (static_cast<long>(leaves_.size()) != (1L << bs_.length())) return false;

  HwBasis hw = bs_.hw_basis(sa);
  for (size_t e = 0; e < leaves_.size(); ++e)
    if (leaves_[e].canonical &&
        !(duals_[e] == hw.elements.at(leaves_[e].target)))
      return false;
  for (const Element& x : omega)
    for (const LightLeaf& l : leaves_)
      if (!l.canonical && !bs_.iform(hw.elements.at(x), l.element).is_zero())
        return false;
  return true;
}

std::vector<BSElement> LightLeaves::gamma_leq(const Element& x) const {
  require_full("the light-leaf basis of a support filtration step");
  std::vector<BSElement> out;
  for (const LightLeaf& l : leaves_)
    if (g_.bruhat_leq(l.target, x)) out.push_back(l.element);
  return out;
}

std::vector<BSElement> LightLeaves::gamma_geq(const Element& x) const {
  require_full("the dual light-leaf basis of a support filtration step");
  std::vector<BSElement> out;
  for (size_t e = 0; e < leaves_.size(); ++e)
    if (g_.bruhat_leq(x, leaves_[e].target)) out.push_back(duals_[e]);
  return out;
}

}  // namespace gkm
