#include "gkm/smod.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "gkm/error.hpp"
#include "gkm/structure.hpp"

namespace gkm {

namespace {

std::vector<int> mask_bits(long mask, int n) {
  std::vector<int> bits(n);
  for (int j = 0; j < n; ++j) bits[j] = (mask >> (n - 1 - j)) & 1;
  return bits;
}

bool vec_zero(const QVec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool mat_eq(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

QVec flatten(const QMat& a) {
  QVec v(a.rows() * a.cols());
  int k = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v(k++) = a(i, j);
  return v;
}

Rational trace_of_product(const QMat& a, const QMat& b) {
  Rational t = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

/*
  Dense univariate polynomials over Q, lowest degree first, used only for
  the minimal-polynomial splitting below. Trailing zeros are stripped.
*/
using UPoly = std::vector<Rational>;

void strip(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

UPoly upoly_sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  strip(a);
  return a;
}

// a = q*b + r with deg r < deg b.
std::pair<UPoly, UPoly> upoly_divmod(UPoly a, const UPoly& b) {
  UPoly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    strip(a);
  }
  strip(q);
  return {q, a};
}

// Monic gcd g with u*a + v*b = g.
UPoly upoly_gcd_ext(UPoly a, UPoly b, UPoly& u, UPoly& v) {
  UPoly u0{Rational(1)}, v0, u1, v1{Rational(1)};
  while (!b.empty()) {
    auto [q, r] = upoly_divmod(a, b);
    UPoly u2 = upoly_sub(u0, upoly_mul(q, u1));
    UPoly v2 = upoly_sub(v0, upoly_mul(q, v1));
    a = b;
    b = r;
    u0 = u1;
    v0 = v1;
    u1 = u2;
    v1 = v2;
  }
  if (!a.empty() && a.back() != 1) {
    Rational lead = a.back();
    for (Rational& c : a) c /= lead;
    for (Rational& c : u0) c /= lead;
    for (Rational& c : v0) c /= lead;
  }
  u = u0;
  v = v0;
  return a;
}

QMat upoly_eval(const UPoly& p, const QMat& x) {
  const int n = static_cast<int>(x.rows());
  QMat r = QMat::Zero(n, n);
  for (size_t k = p.size(); k-- > 0;) {
    r = r * x;
    for (int i = 0; i < n; ++i) r(i, i) += p[k];
  }
  return r;
}

Rational upoly_eval_at(const UPoly& p, const Rational& c) {
  Rational r = 0;
  for (size_t k = p.size(); k-- > 0;) r = r * c + p[k];
  return r;
}

// Minimal polynomial of a square rational matrix (Krylov on powers).
UPoly minpoly(const QMat& x) {
  const int n = static_cast<int>(x.rows());
  SpanBuilder sb(n * n, /*track_coords=*/true);
  QMat cur = QMat::Identity(n, n);
  for (int k = 0;; ++k) {
    if (!sb.add(flatten(cur))) {
      QVec c = *sb.coords(flatten(cur));
      UPoly mu(k + 1, Rational(0));
      for (int i = 0; i < k; ++i) mu[i] = -c(i);
      mu[k] = 1;
      return mu;
    }
    cur = cur * x;
  }
}

std::vector<long long> small_divisors(const mpz_class& z) {
  std::vector<long long> out;
  mpz_class a = abs(z);
  if (a == 0 || !a.fits_slong_p()) return out;
  long long v = a.get_si();
  for (long long d = 1; d * d <= v && d <= 1000000; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  return out;
}

// All rational roots of p (complete whenever the cleared coefficients fit
// in machine words; otherwise the search is allowed to come back short).
std::vector<Rational> rational_roots(UPoly p) {
  strip(p);
  std::vector<Rational> roots;
  size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low >= p.size()) return roots;
  UPoly q(p.begin() + low, p.end());
  if (q.size() < 2) return roots;
  mpz_class den_lcm = 1;
  for (const Rational& c : q) den_lcm = lcm(den_lcm, c.get_den());
  mpz_class a0 = Rational(q.front() * den_lcm).get_num();
  mpz_class ak = Rational(q.back() * den_lcm).get_num();
  std::set<Rational> found;
  for (long long num : small_divisors(a0))
    for (long long den : small_divisors(ak))
      for (int sign : {1, -1}) {
        Rational c(static_cast<long>(sign * num), static_cast<long>(den));
        c.canonicalize();
        if (!found.count(c) && upoly_eval_at(q, c) == 0) found.insert(c);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

/*
  Fitting's lemma: if the minimal polynomial of x factors as t^a h(t) with
  h(0) ≠ 0 and both factors proper, then u(x)x^a (from a Bezout identity
  u t^a + w h = 1) is the projection onto the image of x^a along its
  kernel — an exact nontrivial idempotent commuting with everything x
  commutes with.
*/
std::optional<QMat> fitting_idempotent(const QMat& x) {
  UPoly mu = minpoly(x);
  size_t a = 0;
  while (a < mu.size() && mu[a] == 0) ++a;
  if (a == 0 || a + 1 >= mu.size()) return std::nullopt;
  UPoly h(mu.begin() + a, mu.end());
  UPoly ta(a + 1, Rational(0));
  ta[a] = 1;
  UPoly u, w;
  UPoly gcd = upoly_gcd_ext(ta, h, u, w);
  if (gcd.size() != 1) return std::nullopt;
  const int n = static_cast<int>(x.rows());
  QMat xa = QMat::Identity(n, n);
  for (size_t k = 0; k < a; ++k) xa = xa * x;
  QMat e = upoly_eval(u, x) * xa;
  if (!mat_eq(e * e, e)) return std::nullopt;
  if (mat_eq(e, QMat::Zero(n, n)) || mat_eq(e, QMat::Identity(n, n)))
    return std::nullopt;
  return e;
}

// Columns: a basis of the common kernel of the operators, in the
// coordinates of the degree-d block of m.
QMat common_kernel_block(const SoergelModule& m,
                         const std::vector<const QMat*>& ops, int d) {
  std::vector<int> idx;
  for (int i = 0; i < m.dim(); ++i)
    if (m.degrees[i] == d) idx.push_back(i);
  QMat basis = QMat::Identity(idx.size(), idx.size());
  for (const QMat* op : ops) {
    if (basis.cols() == 0) break;
    QMat restricted(m.dim(), basis.cols());
    for (int c = 0; c < basis.cols(); ++c) {
      QVec col = QVec::Zero(m.dim());
      for (size_t r = 0; r < idx.size(); ++r)
        for (int k = 0; k < m.dim(); ++k)
          col(k) += (*op)(k, idx[r]) * basis(r, c);
      restricted.col(c) = col;
    }
    basis = basis * kernel_basis(restricted);
  }
  return basis;
}

// Dimension of the span of bimodule elements (over the monomials that
// actually occur).
int span_dim(const std::vector<BSElement>& els) {
  std::map<std::pair<std::vector<int>, Expo>, int> idx;
  for (const BSElement& b : els)
    for (const auto& [bits, p] : b.coords)
      for (const auto& [expo, c] : p.terms())
        idx.emplace(std::make_pair(bits, expo), static_cast<int>(idx.size()));
  if (idx.empty()) return 0;
  SpanBuilder sb(static_cast<int>(idx.size()));
  int dim = 0;
  for (const BSElement& b : els) {
    QVec v = QVec::Zero(idx.size());
    for (const auto& [bits, p] : b.coords)
      for (const auto& [expo, c] : p.terms()) v(idx.at({bits, expo})) = c;
    dim += sb.add(v);
  }
  return dim;
}

}  // namespace

QVec bar_element(const BottSamelson& bs, const BSElement& b) {
  const int n = bs.length();
  QVec v = QVec::Zero(1L << n);
  const Expo zero(bs.group().dim(), 0);
  for (const auto& [bits, p] : b.coords) {
    long mask = 0;
    for (int j = 0; j < n; ++j) mask = (mask << 1) | bits[j];
    v(mask) = p.coeff(zero);
  }
  return v;
}

namespace {

Rational value_at(const Poly& p, const std::vector<Rational>& c) {
  Rational out(0);
  for (const auto& [e, coeff] : p.terms()) {
    Rational t = coeff;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= c[i];
    out += t;
  }
  return out;
}

}  // namespace

SoergelModule bar_bs(const Group& g, const std::vector<int>& word,
                     const StructureAlgebra& sa) {
  BottSamelson bs(g, word);
  const int n = bs.length();
  const long N = 1L << n;

  SoergelModule m;
  m.degrees.reserve(N);
  m.names.reserve(N);
  std::vector<BSElement> strings;
  strings.reserve(N);
  for (long mask = 0; mask < N; ++mask) {
    std::vector<int> bits = mask_bits(mask, n);
    strings.push_back(bs.basis(bits));
    m.degrees.push_back(BottSamelson::string_degree(bits));
    std::string name = "c[";
    for (int b : bits) name += char('0' + b);
    name += "]";
    m.names.push_back(std::move(name));
  }

  // The change of basis between strings and the κ-decomposition, fixed by
  // the word: K has the κ-coordinates of each string (rational functions),
  // W the string coordinates of each κ-unit (polynomials; that direction
  // never divides).
  std::vector<std::map<std::vector<int>, RatFun>> kappa(N);
  for (long mask = 0; mask < N; ++mask)
    kappa[mask] = bs.to_kappa(strings[mask]).coords;

  // A generic rational point avoiding every denominator.
  std::vector<Rational> c(g.dim());
  {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<long> draw(1, 1L << 20);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 64) fail("EvaluationPointNotFound",
                              "no generic point after 64 draws");
      for (int i = 0; i < g.dim(); ++i) c[i] = Rational(draw(rng));
      bool ok = true;
      for (long mask = 0; mask < N && ok; ++mask)
        for (const auto& [bits, r] : kappa[mask]) {
          for (const auto& [f, mult] : r.denominator_factors())
            if (value_at(f, c) == 0) { ok = false; break; }
          if (!ok) break;
        }
      if (ok) break;
    }
  }

  // Fused evaluated transition: for each κ-pattern b, the list of
  // (string row, string column, K·W value), bucketed by the degree jump
  // row − column. A graded operator acting through the κ-components with
  // value z_b contributes Σ K[b][col]·W[b][row]·z_b to the (row, col)
  // entry; the entry is the constant term of a homogeneous polynomial, so
  // it survives exactly when the degree jump matches the operator degree,
  // and then equals its value at c.
  struct Fused { long row, col; Rational kw; };
  std::vector<std::map<int, std::vector<Fused>>> fused(N);
  std::vector<Element> target(N);
  for (long b = 0; b < N; ++b) {
    std::vector<int> bbits = mask_bits(b, n);
    target[b] = bs.kappa_target(bbits);
    QBSElement unit{bs.word(), {}};
    unit.coords.emplace(bbits, RatFun(Poly::constant(g.dim(), 1)));
    BSElement w_of_b = bs.from_kappa(unit);
    std::vector<std::pair<long, Rational>> wrow;
    for (const auto& [rbits, p] : w_of_b.coords) {
      long row = 0;
      for (int j = 0; j < n; ++j) row = (row << 1) | rbits[j];
      wrow.emplace_back(row, value_at(p, c));
    }
    for (long mask = 0; mask < N; ++mask) {
      auto it = kappa[mask].find(bbits);
      if (it == kappa[mask].end() || it->second.is_zero()) continue;
      Rational num = value_at(it->second.numerator(), c);
      Rational den(1);
      for (const auto& [f, mult] : it->second.denominator_factors()) {
        Rational fv = value_at(f, c);
        for (int k = 0; k < mult; ++k) den *= fv;
      }
      Rational kv = num / den;
      for (const auto& [row, wv] : wrow) {
        if (kv == 0 || wv == 0) continue;
        int jump = m.degrees[row] - m.degrees[mask];
        fused[b][jump].push_back(Fused{row, mask, kv * wv});
      }
    }
  }

  std::vector<Element> omega = g.interval(bs.demazure_product());
  for (const Element& x : omega) {
    const int deg = 2 * x.length();
    QMat a = QMat::Zero(N, N);
    for (long b = 0; b < N; ++b) {
      auto it = fused[b].find(deg);
      if (it == fused[b].end()) continue;
      Rational zv = value_at(sa.d(x, target[b]), c);
      if (zv == 0) continue;
      for (const Fused& f : it->second) a(f.row, f.col) += f.kw * zv;
    }
    m.p_act.emplace(x, std::move(a));
  }
  for (int i = 0; i < g.dim(); ++i) {
    Poly xi = Poly::variable(g.dim(), i);
    QMat a = QMat::Zero(N, N);
    for (long b = 0; b < N; ++b) {
      auto it = fused[b].find(2);
      if (it == fused[b].end()) continue;
      Rational zv = value_at(g.act(target[b], xi), c);
      if (zv == 0) continue;
      for (const Fused& f : it->second) a(f.row, f.col) += f.kw * zv;
    }
    m.v_act.push_back(std::move(a));
  }
  return m;
}

SoergelModule bar_bs(const Group& g, const std::vector<int>& word) {
  StructureAlgebra sa(g);
  return bar_bs(g, word, sa);
}

SoergelModule trivial_module(const Group& g, std::vector<int> degrees) {
  SoergelModule m;
  const int n = static_cast<int>(degrees.size());
  m.degrees = std::move(degrees);
  for (int d : m.degrees) m.names.push_back("k(" + std::to_string(d) + ")");
  m.p_act.emplace(g.id(), QMat::Identity(n, n));
  for (int i = 0; i < g.dim(); ++i) m.v_act.push_back(QMat::Zero(n, n));
  return m;
}

SoergelModule direct_sum(const SoergelModule& a, const SoergelModule& b) {
  const int na = a.dim(), nb = b.dim();
  SoergelModule m;
  m.degrees = a.degrees;
  m.degrees.insert(m.degrees.end(), b.degrees.begin(), b.degrees.end());
  m.names = a.names;
  for (const std::string& s : b.names) m.names.push_back(s + "'");

  auto block = [&](const QMat* ba, const QMat* bb) {
    QMat c = QMat::Zero(na + nb, na + nb);
    if (ba) c.topLeftCorner(na, na) = *ba;
    if (bb) c.bottomRightCorner(nb, nb) = *bb;
    return c;
  };
  std::set<Element> keys;
  for (const auto& [x, _] : a.p_act) keys.insert(x);
  for (const auto& [x, _] : b.p_act) keys.insert(x);
  for (const Element& x : keys) {
    auto ia = a.p_act.find(x);
    auto ib = b.p_act.find(x);
    m.p_act.emplace(x, block(ia == a.p_act.end() ? nullptr : &ia->second,
                             ib == b.p_act.end() ? nullptr : &ib->second));
  }
  if (a.v_act.size() != b.v_act.size())
    fail("Unsupported", "summands live over different polynomial rings");
  for (size_t i = 0; i < a.v_act.size(); ++i)
    m.v_act.push_back(block(&a.v_act[i], &b.v_act[i]));
  return m;
}

Laurent HomSpace::graded_dim() const {
  Laurent l;
  for (const auto& [d, b] : maps)
    if (!b.empty()) l[d] = static_cast<long long>(b.size());
  return l;
}

HomSpace hom_over(const SoergelModule& m, const SoergelModule& n, ActionSet a) {
  // Constraint pairs (A on M, A on N); absent actions are zero.
  std::vector<std::pair<QMat, QMat>> cons;
  if (a == ActionSet::zbar) {
    std::set<Element> keys;
    for (const auto& [x, _] : m.p_act) keys.insert(x);
    for (const auto& [x, _] : n.p_act) keys.insert(x);
    for (const Element& x : keys) {
      auto im = m.p_act.find(x);
      auto in = n.p_act.find(x);
      cons.emplace_back(
          im == m.p_act.end() ? QMat::Zero(m.dim(), m.dim()) : im->second,
          in == n.p_act.end() ? QMat::Zero(n.dim(), n.dim()) : in->second);
    }
  } else if (a == ActionSet::right_r) {
    if (m.v_act.size() != n.v_act.size())
      fail("Unsupported", "modules live over different polynomial rings");
    for (size_t i = 0; i < m.v_act.size(); ++i)
      cons.emplace_back(m.v_act[i], n.v_act[i]);
  }

  std::set<int> degs;
  for (int dn : n.degrees)
    for (int dm : m.degrees) degs.insert(dn - dm);

  HomSpace out;
  for (int d : degs) {
    // Unknowns: entries phi(i, j) with deg_N(i) = deg_M(j) + d.
    std::map<std::pair<int, int>, int> unknown;
    for (int i = 0; i < n.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        if (n.degrees[i] == m.degrees[j] + d)
          unknown.emplace(std::make_pair(i, j), static_cast<int>(unknown.size()));
    if (unknown.empty()) continue;

    // Rows of (A_N phi - phi A_M) = 0 per constraint, indexed by the
    // target entry (r, jc); built sparsely since the actions mostly vanish.
    std::vector<std::map<int, Rational>> all_rows;
    for (const auto& [am, an] : cons) {
      std::map<std::pair<int, int>, std::map<int, Rational>> cr;
      for (const auto& [ij, u] : unknown) {
        const auto [i, j] = ij;
        for (int r = 0; r < n.dim(); ++r)
          if (an(r, i) != 0) cr[{r, j}][u] += an(r, i);
        for (int jc = 0; jc < m.dim(); ++jc)
          if (am(j, jc) != 0) cr[{i, jc}][u] -= am(j, jc);
      }
      for (auto& [rc, row] : cr) all_rows.push_back(std::move(row));
    }

    QMat sys = QMat::Zero(std::max<size_t>(1, all_rows.size()), unknown.size());
    for (size_t r = 0; r < all_rows.size(); ++r)
      for (const auto& [u, c] : all_rows[r]) sys(r, u) = c;
    QMat ker = kernel_basis(sys);

    std::vector<QMat> maps;
    for (int c = 0; c < ker.cols(); ++c) {
      QMat phi = QMat::Zero(n.dim(), m.dim());
      for (const auto& [ij, u] : unknown) phi(ij.first, ij.second) = ker(u, c);
      maps.push_back(std::move(phi));
    }
    if (!maps.empty()) out.maps.emplace(d, std::move(maps));
  }
  return out;
}

EndReport decomposition_report(const SoergelModule& m, ActionSet a) {
  HomSpace H = hom_over(m, m, a);
  EndReport r;
  auto it = H.maps.find(0);
  const std::vector<QMat> basis = it == H.maps.end() ? std::vector<QMat>{} : it->second;
  r.end0_dim = static_cast<int>(basis.size());
  if (r.end0_dim <= 1) {
    r.indecomposable = true;
    r.semisimple_dim = r.end0_dim;
    return r;
  }

  // Radical via the trace form of the (faithful) concrete representation:
  // in characteristic zero, x is in the radical iff Tr(x y) = 0 for all y.
  const int k = r.end0_dim;
  QMat t(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      t(i, j) = trace_of_product(basis[i], basis[j]);
      t(j, i) = t(i, j);
    }
  r.semisimple_dim = rank_of(t);
  if (r.semisimple_dim == 1) {
    r.indecomposable = true;
    return r;
  }

  // The semisimple quotient has dimension at least two: look for an exact
  // splitting by Fitting's lemma on a few deterministic candidates.
  std::vector<QMat> candidates = basis;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k && candidates.size() < 300; ++j) {
      candidates.push_back(basis[i] + basis[j]);
      candidates.push_back(basis[i] - basis[j]);
    }
  QMat weighted = QMat::Zero(m.dim(), m.dim());
  for (int i = 0; i < k; ++i) weighted += Rational(i + 1) * basis[i];
  candidates.push_back(weighted);

  for (const QMat& x : candidates) {
    if (auto e = fitting_idempotent(x)) {
      r.indecomposable = false;
      r.idempotent = *e;
      return r;
    }
    for (const Rational& c : rational_roots(minpoly(x))) {
      QMat shifted = x;
      for (int i = 0; i < shifted.rows(); ++i) shifted(i, i) -= c;
      if (auto e = fitting_idempotent(shifted)) {
        r.indecomposable = false;
        r.idempotent = *e;
        return r;
      }
    }
  }
  fail("Undecided",
       "the degree-zero endomorphism algebra has a semisimple quotient of "
       "dimension at least two, but no splitting idempotent was found");
}

bool indecomposable_over(const SoergelModule& m, ActionSet a) {
  return decomposition_report(m, a).indecomposable;
}

bool theta_check(const Group& g, const std::vector<int>& word, int dmax) {
  BottSamelson bs(g, word);
  SoergelModule bm = bar_bs(g, word);
  const int n = static_cast<int>(word.size());

  std::vector<const QMat*> pops;
  for (const auto& [x, a] : bm.p_act)
    if (!(x == g.id())) pops.push_back(&a);

  std::map<int, std::vector<BSElement>> gam;
  auto gamma_of = [&](int d) -> const std::vector<BSElement>& {
    auto it = gam.find(d);
    if (it == gam.end())
      it = gam.emplace(d, bs.gamma({g.id()}, d)).first;
    return it->second;
  };

  for (int d = -n; d <= dmax; ++d) {
    const std::vector<BSElement>& gd = gamma_of(d);

    // dim of k⊗Γ in degree d: Γ^d modulo the span of V·Γ^{d-2}.
    std::vector<BSElement> lower;
    for (const BSElement& gamma : gamma_of(d - 2))
      for (int i = 0; i < g.dim(); ++i)
        lower.push_back(
            BottSamelson::scale(gamma, Poly::variable(g.dim(), i)));
    int kdim = static_cast<int>(gd.size()) - span_dim(lower);

    // dim of the image of Γ^d in k⊗BS.
    SpanBuilder img(1 << n);
    for (const BSElement& gamma : gd) img.add(bar_element(bs, gamma));

    // dim of ∩_{x≠id} Ann(P̄_x) in degree d.
    int ann = static_cast<int>(common_kernel_block(bm, pops, d).cols());

    if (kdim != img.dim() || img.dim() != ann) return false;
  }
  return true;
}

std::string UniversalVerdict::to_json() const {
  std::ostringstream os;
  os << "{\"deg\": " << deg << ", \"in_gamma_id\": "
     << (in_gamma_id ? "true" : "false") << ", \"annihilates_Rplus\": "
     << (annihilates_rplus ? "true" : "false") << ", \"kl_coeff\": \""
     << kl_coeff << "\", \"theta_surjective\": "
     << (theta_surjective ? "true" : "false") << "}";
  return os.str();
}

UniversalVerdict counterexample_universal() {
  Group g(preset_realization("universal3"));
  const std::vector<int> word{0, 1, 2, 0, 1, 2};
  BottSamelson bs(g, word);

  // The thirteen signed strings; reversal-symmetric, so the left-to-right
  // reading of the bits is immaterial for the element itself.
  struct Term {
    const char* bits;
    int c;
  };
  static const Term terms[] = {
      {"000011", 1}, {"000101", -1}, {"000110", 1},  {"001010", -1},
      {"001100", 1}, {"010001", -1}, {"010010", -2}, {"011000", 1},
      {"010100", -1}, {"100001", 1}, {"100010", -1}, {"101000", -1},
      {"110000", 1}};
  BSElement b = bs.zero();
  for (const Term& t : terms) {
    std::vector<int> bits;
    for (const char* p = t.bits; *p; ++p) bits.push_back(*p - '0');
    b = BottSamelson::add(
        std::move(b),
        BottSamelson::scale(bs.basis(bits), Poly::constant(g.dim(), t.c)));
  }

  UniversalVerdict v;
  if (!bs.homogeneous_of(b, 2))
    fail("VerificationFailed", "the element is not homogeneous of degree 2");
  v.deg = 2;

  std::vector<BSElement> gamma2 = bs.gamma({g.id()}, 2);
  std::vector<BSElement> with_b = gamma2;
  with_b.push_back(b);
  v.in_gamma_id = (span_dim(with_b) == span_dim(gamma2));
  if (v.in_gamma_id)
    fail("VerificationFailed",
         "the element lies among the degree-2 sections supported at the "
         "identity");

  v.annihilates_rplus = true;
  for (int i = 0; i < g.dim(); ++i)
    if (!vec_zero(bar_element(bs, bs.right_mul(b, Poly::variable(g.dim(), i)))))
      v.annihilates_rplus = false;
  if (!v.annihilates_rplus)
    fail("VerificationFailed", "the class of b does not annihilate R_+");

  Hecke he(g);
  Element w = g.id();
  for (int s : word) w = g.mul(w, s);
  const Hecke::Elt& bw = he.canonical(w);
  Laurent coeff;
  if (auto it = bw.find(g.id()); it != bw.end()) coeff = it->second;
  v.kl_coeff = laurent_str(coeff);
  v.kl_matches_reference = (coeff == Laurent{{4, 1}, {6, 1}});

  // Right-module maps from k versus maps coming from sections: compare
  // Ann(R_+) with ∩_{x≠id} Ann(P̄_x) degree by degree.
  SoergelModule bm = bar_bs(g, word);
  std::vector<const QMat*> vops, pops;
  for (const QMat& a : bm.v_act) vops.push_back(&a);
  for (const auto& [x, a] : bm.p_act)
    if (!(x == g.id())) pops.push_back(&a);
  v.theta_surjective = true;
  for (int d = -static_cast<int>(word.size());
       d <= static_cast<int>(word.size()); ++d) {
    long ar = common_kernel_block(bm, vops, d).cols();
    long az = common_kernel_block(bm, pops, d).cols();
    if (ar != az) v.theta_surjective = false;
  }
  if (v.theta_surjective)
    fail("VerificationFailed",
         "right-module maps from k all come from sections");
  return v;
}

}  // namespace gkm
