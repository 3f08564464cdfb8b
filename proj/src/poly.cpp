#include "gkm/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

Poly Poly::zero(int nvars) {
  Poly p;
  p.nvars_ = nvars;
  return p;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p = zero(nvars);
  if (c != 0) p.terms_[Expo(nvars, 0)] = c;
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p = zero(nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.terms_[e] = 1;
  return p;
}

Poly Poly::linear(const QVec& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Poly p = zero(n);
  for (int i = 0; i < n; ++i) {
    if (coeffs(i) == 0) continue;
    Expo e(n, 0);
    e[i] = 1;
    p.terms_[e] = coeffs(i);
  }
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 &&
         std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                     [](int k) { return k == 0; });
}

Rational Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::augment() const { return coeff(Expo(nvars_, 0)); }

namespace {
int expo_total(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0); }
}  // namespace

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, 2 * expo_total(e));
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -2;
  for (const auto& [e, c] : terms_) {
    int t = 2 * expo_total(e);
    if (d == -2)
      d = t;
    else if (d != t)
      return false;
  }
  return true;
}

QVec Poly::linear_coeffs() const {
  QVec v = QVec::Zero(nvars_);
  for (const auto& [e, c] : terms_) {
    int idx = -1;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (e[i] != 1 || idx >= 0) fail("NotLinear", "polynomial is not a linear form: " + str());
      idx = i;
    }
    if (idx < 0) fail("NotLinear", "polynomial has a constant term: " + str());
    v(idx) = c;
  }
  return v;
}

void Poly::add_term(const Expo& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ == 0 && !o.terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ == 0 && !o.terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out = Poly::zero(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Expo e(out.nvars_, 0);
      for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly operator*(const Rational& c, Poly p) {
  if (c == 0) return Poly::zero(p.nvars_);
  for (auto& [e, k] : p.terms_) k *= c;
  return p;
}

Poly& Poly::operator*=(const Rational& c) { return *this = c * *this; }

bool Poly::operator<(const Poly& o) const {
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
}

Poly Poly::substituted(const QMat& m) const {
  const int n = nvars_;
  // Build images of the variables once, then expand monomials by powers.
  std::vector<Poly> image(n);
  for (int i = 0; i < n; ++i) {
    QVec col(n);
    for (int j = 0; j < n; ++j) col(j) = m(j, i);
    image[i] = Poly::linear(col);
  }
  Poly out = Poly::zero(n);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(n, c);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * image[i];
    out += term;
  }
  return out;
}

std::optional<Poly> Poly::try_divide(const Poly& g) const {
  if (g.is_zero()) return std::nullopt;
  const int n = std::max(nvars_, g.nvars_);
  // Lex leading term of g (map is lex-increasing, so the lead is the last).
  const auto glead = std::prev(g.terms_.end());
  Poly rem = *this;
  rem.nvars_ = n;
  Poly quot = Poly::zero(n);
  while (!rem.is_zero()) {
    const auto rlead = std::prev(rem.terms_.end());
    Expo diff(n, 0);
    for (int i = 0; i < n; ++i) {
      int gi = i < static_cast<int>(glead->first.size()) ? glead->first[i] : 0;
      int ri = i < static_cast<int>(rlead->first.size()) ? rlead->first[i] : 0;
      diff[i] = ri - gi;
      if (diff[i] < 0) return std::nullopt;
    }
    Rational c = rlead->second / glead->second;
    Poly mono = Poly::zero(n);
    mono.terms_[diff] = c;
    quot += mono;
    rem -= mono * g;
  }
  return quot;
}

Poly Poly::divided_exact(const Poly& g) const {
  auto q = try_divide(g);
  if (!q) fail("NonDivisible", "(" + str() + ") is not divisible by (" + g.str() + ")");
  return *q;
}

Poly Poly::graded_part(int d) const {
  Poly out = zero(nvars_);
  for (const auto& [e, c] : terms_)
    if (2 * expo_total(e) == d) out.terms_[e] = c;
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << " x" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace gkm
