#include "gkm/ratfun.hpp"

#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

void RatFun::push_factor(Poly f) {
  if (f.is_zero()) fail("NonDivisible", "division by zero form");
  // Sign-normalize: lex-leading coefficient positive; sign goes to num.
  const auto lead = std::prev(f.terms().end());
  if (lead->second < 0) {
    f = Rational(-1) * f;
    num_ = Rational(-1) * num_;
  }
  if (f.is_constant()) {
    num_ = (Rational(1) / f.augment()) * num_;
    return;
  }
  den_[f] += 1;
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = num_.try_divide(it->first);
      if (!q) break;
      num_ = *q;
      it->second -= 1;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

Poly RatFun::as_poly() const {
  if (!den_.empty()) fail("NonPolynomial", "rational function has denominator " + str());
  return num_;
}

int RatFun::degree() const {
  if (num_.is_zero()) return -1000000;
  int d = num_.degree();
  for (const auto& [f, m] : den_) d -= m * f.degree();
  return d;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  // Common denominator: lcm of the factor multisets.
  Poly lhs = num_, rhs = o.num_;
  std::map<Poly, int> den;
  for (const auto& [f, m] : den_) den[f] = m;
  for (const auto& [f, m] : o.den_) den[f] = std::max(den[f], m);
  for (const auto& [f, m] : den) {
    auto it = den_.find(f);
    int have = it == den_.end() ? 0 : it->second;
    for (int k = have; k < m; ++k) lhs = lhs * f;
    auto jt = o.den_.find(f);
    int ohave = jt == o.den_.end() ? 0 : jt->second;
    for (int k = ohave; k < m; ++k) rhs = rhs * f;
  }
  num_ = lhs + rhs;
  den_ = std::move(den);
  normalize();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun operator*(const RatFun& a, const RatFun& b) {
  RatFun r;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_;
  for (const auto& [f, m] : b.den_) r.den_[f] += m;
  r.normalize();
  return r;
}

RatFun RatFun::divided_by(const Poly& form) const {
  RatFun r = *this;
  r.push_factor(form);
  r.normalize();
  return r;
}

RatFun RatFun::divided_by(const Rational& c) const {
  if (c == 0) fail("NonDivisible", "division by zero scalar");
  RatFun r = *this;
  r.num_ = (Rational(1) / c) * r.num_;
  return r;
}

bool RatFun::operator==(const RatFun& o) const {
  RatFun d = *this - o;
  return d.is_zero();
}

RatFun RatFun::substituted(const QMat& m) const {
  RatFun r;
  r.num_ = num_.substituted(m);
  for (const auto& [f, mult] : den_) {
    Poly g = f.substituted(m);
    for (int k = 0; k < mult; ++k) r.push_factor(g);
  }
  r.normalize();
  return r;
}

std::string RatFun::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ") / [";
  bool first = true;
  for (const auto& [f, m] : den_) {
    if (!first) os << " * ";
    first = false;
    os << "(" << f.str() << ")";
    if (m > 1) os << "^" << m;
  }
  os << "]";
  return os.str();
}

}  // namespace gkm
