/*
  ratfun.hpp — rational functions whose denominators are products of linear
  forms (in practice: products of roots). That is exactly the localization
  the torus-equivariant picture needs, and restricting denominators to
  tracked linear factors keeps cancellation cheap and canonical: each factor
  is stored sign-normalized (lex-leading coefficient positive), with the
  sign pushed into the numerator.
*/
#pragma once

#include <map>
#include <string>

#include "gkm/poly.hpp"

namespace gkm {

class RatFun {
 public:
  RatFun() = default;
  RatFun(const Poly& p) : num_(p) {}  // NOLINT: implicit by design
  RatFun(const Rational& c, int nvars) : num_(Poly::constant(nvars, c)) {}

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  const Poly& numerator() const { return num_; }
  const std::map<Poly, int>& denominator_factors() const { return den_; }

  // Throws Error("NonPolynomial") if a denominator survives cancellation.
  Poly as_poly() const;

  // Degree as a graded function: deg(num) - deg(den). -1000000 for zero.
  int degree() const;

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  // Division by a nonzero linear form (or more generally any poly we track
  // as a factor) and by scalars.
  RatFun divided_by(const Poly& form) const;
  RatFun divided_by(const Rational& c) const;

  bool operator==(const RatFun& o) const;
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  // Variable substitution x_i -> sum_j m(j,i) x_j on both num and den.
  RatFun substituted(const QMat& m) const;

  std::string str() const;

 private:
  Poly num_;                 // may be any polynomial
  std::map<Poly, int> den_;  // sign-normalized factor -> multiplicity >= 1

  void normalize();          // cancel factors dividing the numerator
  void push_factor(Poly f);  // sign-normalize and record one factor
};

}  // namespace gkm
