/*
  poly.hpp — multivariate polynomials over the rationals.

  Sparse representation: an ordered map from exponent vectors to nonzero
  coefficients, keyed by plain lexicographic order on the exponent vector.
  The variables are coordinates of the realization space V*, so a polynomial
  is an element of Sym(V) once we grade variables in degree 2 (the usual
  cohomological convention; the *graded* degree of a monomial is twice its
  polynomial degree).

  All arithmetic is exact. Division is exact division (remainder must be
  zero) via lex leading terms — only ever used with factors that genuinely
  divide, and it throws NonDivisible otherwise rather than guessing.
*/
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkm/linalg.hpp"
#include "gkm/rational.hpp"

namespace gkm {

using Expo = std::vector<int>;

class Poly {
 public:
  Poly() = default;  // zero in 0 variables; usable with any nvars

  static Poly zero(int nvars);
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);
  // sum_i coeffs(i) * x_i
  static Poly linear(const QVec& coeffs);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  // Coefficient of the monomial with exponents e (zero if absent).
  Rational coeff(const Expo& e) const;
  // Constant term; this is also evaluation at 0, i.e. the augmentation.
  Rational augment() const;

  // Graded degree (2 * total degree) of the top term; -1 for the zero
  // polynomial. is_homogeneous() additionally checks all terms agree.
  int degree() const;
  bool is_homogeneous() const;

  // For a linear form: its coefficient vector. Throws otherwise.
  QVec linear_coeffs() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, Poly p);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rational& c);

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ ? terms_ == o.terms_ : (is_zero() && o.is_zero()); }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // Total order (for use as a map key): lex on the term maps.
  bool operator<(const Poly& o) const;

  // Substitution x_i -> sum_j m(j, i) x_j. This is how a group element w
  // acts on Sym(V): variables transform by the matrix of w on V.
  Poly substituted(const QMat& m) const;

  // Exact quotient *this / g; throws Error("NonDivisible") if g does not
  // divide exactly (or g == 0).
  Poly divided_exact(const Poly& g) const;
  // Like divided_exact but returns nullopt instead of throwing.
  std::optional<Poly> try_divide(const Poly& g) const;

  // Canonical serialization: terms in increasing lex order of exponents,
  // "coeff" or "coeff x0^2 x1", joined by " + ". Deterministic, parseable
  // by eye; the reports depend on it being byte-stable.
  std::string str() const;

  // Homogeneous component of graded degree d (d even; 2 * poly degree).
  Poly graded_part(int d) const;

  const std::map<Expo, Rational>& terms() const { return terms_; }

  // Internal-ish: add c * x^e, erasing on cancellation.
  void add_term(const Expo& e, const Rational& c);

 private:
  int nvars_ = 0;
  std::map<Expo, Rational> terms_;
};

}  // namespace gkm
