/*
  rational.hpp — exact rational scalar used throughout.

  The scalar is GMP's mpq_class; this header provides the Eigen glue
  (NumTraits) so dense Eigen types can be instantiated over it, plus the
  canonical "p/q" string round-trip used by every serializer.
*/
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>

namespace gkm {

using Rational = mpq_class;

// Canonical form: GMP's own canonical string, "p" or "p/q" with q > 1.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Accepts "p", "p/q", optional leading '-'. Throws std::invalid_argument on junk.
Rational rat_parse(const std::string& s);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace gkm

namespace Eigen {

// Standard adapter for an exact scalar (cf. the Eigen custom-scalar docs).
// Costs are rough; we never let Eigen pick pivots, so they are cosmetic.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
