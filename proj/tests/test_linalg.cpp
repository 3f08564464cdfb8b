#include "gkm/linalg.hpp"

#include "doctest.h"
#include "gkm/error.hpp"

using namespace gkm;

namespace {
QMat mat3(std::initializer_list<int> v) {
  QMat m(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}
}  // namespace

TEST_CASE("rref, rank, inverse on exact rationals") {
  QMat m = mat3({1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(rank_of(m) == 2);

  QMat id = QMat::Identity(3, 3);
  QMat inv = inverse(mat3({2, 0, 0, 0, 1, 1, 0, 0, 1}));
  QMat prod = mat3({2, 0, 0, 0, 1, 1, 0, 0, 1}) * inv;
  CHECK(prod == id);
  CHECK(inv(0, 0) == Rational(1, 2));

  CHECK_THROWS_AS(inverse(m), Error);
}

TEST_CASE("kernel basis solves the homogeneous system") {
  QMat m = mat3({1, 2, 3, 4, 5, 6, 7, 8, 9});
  QMat k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  QVec prod = m * k.col(0);
  for (int i = 0; i < 3; ++i) CHECK(prod(i) == 0);
  // Canonical choice: free column x2 = 1 gives (1, -2, 1).
  CHECK(k(0, 0) == 1);
  CHECK(k(1, 0) == -2);
  CHECK(k(2, 0) == 1);
}

TEST_CASE("solve_linear finds solutions and detects inconsistency") {
  QMat m(2, 2);
  m << 1, 1, 1, 1;
  QVec b(2);
  b << 2, 2;
  auto x = solve_linear(m, b);
  REQUIRE(x.has_value());
  CHECK(m * *x == b);

  b << 2, 3;
  CHECK(!solve_linear(m, b).has_value());
}

TEST_CASE("SpanBuilder tracks membership and coordinates") {
  SpanBuilder sb(3, true);
  QVec v1(3), v2(3), v3(3);
  v1 << 1, 1, 0;
  v2 << 0, 1, 1;
  v3 << 1, 3, 2;  // = v1 + 2 v2
  CHECK(sb.add(v1));
  CHECK(sb.add(v2));
  CHECK(!sb.add(v3));
  CHECK(sb.dim() == 2);
  CHECK(sb.contains(v3));

  auto c = sb.coords(v3);
  REQUIRE(c.has_value());
  CHECK((*c)(0) == 1);
  CHECK((*c)(1) == 2);

  QVec out(3);
  out << 1, 0, 0;
  CHECK(!sb.contains(out));
  CHECK(!sb.coords(out).has_value());
}
