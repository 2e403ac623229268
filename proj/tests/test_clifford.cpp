#include <gtest/gtest.h>

#include "ehspin/clifford.hpp"

using namespace ehspin;

namespace {

const Complex<double> I(0, 1);
const Matrix4c<double> Id = Matrix4c<double>::Identity();

}  // namespace

TEST(Clifford, MatrixEntries) {
  Matrix4c<double> g1 = Matrix4c<double>::Zero();
  g1(0, 2) = 1;
  g1(1, 3) = 1;
  g1(2, 0) = -1;
  g1(3, 1) = -1;
  EXPECT_TRUE(approx_equal(ehspin::gamma(1), g1));

  Matrix4c<double> g4 = Matrix4c<double>::Zero();
  g4(0, 2) = I;
  g4(1, 3) = -I;
  g4(2, 0) = I;
  g4(3, 1) = -I;
  EXPECT_TRUE(approx_equal(ehspin::gamma(4), g4));
}

TEST(Clifford, AnticommutatorsAllPairs) {
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const Matrix4c<double> ac = mul(ehspin::gamma(i), ehspin::gamma(j)) + mul(ehspin::gamma(j), ehspin::gamma(i));
      const Matrix4c<double> expected = i == j ? Matrix4c<double>(-2.0 * Id) : Matrix4c<double>::Zero();
      EXPECT_LE((ac - expected).cwiseAbs().maxCoeff(), 1e-14) << i << ' ' << j;
    }
  }
}

TEST(Clifford, SquareAndMixedExamples) {
  EXPECT_TRUE(approx_equal(mul(ehspin::gamma(4), ehspin::gamma(4)), -Id));
  EXPECT_TRUE(approx_equal(mul(ehspin::gamma(2), ehspin::gamma(3)) + mul(ehspin::gamma(3), ehspin::gamma(2)), Matrix4c<double>::Zero()));
}

TEST(Clifford, AntiHermitian) {
  for (int k = 1; k <= 4; ++k) EXPECT_TRUE(approx_equal(ehspin::gamma(k).adjoint(), -ehspin::gamma(k))) << k;
}

TEST(Clifford, ApplyMovesComponents) {
  Spinor<double> s;
  s << 1, 0, 0, 0;
  Spinor<double> expected;
  expected << 0, 0, -1, 0;
  EXPECT_TRUE(approx_equal(ehspin::apply(ehspin::gamma(1), s), expected));

  s << 0, 1, 0, 0;
  expected << 0, 0, I, 0;
  EXPECT_TRUE(approx_equal(ehspin::apply(ehspin::gamma(2), s), expected));
}

TEST(Clifford, ChiralityIsProductOfAll) {
  const Matrix4c<double> prod = mul(mul(ehspin::gamma(1), ehspin::gamma(2)), mul(ehspin::gamma(3), ehspin::gamma(4)));
  EXPECT_TRUE(approx_equal(prod, chirality<double>()));
  Matrix4c<double> diag = Matrix4c<double>::Zero();
  diag.diagonal() << -1, -1, 1, 1;
  EXPECT_TRUE(approx_equal(prod, diag));
}

TEST(Clifford, IndexOutOfRangeThrows) {
  EXPECT_THROW(ehspin::gamma(0), std::out_of_range);
  EXPECT_THROW(ehspin::gamma(5), std::out_of_range);
  EXPECT_THROW(FrameIndex(-1), std::out_of_range);
}

TEST(Clifford, LongDoubleInstantiation) {
  const auto g = gammas<long double>();
  const Matrix4c<long double> sq = g[2] * g[2];
  EXPECT_TRUE(approx_equal(sq, -Matrix4c<long double>::Identity()));
}
