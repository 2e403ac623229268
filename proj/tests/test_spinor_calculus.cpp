#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace ehspin;
using ehspin::testing::Gen;
using ehspin::testing::max_abs;

TEST(Directional, LinearFieldAlongR) {
  const SpinorField<double> field = [](const Point<double>& p) {
    Spinor<double> s;
    s << p.r, 0, Complex<double>(0, p.theta), 0;
    return s;
  };
  const Point<double> p{2, 1, 0.5, 0.5};
  Spinor<double> expected;
  expected << 1, 0, 0, 0;
  EXPECT_LT(max_abs(directional_derivative(field, Vec4<double>(1, 0, 0, 0), p, 1e-4) - expected), 1e-10);
  expected << 2, 0, Complex<double>(0, -1), 0;
  EXPECT_LT(max_abs(directional_derivative(field, Vec4<double>(2, -1, 0, 0), p, 1e-4) - expected), 1e-10);
}

TEST(Directional, ConstantFieldHasZeroDerivative) {
  Gen gen(1);
  const auto field = constant_field(gen.spinor());
  EXPECT_EQ(max_abs(directional_derivative(field, Vec4<double>(1, 2, 3, 4), Point<double>{2, 1, 0, 0}, 1e-4)), 0);
}

TEST(Directional, Errors) {
  const auto field = constant_field<double>(Spinor<double>::Zero());
  EXPECT_THROW(directional_derivative(field, Vec4<double>(1, 0, 0, 0), Point<double>{2, 1, 0, 0}, 0.0),
               std::invalid_argument);
  EXPECT_THROW(directional_derivative(field, Vec4<double>(0, 1, 0, 0), Point<double>{2, 1e-5, 0, 0}, 1e-4),
               DomainError);
}

TEST(SpinConnection, ExplicitMatchesGenericAssembly) {
  for (int d : {2, 3, 4, 5}) {
    const MetricParams<double> params(d, d == 2 ? 1.0 : 16.0);
    Gen gen(60 + d);
    for (const auto& p : gen.points(params, 25)) {
      const auto a = spin_connection_terms(params, p.r);
      const auto b = spin_connection_terms_generic(connection_forms(params, p));
      for (int k = 0; k < 4; ++k) EXPECT_LE((a[k] - b[k]).cwiseAbs().maxCoeff(), 1e-13 * (1 + a[k].norm()));
    }
  }
}

TEST(SpinConnection, FirstLegHasNoCorrection) {
  const MetricParams<double> params(3, 16.0);
  const auto terms = spin_connection_terms(params, 2.5);
  EXPECT_EQ(terms[0].cwiseAbs().maxCoeff(), 0);
  for (int k = 1; k < 4; ++k) EXPECT_GT(terms[k].cwiseAbs().maxCoeff(), 0);
  // The corrections act within the (Phi_1, Phi_2) and (Phi_3, Phi_4) blocks.
  for (int k = 1; k < 4; ++k) {
    EXPECT_EQ((terms[k].block<2, 2>(0, 2).cwiseAbs().maxCoeff()), 0);
    EXPECT_EQ((terms[k].block<2, 2>(2, 0).cwiseAbs().maxCoeff()), 0);
  }
}

TEST(SpinConnection, RoutesAgreeOnRandomFields) {
  for (int d : {2, 3}) {
    const MetricParams<double> params(d, d == 2 ? 1.0 : 16.0);
    Gen gen(80 + d);
    for (int t = 0; t < 50; ++t) {
      const auto field = gen.smooth_field();
      const auto p = gen.point(params);
      const auto a = covariant_derivatives(params, field, p, 1e-4, Stencil::central2,
                                           ConnectionRoute::explicit_formulas);
      const auto b = covariant_derivatives(params, field, p, 1e-4, Stencil::central2,
                                           ConnectionRoute::generic_assembly);
      for (int k = 0; k < 4; ++k) EXPECT_LE((a[k] - b[k]).norm(), 1e-10 * std::max(1.0, a[k].norm()));
    }
  }
}

TEST(SpinConnection, LeibnizRule) {
  const MetricParams<double> params(4, 16.0);
  Gen gen(5);
  const auto field = gen.smooth_field();
  auto g = [](const Point<double>& p) { return p.r * p.r * std::cos(p.theta) + std::sin(p.phi - p.psi); };
  const SpinorField<double> product = [&](const Point<double>& p) -> Spinor<double> { return g(p) * field(p); };
  for (const auto& p : gen.points(params, 20)) {
    const double h = 1e-4;
    const auto lhs = covariant_derivatives(params, product, p, h);
    const auto rhs = covariant_derivatives(params, field, p, h);
    const Mat4<double> e = frame(params, p);
    Vec4<double> dg;
    for (int a = 0; a < 4; ++a) dg(a) = (g(p.shifted(a, h)) - g(p.shifted(a, -h))) / (2 * h);
    const Vec4<double> eg = e * dg;
    for (int k = 0; k < 4; ++k) {
      const Spinor<double> expected = eg(k) * field(p) + g(p) * rhs[k];
      EXPECT_LE((lhs[k] - expected).norm(), 1e-7 * std::max(1.0, expected.norm()));
    }
  }
}

TEST(SpinConnection, RejectsPointsNearBoundary) {
  const MetricParams<double> params(2, 1.0);
  const auto field = constant_field<double>(Spinor<double>::Ones());
  EXPECT_THROW(covariant_derivatives(params, field, Point<double>{1.0011, 1.0, 0, 0}, 1e-3), DomainError);
  EXPECT_THROW(covariant_derivatives(params, field, Point<double>{2.0, 1.0, 0, 0}, -1e-3), std::invalid_argument);
  EXPECT_THROW(spin_covariant_derivative(params, field, FrameIndex(5), Point<double>{2, 1, 0, 0}, 1e-4),
               std::out_of_range);
}

TEST(Dirac, CoefficientGap) {
  for (int d : {2, 3, 6}) {
    const MetricParams<double> params(d, 4.0);
    for (double s : {1.1, 1.5, 4.0}) {
      const double r = s * params.r0();
      const auto [f, fp] = profile(params, r);
      const auto c = dirac_coefficients(params, r);
      EXPECT_NEAR(c.F2 - c.F1, f / r + 2 / (r * f), 1e-12 * (1 + std::abs(c.F2)));
    }
  }
}

TEST(Dirac, ComponentFormIsMinusGammaOneTimesDirac) {
  for (int d : {2, 3, 5}) {
    const MetricParams<double> params(d, d == 2 ? 1.0 : 16.0);
    Gen gen(90 + d);
    for (int t = 0; t < 30; ++t) {
      const auto field = gen.smooth_field();
      const auto p = gen.point(params);
      const Spinor<double> a = -(ehspin::gamma(1) * dirac(params, field, p, 1e-4));
      const Spinor<double> b = dirac_components(params, field, p, 1e-4);
      EXPECT_LE((a - b).norm(), 1e-8 * std::max(1.0, a.norm()));
    }
  }
}

TEST(Dirac, SecondOrderConvergence) {
  const MetricParams<double> params(3, 16.0);
  Gen gen(17);
  const auto field = gen.smooth_field();
  const Point<double> p{2.6, 1.2, 1.0, 0.8};
  const auto exact = dirac(params, field, p, 1e-6, Stencil::central4);
  const double e1 = (dirac(params, field, p, 1e-2) - exact).norm();
  const double e2 = (dirac(params, field, p, 5e-3) - exact).norm();
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1);
}

TEST(Dirac, RelativeResidualScaleInvariant) {
  const MetricParams<double> params(3, 16.0);
  Gen gen(23);
  const auto field = gen.smooth_field();
  const SpinorField<double> scaled = [&](const Point<double>& p) -> Spinor<double> { return 1e6 * field(p); };
  const Point<double> p{2.2, 0.9, 1.0, 1.0};
  EXPECT_NEAR(dirac_with_scale(params, field, p, 1e-4).relative_residual(),
              dirac_with_scale(params, scaled, p, 1e-4).relative_residual(), 1e-9);
}
