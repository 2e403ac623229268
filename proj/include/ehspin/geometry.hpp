// Metrics of Eguchi-Hanson type
//
//   g = f^-2 dr^2 + r^2 (sigma_1^2 + sigma_2^2 + f^2 sigma_3^2),
//
// written in the Euler-angle chart (r, theta, phi, psi). Coordinate axes are
// indexed 0..3 in that order; frame legs are indexed 0..3 for e_1..e_4.
//
// Covectors and vectors are stored as Vec4 of components along
// (dr, dtheta, dphi, dpsi) resp. (d/dr, d/dtheta, d/dphi, d/dpsi). A frame is a
// Mat4 whose row k is e_{k+1}; a coframe is a Mat4 whose row i is e^{i+1}, so
// coframe * frame^T = I. Coordinate 2-forms are antisymmetric Mat4.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ehspin/common.hpp"

namespace ehspin {

/// Minimum distance kept from r = r0 and from theta in {0, pi}.
inline constexpr double kDomainGuard = 1e-3;

/// The family member selected by the quotient order d and the constant B.
///
/// d = 2 is the Ricci-flat Eguchi-Hanson metric (A = 0, r0 = B^(1/4)).
/// d > 2 is the scalar-flat family with A = -((d-2)/2) sqrt(B/(d-1)) and
/// r0 = (B/(d-1))^(1/4). In both cases f(r0) = 0 and f > 0 beyond.
template <typename Scalar = double>
class MetricParams {
 public:
  MetricParams(int d, Scalar B) : d_(d), B_(B) {
    using std::pow;
    using std::sqrt;
    if (d < 2) throw std::invalid_argument("quotient order d must be >= 2, got " + std::to_string(d));
    if (!(B > 0)) throw std::invalid_argument("B must be positive");
    if (d == 2) {
      A_ = 0;
      r0_ = pow(B, Scalar(0.25));
    } else {
      const Scalar q = B / Scalar(d - 1);
      A_ = -Scalar(d - 2) / 2 * sqrt(q);
      r0_ = pow(q, Scalar(0.25));
    }
  }

  static MetricParams eguchi_hanson(Scalar B) { return MetricParams(2, B); }

  int d() const { return d_; }
  Scalar B() const { return B_; }
  Scalar A() const { return A_; }
  Scalar r0() const { return r0_; }
  Scalar psi_period() const { return 4 * pi<Scalar> / Scalar(d_); }
  bool ricci_flat() const { return d_ == 2; }

 private:
  int d_;
  Scalar B_;
  Scalar A_;
  Scalar r0_;
};

/// Coordinate point (r, theta, phi, psi).
template <typename Scalar = double>
struct Point {
  Scalar r{};
  Scalar theta{};
  Scalar phi{};
  Scalar psi{};

  Vec4<Scalar> coords() const { return {r, theta, phi, psi}; }

  static Point from_coords(const Vec4<Scalar>& x) { return {x(0), x(1), x(2), x(3)}; }

  Point shifted(int axis, Scalar delta) const {
    Point q = *this;
    switch (axis) {
      case 0: q.r += delta; break;
      case 1: q.theta += delta; break;
      case 2: q.phi += delta; break;
      default: q.psi += delta; break;
    }
    return q;
  }
};

/// Throws DomainError unless the point sits in the guarded interior with an
/// additional margin (for stencils reaching +-margin along r and theta).
///
/// phi and psi are periodic directions and are not restricted; fields are
/// evaluated without wrapping the angles.
template <typename Scalar>
void require_interior(const MetricParams<Scalar>& params, const Point<Scalar>& p, Scalar margin = 0) {
  const Scalar guard(kDomainGuard);
  if (!(p.r - margin > params.r0() + guard))
    throw DomainError("r = " + std::to_string(double(p.r)) + " too close to r0 = " +
                      std::to_string(double(params.r0())));
  if (!(p.theta - margin > guard) || !(p.theta + margin < pi<Scalar> - guard))
    throw DomainError("theta = " + std::to_string(double(p.theta)) + " too close to the axis");
  if (!std::isfinite(double(p.phi)) || !std::isfinite(double(p.psi)))
    throw DomainError("non-finite angle");
}

template <typename Scalar>
struct Profile {
  Scalar f;
  Scalar fprime;
};

/// f = sqrt(1 - 2A/r^2 - B/r^4) and its analytic r-derivative.
template <typename Scalar>
Profile<Scalar> profile(const MetricParams<Scalar>& params, Scalar r) {
  if (!(r > params.r0())) throw DomainError("profile requires r > r0");
  const Scalar r2 = r * r;
  const Scalar r3 = r2 * r;
  const Scalar f2 = 1 - 2 * params.A() / r2 - params.B() / (r2 * r2);
  const Scalar f = std::sqrt(f2);
  return {f, (2 * params.A() / r3 + 2 * params.B() / (r3 * r2)) / f};
}

/// sigma_1, sigma_2, sigma_3 at p.
template <typename Scalar>
std::array<Vec4<Scalar>, 3> cartan_maurer(const Point<Scalar>& p) {
  using std::cos;
  using std::sin;
  const Scalar st = sin(p.theta), ct = cos(p.theta);
  const Scalar sp = sin(p.psi), cp = cos(p.psi);
  const Scalar half(0.5);
  return {Vec4<Scalar>{0, half * sp, -half * st * cp, 0},
          Vec4<Scalar>{0, -half * cp, -half * st * sp, 0},
          Vec4<Scalar>{0, 0, half * ct, half}};
}

/// Coordinate components of g, written out directly from the line element.
template <typename Scalar>
Mat4<Scalar> metric(const MetricParams<Scalar>& params, const Point<Scalar>& p) {
  const auto [f, fp] = profile(params, p.r);
  (void)fp;
  const Scalar r2 = p.r * p.r, f2 = f * f;
  const Scalar st = std::sin(p.theta), ct = std::cos(p.theta);
  Mat4<Scalar> g = Mat4<Scalar>::Zero();
  g(0, 0) = 1 / f2;
  g(1, 1) = r2 / 4;
  g(2, 2) = r2 / 4 * (st * st + f2 * ct * ct);
  g(3, 3) = r2 * f2 / 4;
  g(2, 3) = g(3, 2) = r2 * f2 * ct / 4;
  return g;
}

/// e^1 = f^-1 dr, e^2 = r sigma_1, e^3 = r sigma_2, e^4 = r f sigma_3.
template <typename Scalar>
Mat4<Scalar> coframe(const MetricParams<Scalar>& params, const Point<Scalar>& p) {
  require_interior(params, p);
  const auto [f, fp] = profile(params, p.r);
  (void)fp;
  const auto sigma = cartan_maurer(p);
  Mat4<Scalar> e;
  e.row(0) = Vec4<Scalar>{1 / f, 0, 0, 0}.transpose();
  e.row(1) = p.r * sigma[0].transpose();
  e.row(2) = p.r * sigma[1].transpose();
  e.row(3) = p.r * f * sigma[2].transpose();
  return e;
}

/// Orthonormal frame e_1..e_4 dual to the coframe.
template <typename Scalar>
Mat4<Scalar> frame(const MetricParams<Scalar>& params, const Point<Scalar>& p) {
  require_interior(params, p);
  using std::cos;
  using std::sin;
  const auto [f, fp] = profile(params, p.r);
  (void)fp;
  const Scalar s = 2 / p.r;
  const Scalar st = sin(p.theta), ct = cos(p.theta);
  const Scalar sp = sin(p.psi), cp = cos(p.psi);
  Mat4<Scalar> e;
  e << f, 0, 0, 0,
       0, s * sp, -s * cp / st, s * ct * cp / st,
       0, -s * cp, -s * sp / st, s * ct * sp / st,
       0, 0, 0, 2 / (p.r * f);
  return e;
}

/// Levi-Civita connection 1-forms omega^i_j of the orthonormal frame,
/// with d e^i = -omega^i_j ^ e^j.
template <typename Scalar>
struct ConnectionForms {
  /// frame[k](i, j) = omega^i_j(e_k). Antisymmetric in (i, j).
  std::array<Mat4<Scalar>, 4> frame;
  /// coordinate[a](i, j) = omega^i_j(d/dx^a).
  std::array<Mat4<Scalar>, 4> coordinate;

  /// omega^i_j as a coordinate covector (0-based frame indices).
  Vec4<Scalar> form(int i, int j) const {
    return {coordinate[0](i, j), coordinate[1](i, j), coordinate[2](i, j), coordinate[3](i, j)};
  }
};

template <typename Scalar>
ConnectionForms<Scalar> connection_forms(const MetricParams<Scalar>& params, const Point<Scalar>& p) {
  const Mat4<Scalar> e = coframe(params, p);
  const auto [f, fp] = profile(params, p.r);
  const Scalar r = p.r;

  ConnectionForms<Scalar> w;
  for (auto& m : w.frame) m.setZero();
  // set(i, j, k, value): omega^i_j = value * e^k (1-based labels)
  auto set = [&](int i, int j, int k, Scalar value) {
    w.frame[k - 1](i - 1, j - 1) = value;
    w.frame[k - 1](j - 1, i - 1) = -value;
  };
  set(2, 1, 2, f / r);
  set(3, 1, 3, f / r);
  set(4, 1, 4, f / r + fp);
  set(3, 4, 2, f / r);
  set(4, 2, 3, f / r);
  set(2, 3, 4, 2 / (r * f) - f / r);

  for (int a = 0; a < 4; ++a) {
    w.coordinate[a].setZero();
    for (int k = 0; k < 4; ++k) w.coordinate[a] += e(k, a) * w.frame[k];
  }
  return w;
}

/// alpha ^ beta on coordinate pairs: (a, b) -> alpha_a beta_b - alpha_b beta_a.
template <typename Scalar>
Mat4<Scalar> wedge(const Vec4<Scalar>& alpha, const Vec4<Scalar>& beta) {
  return alpha * beta.transpose() - beta * alpha.transpose();
}

/// Central difference of fn along coordinate axis `axis`.
template <typename Scalar, typename Fn>
auto central_partial(const Fn& fn, const Point<Scalar>& p, int axis, Scalar h, Stencil stencil) {
  using Result = std::decay_t<decltype(fn(p))>;
  if (stencil == Stencil::central2) {
    Result out = (fn(p.shifted(axis, h)) - fn(p.shifted(axis, -h))) / (2 * h);
    return out;
  }
  Result out = (fn(p.shifted(axis, -2 * h)) - 8 * fn(p.shifted(axis, -h)) + 8 * fn(p.shifted(axis, h)) -
                fn(p.shifted(axis, 2 * h))) /
               (12 * h);
  return out;
}

/// Exterior derivative of a 1-form field given as Point -> Vec4, by central
/// differences of its coefficients: (d alpha)_ab = d_a alpha_b - d_b alpha_a.
template <typename Scalar, typename Fn>
Mat4<Scalar> exterior_derivative(const Fn& one_form, const Point<Scalar>& p, Scalar h, Stencil stencil) {
  Mat4<Scalar> grad;  // grad(a, b) = d_a alpha_b
  for (int a = 0; a < 4; ++a) grad.row(a) = central_partial(one_form, p, a, h, stencil).transpose();
  return grad - grad.transpose();
}

template <typename Scalar>
struct StructureResidual {
  Scalar value;
  /// False when the stencil reach is not small against the distance to the boundary.
  bool reliable;
};

template <typename Scalar>
bool stencil_reliable(const MetricParams<Scalar>& params, const Point<Scalar>& p, Scalar h) {
  using std::min;
  const Scalar room = min({p.r - params.r0(), p.theta, pi<Scalar> - p.theta});
  return 2 * h <= Scalar(0.1) * room;
}

/// Max over i and coordinate planes of |d e^i + omega^i_j ^ e^j|.
template <typename Scalar>
StructureResidual<Scalar> structure_residual(const MetricParams<Scalar>& params, const Point<Scalar>& p,
                                             Scalar h, Stencil stencil = Stencil::central2) {
  const Scalar reach = stencil == Stencil::central2 ? h : 2 * h;
  require_interior(params, p, reach);
  const Mat4<Scalar> e = coframe(params, p);
  const auto w = connection_forms(params, p);
  Scalar worst = 0;
  for (int i = 0; i < 4; ++i) {
    auto leg = [&](const Point<Scalar>& q) -> Vec4<Scalar> { return coframe(params, q).row(i).transpose(); };
    Mat4<Scalar> residual = exterior_derivative(leg, p, h, stencil);
    for (int j = 0; j < 4; ++j) residual += wedge<Scalar>(w.form(i, j), e.row(j).transpose());
    worst = std::max(worst, residual.cwiseAbs().maxCoeff());
  }
  return {worst, stencil_reliable(params, p, h)};
}

/// Curvature 2-forms Omega^i_j = d omega^i_j + omega^i_k ^ omega^k_j,
/// evaluated on frame pairs.
template <typename Scalar>
struct Curvature {
  /// on_frame[4 i + j](k, l) = Omega^i_j(e_k, e_l), 0-based.
  std::array<Mat4<Scalar>, 16> on_frame;

  Scalar operator()(int i, int j, int k, int l) const { return on_frame[4 * i + j](k, l); }
  const Mat4<Scalar>& form(int i, int j) const { return on_frame[4 * i + j]; }
};

template <typename Scalar>
Curvature<Scalar> curvature_forms(const MetricParams<Scalar>& params, const Point<Scalar>& p, Scalar h,
                                  Stencil stencil = Stencil::central2) {
  const Scalar reach = stencil == Stencil::central2 ? h : 2 * h;
  require_interior(params, p, reach);
  const Mat4<Scalar> e = frame(params, p);
  const auto w = connection_forms(params, p);

  Curvature<Scalar> curv;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      auto form = [&](const Point<Scalar>& q) -> Vec4<Scalar> { return connection_forms(params, q).form(i, j); };
      Mat4<Scalar> omega = exterior_derivative(form, p, h, stencil);
      for (int k = 0; k < 4; ++k) omega += wedge<Scalar>(w.form(i, k), w.form(k, j));
      curv.on_frame[4 * i + j] = e * omega * e.transpose();
    }
  }
  return curv;
}

template <typename Scalar>
struct RicciScalar {
  Mat4<Scalar> ricci;
  Scalar scalar;
};

/// Ric_ij = sum_k Omega^k_j(e_k, e_i); positive on round spheres.
template <typename Scalar>
RicciScalar<Scalar> ricci_from_curvature(const Curvature<Scalar>& curv) {
  Mat4<Scalar> ric = Mat4<Scalar>::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) ric(i, j) += curv(k, j, k, i);
  return {ric, ric.trace()};
}

template <typename Scalar>
RicciScalar<Scalar> ricci_and_scalar(const MetricParams<Scalar>& params, const Point<Scalar>& p, Scalar h,
                                     Stencil stencil = Stencil::central2) {
  return ricci_from_curvature(curvature_forms(params, p, h, stencil));
}

/// Max of |Omega_12 + Omega_34|, |Omega_13 + Omega_42|, |Omega_14 + Omega_23|
/// over all frame pairs. Zero for curvature that is anti-self-dual in its
/// Lie-algebra slot with respect to e^1 ^ e^2 ^ e^3 ^ e^4.
template <typename Scalar>
Scalar anti_self_duality_residual(const Curvature<Scalar>& curv) {
  const Mat4<Scalar> a = curv.form(0, 1) + curv.form(2, 3);
  const Mat4<Scalar> b = curv.form(0, 2) + curv.form(3, 1);
  const Mat4<Scalar> c = curv.form(0, 3) + curv.form(1, 2);
  return std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), c.cwiseAbs().maxCoeff()});
}

/// Same check in the 2-form slot: Omega^i_j(e_1, e_2) + Omega^i_j(e_3, e_4) = 0, etc.
template <typename Scalar>
Scalar anti_self_duality_residual_forms(const Curvature<Scalar>& curv) {
  Scalar worst = 0;
  for (const auto& m : curv.on_frame) {
    worst = std::max({worst, std::abs(m(0, 1) + m(2, 3)), std::abs(m(0, 2) + m(3, 1)), std::abs(m(0, 3) + m(1, 2))});
  }
  return worst;
}

}  // namespace ehspin
