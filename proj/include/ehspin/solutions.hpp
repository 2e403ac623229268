// Closed-form spinor fields: parallel spinors on the Eguchi-Hanson metric and
// the separated harmonic modes on the scalar-flat family (d > 2).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "ehspin/spinor_calculus.hpp"

namespace ehspin {

// ---------------------------------------------------------------------------
// Parallel spinors

/// The constant field (c1, c2, 0, 0). Only defined on the Ricci-flat member.
template <typename Scalar>
SpinorField<Scalar> parallel_spinor(const MetricParams<Scalar>& params, Complex<Scalar> c1, Complex<Scalar> c2) {
  if (!params.ricci_flat())
    throw std::invalid_argument("parallel spinors require the Ricci-flat metric d = 2 (got d = " +
                                std::to_string(params.d()) + ")");
  Spinor<Scalar> s;
  s << c1, c2, Complex<Scalar>(0), Complex<Scalar>(0);
  return constant_field(s);
}

/// max_k |nabla_{e_k} Phi| for a field at p.
template <typename Scalar>
Scalar max_covariant_derivative(const MetricParams<Scalar>& params, const SpinorField<Scalar>& field,
                                const Point<Scalar>& p, Scalar h) {
  const auto nabla = covariant_derivatives(params, field, p, h);
  Scalar worst = 0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, nabla[k].norm());
  return worst;
}

template <typename Scalar>
Point<Scalar> witness_point(const MetricParams<Scalar>& params) {
  return {Scalar(1.5) * params.r0(), pi<Scalar> / 3, Scalar(0.7), Scalar(0.4)};
}

/// min over unit constant spinors (0, 0, c3, c4) of max_k |nabla_{e_k} Phi| at p.
///
/// A positive value shows that no constant spinor outside the (Phi_1, Phi_2)
/// plane is parallel. The minimum is taken on a grid over the unit sphere of
/// C^2 modulo overall phase: c3 = cos(a), c4 = sin(a) e^{i b}.
template <typename Scalar>
Scalar non_parallel_witness(const MetricParams<Scalar>& params, const Point<Scalar>& p) {
  constexpr int kPolar = 91;
  constexpr int kAzimuth = 180;
  const Scalar h(1e-4);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int ia = 0; ia < kPolar; ++ia) {
    const Scalar a = (pi<Scalar> / 2) * Scalar(ia) / Scalar(kPolar - 1);
    for (int ib = 0; ib < (ia == 0 ? 1 : kAzimuth); ++ib) {
      const Scalar b = 2 * pi<Scalar> * Scalar(ib) / Scalar(kAzimuth);
      Spinor<Scalar> s;
      s << 0, 0, std::cos(a), std::sin(a) * std::polar(Scalar(1), b);
      best = std::min(best, max_covariant_derivative(params, constant_field(s), p, h));
    }
  }
  return best;
}

template <typename Scalar>
Scalar non_parallel_witness(const MetricParams<Scalar>& params) {
  return non_parallel_witness(params, witness_point(params));
}

// ---------------------------------------------------------------------------
// Separated harmonic modes

template <typename Scalar = double>
struct ModeIndices {
  int m = 0;
  int n = 0;
  std::array<Complex<Scalar>, 4> C{Complex<Scalar>(1), Complex<Scalar>(1), Complex<Scalar>(1), Complex<Scalar>(1)};
};

/// u = r^r_power (r^2 - r0^2)^lower (r^2 + (d-1) r0^2)^upper.
template <typename Scalar>
struct RadialExponents {
  Scalar r_power;
  Scalar lower;
  Scalar upper;
};

/// (1 - d -+ d m) / (2d), the exponent of (r^2 - r0^2) in u_1 (minus) and u_2 (plus).
template <typename Scalar = double>
Scalar radial_base_exponent(int d, int m, int sign) {
  return Scalar(1 - d + sign * d * m) / Scalar(2 * d);
}

/// Exponents of u_i, i in 1..4.
template <typename Scalar = double>
RadialExponents<Scalar> radial_exponents(int d, int m, int i) {
  const Scalar am = radial_base_exponent<Scalar>(d, m, -1);
  const Scalar ap = radial_base_exponent<Scalar>(d, m, +1);
  const Scalar gm = Scalar(d) * Scalar(1 + 2 * m) / 4;
  const Scalar gp = Scalar(d) * Scalar(1 - 2 * m) / 4;
  const Scalar half(0.5);
  switch (i) {
    case 1: return {0, am, -am - gm};
    case 2: return {0, ap, -ap - gp};
    case 3: return {-1, -half - am, -half + am + gm};
    case 4: return {-1, -half - ap, -half + ap + gp};
    default: throw std::out_of_range("component index must lie in 1..4");
  }
}

template <typename Scalar>
Scalar radial_value(const MetricParams<Scalar>& params, const RadialExponents<Scalar>& x, Scalar r) {
  if (!(r > params.r0())) throw DomainError("radial profile requires r > r0");
  const Scalar r02 = params.r0() * params.r0();
  using std::pow;
  return pow(r, x.r_power) * pow(r * r - r02, x.lower) * pow(r * r + Scalar(params.d() - 1) * r02, x.upper);
}

/// d/dr log u by logarithmic differentiation.
template <typename Scalar>
Scalar radial_log_derivative(const MetricParams<Scalar>& params, const RadialExponents<Scalar>& x, Scalar r) {
  if (!(r > params.r0())) throw DomainError("radial profile requires r > r0");
  const Scalar r02 = params.r0() * params.r0();
  return x.r_power / r + 2 * r * x.lower / (r * r - r02) + 2 * r * x.upper / (r * r + Scalar(params.d() - 1) * r02);
}

template <typename Scalar>
Scalar u_radial(const MetricParams<Scalar>& params, int m, int i, Scalar r) {
  return radial_value(params, radial_exponents<Scalar>(params.d(), m, i), r);
}

/// Coefficient c_i(r) of the radial equation u_i' = c_i u_i:
///   c_1 = (A r - d (m + 1/2) r^3) / P
///   c_2 = (A r + d (m - 1/2) r^3) / P
///   c_3 = (3 A r^2 + B + (d (m + 1/2) - 3) r^4) / (r P)
///   c_4 = (3 A r^2 + B - (d (m - 1/2) + 3) r^4) / (r P)
/// with P = r^4 - 2 A r^2 - B.
template <typename Scalar>
Scalar radial_rhs(const MetricParams<Scalar>& params, int m, int i, Scalar r) {
  const Scalar A = params.A(), B = params.B(), d = Scalar(params.d());
  const Scalar r2 = r * r, r4 = r2 * r2;
  const Scalar P = r4 - 2 * A * r2 - B;
  const Scalar mp = Scalar(m) + Scalar(0.5), mm = Scalar(m) - Scalar(0.5);
  switch (i) {
    case 1: return (A * r - d * mp * r2 * r) / P;
    case 2: return (A * r + d * mm * r2 * r) / P;
    case 3: return (3 * A * r2 + B + (d * mp - 3) * r4) / (r * P);
    case 4: return (3 * A * r2 + B - (d * mm + 3) * r4) / (r * P);
    default: throw std::out_of_range("component index must lie in 1..4");
  }
}

enum class DerivativeMode { analytic, finite_difference };

/// |u' - c_i u| / |u| for a radial profile with the given exponents.
template <typename Scalar>
Scalar radial_ode_residual(const MetricParams<Scalar>& params, int m, int i, const RadialExponents<Scalar>& x,
                           Scalar r, DerivativeMode mode = DerivativeMode::analytic) {
  const Scalar u = radial_value(params, x, r);
  Scalar du;
  if (mode == DerivativeMode::analytic) {
    du = radial_log_derivative(params, x, r) * u;
  } else {
    const Scalar h = Scalar(1e-5) * (r - params.r0());
    du = (radial_value(params, x, r + h) - radial_value(params, x, r - h)) / (2 * h);
  }
  return std::abs(du - radial_rhs(params, m, i, r) * u) / std::abs(u);
}

template <typename Scalar>
Scalar radial_ode_residual(const MetricParams<Scalar>& params, int m, int i, Scalar r,
                           DerivativeMode mode = DerivativeMode::analytic) {
  return radial_ode_residual(params, m, i, radial_exponents<Scalar>(params.d(), m, i), r, mode);
}

/// v = sin(theta/2)^sin_power cos(theta/2)^cos_power.
template <typename Scalar>
struct AngularExponents {
  Scalar sin_power;
  Scalar cos_power;
};

template <typename Scalar = double>
AngularExponents<Scalar> angular_exponents(int d, int m, int n, int i) {
  const Scalar nh = Scalar(n) + Scalar(0.5);
  const Scalar half_d = Scalar(d) / 2;
  switch (i) {
    case 1:
    case 3: {
      const Scalar k = half_d * (Scalar(m) + Scalar(0.5));
      return {nh - k, -nh - k};
    }
    case 2:
    case 4: {
      const Scalar k = half_d * (Scalar(m) - Scalar(0.5));
      return {-nh + k, nh + k};
    }
    default: throw std::out_of_range("component index must lie in 1..4");
  }
}

template <typename Scalar>
Scalar angular_value(const AngularExponents<Scalar>& x, Scalar theta) {
  if (!(theta > 0) || !(theta < pi<Scalar>)) throw DomainError("angular profile requires 0 < theta < pi");
  using std::pow;
  return pow(std::sin(theta / 2), x.sin_power) * pow(std::cos(theta / 2), x.cos_power);
}

template <typename Scalar>
Scalar angular_log_derivative(const AngularExponents<Scalar>& x, Scalar theta) {
  if (!(theta > 0) || !(theta < pi<Scalar>)) throw DomainError("angular profile requires 0 < theta < pi");
  return x.sin_power / (2 * std::tan(theta / 2)) - x.cos_power * std::tan(theta / 2) / 2;
}

template <typename Scalar>
Scalar v_angular(int d, int m, int n, int i, Scalar theta) {
  return angular_value(angular_exponents<Scalar>(d, m, n, i), theta);
}

/// Coefficient of the angular equation d_theta h_i = c_i h_i:
///   i = 1, 3:  (n + 1/2) csc - (d/2)(m + 1/2) cot
///   i = 2, 4: -(n + 1/2) csc + (d/2)(m - 1/2) cot
template <typename Scalar>
Scalar angular_rhs(int d, int m, int n, int i, Scalar theta) {
  const Scalar csc = 1 / std::sin(theta), cot = std::cos(theta) / std::sin(theta);
  const Scalar nh = Scalar(n) + Scalar(0.5);
  const Scalar half_d = Scalar(d) / 2;
  switch (i) {
    case 1:
    case 3: return nh * csc - half_d * (Scalar(m) + Scalar(0.5)) * cot;
    case 2:
    case 4: return -nh * csc + half_d * (Scalar(m) - Scalar(0.5)) * cot;
    default: throw std::out_of_range("component index must lie in 1..4");
  }
}

template <typename Scalar>
Scalar angular_ode_residual(int d, int m, int n, int i, const AngularExponents<Scalar>& x, Scalar theta,
                            DerivativeMode mode = DerivativeMode::analytic) {
  const Scalar v = angular_value(x, theta);
  Scalar dv;
  if (mode == DerivativeMode::analytic) {
    dv = angular_log_derivative(x, theta) * v;
  } else {
    const Scalar h = Scalar(1e-5) * std::min(theta, pi<Scalar> - theta);
    dv = (angular_value(x, theta + h) - angular_value(x, theta - h)) / (2 * h);
  }
  return std::abs(dv - angular_rhs<Scalar>(d, m, n, i, theta) * v) / std::abs(v);
}

template <typename Scalar>
Scalar angular_ode_residual(int d, int m, int n, int i, Scalar theta,
                            DerivativeMode mode = DerivativeMode::analytic) {
  return angular_ode_residual(d, m, n, i, angular_exponents<Scalar>(d, m, n, i), theta, mode);
}

/// Real profiles h_i(r, theta) = u_i(r) v_i(theta) with their first derivatives.
template <typename Scalar = double>
struct SeparatedProfile {
  using Fn = std::function<Scalar(Scalar)>;
  std::array<Fn, 4> u, du, v, dv;

  Scalar h(int i, Scalar r, Scalar theta) const { return u[i](r) * v[i](theta); }
  Scalar dh_dr(int i, Scalar r, Scalar theta) const { return du[i](r) * v[i](theta); }
  Scalar dh_dtheta(int i, Scalar r, Scalar theta) const { return u[i](r) * dv[i](theta); }
};

/// Profile built from explicit exponents; the closed-form modes use
/// radial_exponents / angular_exponents.
template <typename Scalar>
SeparatedProfile<Scalar> profile_from_exponents(const MetricParams<Scalar>& params,
                                                const std::array<RadialExponents<Scalar>, 4>& radial,
                                                const std::array<AngularExponents<Scalar>, 4>& angular) {
  SeparatedProfile<Scalar> prof;
  for (int i = 0; i < 4; ++i) {
    const auto rx = radial[i];
    const auto ax = angular[i];
    prof.u[i] = [params, rx](Scalar r) { return radial_value(params, rx, r); };
    prof.du[i] = [params, rx](Scalar r) { return radial_log_derivative(params, rx, r) * radial_value(params, rx, r); };
    prof.v[i] = [ax](Scalar t) { return angular_value(ax, t); };
    prof.dv[i] = [ax](Scalar t) { return angular_log_derivative(ax, t) * angular_value(ax, t); };
  }
  return prof;
}

template <typename Scalar>
SeparatedProfile<Scalar> closed_form_profile(const MetricParams<Scalar>& params, int m, int n) {
  std::array<RadialExponents<Scalar>, 4> radial;
  std::array<AngularExponents<Scalar>, 4> angular;
  for (int i = 0; i < 4; ++i) {
    radial[i] = radial_exponents<Scalar>(params.d(), m, i + 1);
    angular[i] = angular_exponents<Scalar>(params.d(), m, n, i + 1);
  }
  return profile_from_exponents(params, radial, angular);
}

/// psi-frequencies (d/2)(m + 1/2) for Phi_1, Phi_3 and (d/2)(m - 1/2) for Phi_2, Phi_4.
template <typename Scalar>
std::array<Scalar, 4> psi_frequencies(int d, int m) {
  const Scalar up = Scalar(d) / 2 * (Scalar(m) + Scalar(0.5));
  const Scalar down = Scalar(d) / 2 * (Scalar(m) - Scalar(0.5));
  return {up, down, up, down};
}

/// Phi_i = C_i e^{i (n + 1/2) phi} e^{i k_i psi} h_i(r, theta).
///
/// The phases are evaluated at the given angles without reduction, so the
/// field changes sign under phi -> phi + 2 pi and psi -> psi + 4 pi / d.
template <typename Scalar>
SpinorField<Scalar> separated_field(const MetricParams<Scalar>& params, int m, int n,
                                    const SeparatedProfile<Scalar>& prof,
                                    const std::array<Complex<Scalar>, 4>& C) {
  const auto freq = psi_frequencies<Scalar>(params.d(), m);
  const Scalar nh = Scalar(n) + Scalar(0.5);
  return [prof, C, freq, nh](const Point<Scalar>& p) {
    Spinor<Scalar> s;
    for (int i = 0; i < 4; ++i) {
      if (C[i] == Complex<Scalar>(0)) {
        s(i) = 0;
        continue;
      }
      s(i) = C[i] * prof.h(i, p.r, p.theta) * std::polar(Scalar(1), nh * p.phi + freq[i] * p.psi);
    }
    return s;
  };
}

template <typename Scalar>
SpinorField<Scalar> harmonic_mode(const MetricParams<Scalar>& params, const ModeIndices<Scalar>& mode) {
  if (params.d() <= 2)
    throw std::invalid_argument("harmonic modes in closed form are available for d > 2 only");
  return separated_field(params, mode.m, mode.n, closed_form_profile(params, mode.m, mode.n), mode.C);
}

template <typename Scalar>
struct SeparatedSystem {
  Vec4<Scalar> L;
  Vec4<Scalar> R;
  /// Sum of the magnitudes of the terms making up each component.
  Vec4<Scalar> L_scale = Vec4<Scalar>::Zero();
  Vec4<Scalar> R_scale = Vec4<Scalar>::Zero();

  /// max_k |L_k| / L_scale_k over both vectors; independent of the profile's normalization.
  Scalar relative_residual() const {
    Scalar worst = 0;
    for (int k = 0; k < 4; ++k) {
      if (L_scale(k) > 0) worst = std::max(worst, std::abs(L(k)) / L_scale(k));
      if (R_scale(k) > 0) worst = std::max(worst, std::abs(R(k)) / R_scale(k));
    }
    return worst;
  }
};

/// The vectors L and R of the separated Dirac equation
/// e^{i (d/2 - 1) psi} L(r, theta) = R(r, theta) for the profile h_i.
template <typename Scalar>
SeparatedSystem<Scalar> separated_LR(const MetricParams<Scalar>& params, int m, int n,
                                     const SeparatedProfile<Scalar>& prof, Scalar r, Scalar theta) {
  if (params.d() < 3)
    throw std::invalid_argument("separation into L = R = 0 needs d >= 3 (psi-dependence argument)");
  require_interior(params, Point<Scalar>{r, theta, 0, 0});
  const auto [f, fp] = profile(params, r);
  const Scalar d = Scalar(params.d());
  const Scalar f2 = f * f;
  const Scalar csc = 1 / std::sin(theta), cot = std::cos(theta) / std::sin(theta);
  const Scalar nh = Scalar(n) + Scalar(0.5);
  const Scalar kp = d / 2 * (Scalar(m) + Scalar(0.5));
  const Scalar km = d / 2 * (Scalar(m) - Scalar(0.5));
  const Scalar lift = fp / (2 * f);

  auto h = [&](int i) { return prof.h(i, r, theta); };
  auto hr = [&](int i) { return prof.dh_dr(i, r, theta); };
  auto ht = [&](int i) { return prof.dh_dtheta(i, r, theta); };

  // Each component is a * (derivative + c * h); record both the value and |a| (|derivative| + |c h|).
  SeparatedSystem<Scalar> s;
  auto set = [](Scalar& value, Scalar& scale, Scalar a, Scalar deriv, Scalar c, Scalar hv) {
    value = a * (deriv + c * hv);
    scale = std::abs(a) * (std::abs(deriv) + std::abs(c * hv));
  };
  set(s.L(0), s.L_scale(0), r * f / 2, hr(0), d * (2 * m + 1) / (2 * r * f2) + 1 / r + lift - 1 / (r * f2), h(0));
  set(s.L(1), s.L_scale(1), 1, ht(0), -nh * csc + kp * cot, h(0));
  set(s.L(2), s.L_scale(2), -r * f / 2, hr(2), -d * (2 * m + 1) / (2 * r * f2) + 2 / r + lift + 1 / (r * f2), h(2));
  set(s.L(3), s.L_scale(3), 1, ht(2), -nh * csc + kp * cot, h(2));

  set(s.R(0), s.R_scale(0), 1, ht(1), nh * csc - km * cot, h(1));
  set(s.R(1), s.R_scale(1), -r * f / 2, hr(1), -d * (2 * m - 1) / (2 * r * f2) + 1 / r + lift - 1 / (r * f2), h(1));
  set(s.R(2), s.R_scale(2), 1, ht(3), nh * csc - km * cot, h(3));
  set(s.R(3), s.R_scale(3), r * f / 2, hr(3), d * (2 * m - 1) / (2 * r * f2) + 2 / r + lift + 1 / (r * f2), h(3));
  return s;
}

template <typename Scalar>
SeparatedSystem<Scalar> separated_LR(const MetricParams<Scalar>& params, const ModeIndices<Scalar>& mode, Scalar r,
                                     Scalar theta) {
  if (params.d() < 3)
    throw std::invalid_argument("separation into L = R = 0 needs d >= 3 (psi-dependence argument)");
  return separated_LR(params, mode.m, mode.n, closed_form_profile(params, mode.m, mode.n), r, theta);
}

}  // namespace ehspin
