// Spinor fields, the spin covariant derivative and the Dirac operator.
//
// Fields are evaluation callables; derivatives are taken on demand with
// central stencils, applied to real and imaginary parts alike.
#pragma once

#include <array>
#include <functional>

#include "ehspin/clifford.hpp"
#include "ehspin/geometry.hpp"

namespace ehspin {

template <typename Scalar = double>
using SpinorField = std::function<Spinor<Scalar>(const Point<Scalar>&)>;

template <typename Scalar>
SpinorField<Scalar> constant_field(const Spinor<Scalar>& value) {
  return [value](const Point<Scalar>&) { return value; };
}

/// Coordinate partials d_r, d_theta, d_phi, d_psi of a field at p.
template <typename Scalar>
std::array<Spinor<Scalar>, 4> partials(const SpinorField<Scalar>& field, const Point<Scalar>& p, Scalar h,
                                       Stencil stencil = Stencil::central2) {
  std::array<Spinor<Scalar>, 4> out;
  for (int a = 0; a < 4; ++a) out[a] = central_partial(field, p, a, h, stencil);
  return out;
}

/// v(Phi) = sum_a v^a d_a Phi. Requires theta to stay 2h clear of the axis;
/// the radial range is checked by the field itself.
template <typename Scalar>
Spinor<Scalar> directional_derivative(const SpinorField<Scalar>& field, const Vec4<Scalar>& v,
                                      const Point<Scalar>& p, Scalar h, Stencil stencil = Stencil::central2) {
  if (!(h > 0)) throw std::invalid_argument("step must be positive");
  if (!(p.theta - 2 * h > 0) || !(p.theta + 2 * h < pi<Scalar>))
    throw DomainError("stencil crosses the polar axis");
  const auto d = partials(field, p, h, stencil);
  Spinor<Scalar> out = Spinor<Scalar>::Zero();
  for (int a = 0; a < 4; ++a)
    if (v(a) != Scalar(0)) out += v(a) * d[a];
  return out;
}

/// Connection terms Gamma_k with nabla_{e_k} Phi = e_k(Phi) + Gamma_k Phi,
/// written out for the Eguchi-Hanson-type frame:
///   Gamma_1 = 0
///   Gamma_2 = f/(2r) (g1 g2 - g3 g4)
///   Gamma_3 = f/(2r) (g1 g3 + g2 g4)
///   Gamma_4 = 1/2 ((f/r + f') g1 g4 + (f/r - 2/(r f)) g2 g3)
template <typename Scalar>
std::array<Matrix4c<Scalar>, 4> spin_connection_terms(const MetricParams<Scalar>& params, Scalar r) {
  const auto [f, fp] = profile(params, r);
  const auto g = gammas<Scalar>();
  const Scalar half(0.5);
  std::array<Matrix4c<Scalar>, 4> terms;
  terms[0].setZero();
  terms[1] = (f / (2 * r)) * (g[0] * g[1] - g[2] * g[3]);
  terms[2] = (f / (2 * r)) * (g[0] * g[2] + g[1] * g[3]);
  terms[3] = half * ((f / r + fp) * (g[0] * g[3]) + (f / r - 2 / (r * f)) * (g[1] * g[2]));
  return terms;
}

/// Gamma_k = 1/4 sum_ij g(nabla_{e_k} e_i, e_j) g_i g_j, assembled from the
/// connection 1-forms with g(nabla_{e_k} e_i, e_j) = omega^j_i(e_k).
template <typename Scalar>
std::array<Matrix4c<Scalar>, 4> spin_connection_terms_generic(const ConnectionForms<Scalar>& w) {
  const auto g = gammas<Scalar>();
  std::array<Matrix4c<Scalar>, 4> terms;
  for (int k = 0; k < 4; ++k) {
    terms[k].setZero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (w.frame[k](j, i) != Scalar(0)) terms[k] += (w.frame[k](j, i) / 4) * (g[i] * g[j]);
  }
  return terms;
}

/// Which assembly of the connection terms to use.
enum class ConnectionRoute { explicit_formulas, generic_assembly };

template <typename Scalar>
struct CovariantDerivatives {
  /// e_k(Phi), the frame derivative part.
  std::array<Spinor<Scalar>, 4> frame_part;
  /// Gamma_k Phi, the connection part.
  std::array<Spinor<Scalar>, 4> connection_part;

  Spinor<Scalar> operator[](int k) const { return frame_part[k] + connection_part[k]; }
};

/// All four nabla_{e_k} Phi at p.
template <typename Scalar>
CovariantDerivatives<Scalar> covariant_derivatives(const MetricParams<Scalar>& params,
                                                   const SpinorField<Scalar>& field, const Point<Scalar>& p,
                                                   Scalar h, Stencil stencil = Stencil::central2,
                                                   ConnectionRoute route = ConnectionRoute::explicit_formulas) {
  if (!(h > 0)) throw std::invalid_argument("step must be positive");
  require_interior(params, p, 2 * h);
  const Mat4<Scalar> e = frame(params, p);
  const auto d = partials(field, p, h, stencil);
  const auto terms = route == ConnectionRoute::explicit_formulas
                         ? spin_connection_terms(params, p.r)
                         : spin_connection_terms_generic(connection_forms(params, p));
  const Spinor<Scalar> phi = field(p);

  CovariantDerivatives<Scalar> out;
  for (int k = 0; k < 4; ++k) {
    out.frame_part[k].setZero();
    for (int a = 0; a < 4; ++a)
      if (e(k, a) != Scalar(0)) out.frame_part[k] += e(k, a) * d[a];
    out.connection_part[k] = terms[k] * phi;
  }
  return out;
}

template <typename Scalar>
Spinor<Scalar> spin_covariant_derivative(const MetricParams<Scalar>& params, const SpinorField<Scalar>& field,
                                         FrameIndex k, const Point<Scalar>& p, Scalar h,
                                         Stencil stencil = Stencil::central2,
                                         ConnectionRoute route = ConnectionRoute::explicit_formulas) {
  return covariant_derivatives(params, field, p, h, stencil, route)[k.zero_based()];
}

template <typename Scalar>
struct DiracValue {
  Spinor<Scalar> value;
  /// Sum of the magnitudes of the terms that cancel in a solution,
  /// sum_k |e_k(Phi)| + |Gamma_k Phi|.
  Scalar scale;

  Scalar relative_residual() const {
    const Scalar n = value.norm();
    return scale > 0 ? n / scale : n;
  }
};

/// D Phi = sum_k e_k . nabla_{e_k} Phi, with the magnitude of its terms.
template <typename Scalar>
DiracValue<Scalar> dirac_with_scale(const MetricParams<Scalar>& params, const SpinorField<Scalar>& field,
                                    const Point<Scalar>& p, Scalar h, Stencil stencil = Stencil::central2,
                                    ConnectionRoute route = ConnectionRoute::explicit_formulas) {
  const auto nabla = covariant_derivatives(params, field, p, h, stencil, route);
  DiracValue<Scalar> out{Spinor<Scalar>::Zero(), Scalar(0)};
  for (int k = 0; k < 4; ++k) {
    out.value += gamma<Scalar>(k + 1) * nabla[k];
    out.scale += nabla.frame_part[k].norm() + nabla.connection_part[k].norm();
  }
  return out;
}

template <typename Scalar>
Spinor<Scalar> dirac(const MetricParams<Scalar>& params, const SpinorField<Scalar>& field, const Point<Scalar>& p,
                     Scalar h, Stencil stencil = Stencil::central2) {
  return dirac_with_scale(params, field, p, h, stencil).value;
}

/// F1 = f/r + f'/2 - 1/(r f), F2 = 2f/r + f'/2 + 1/(r f).
template <typename Scalar>
struct CoefficientPair {
  Scalar F1;
  Scalar F2;
};

template <typename Scalar>
CoefficientPair<Scalar> dirac_coefficients(const MetricParams<Scalar>& params, Scalar r) {
  const auto [f, fp] = profile(params, r);
  return {f / r + fp / 2 - 1 / (r * f), 2 * f / r + fp / 2 + 1 / (r * f)};
}

/// The Dirac equation written out component by component:
///
///   (f d_r - (2i/(rf)) d_psi + F1) Phi_1 - (2/r) e^{ i psi} (d_theta - i csc d_phi + i cot d_psi) Phi_2
///   (f d_r + (2i/(rf)) d_psi + F1) Phi_2 + (2/r) e^{-i psi} (d_theta + i csc d_phi - i cot d_psi) Phi_1
///   (f d_r + (2i/(rf)) d_psi + F2) Phi_3 + (2/r) e^{ i psi} (d_theta - i csc d_phi + i cot d_psi) Phi_4
///   (f d_r - (2i/(rf)) d_psi + F2) Phi_4 - (2/r) e^{-i psi} (d_theta + i csc d_phi - i cot d_psi) Phi_3
///
/// With the gamma matrices above this equals -gamma(1) (D Phi).
template <typename Scalar>
Spinor<Scalar> dirac_components(const MetricParams<Scalar>& params, const SpinorField<Scalar>& field,
                                const Point<Scalar>& p, Scalar h, Stencil stencil = Stencil::central2) {
  using C = Complex<Scalar>;
  require_interior(params, p, 2 * h);
  const auto [f, fp] = profile(params, p.r);
  (void)fp;
  const auto [F1, F2] = dirac_coefficients(params, p.r);
  const auto d = partials(field, p, h, stencil);
  const Spinor<Scalar> phi = field(p);
  const Scalar r = p.r;
  const Scalar csc = 1 / std::sin(p.theta);
  const Scalar cot = std::cos(p.theta) / std::sin(p.theta);
  const C i(0, 1);
  const C up = std::exp(i * p.psi), down = std::exp(-i * p.psi);

  auto radial = [&](int c, Scalar sign, Scalar F) {
    return f * d[0](c) + sign * (C(2) * i / (r * f)) * d[3](c) + F * phi(c);
  };
  auto lowering = [&](int c) { return d[1](c) - i * csc * d[2](c) + i * cot * d[3](c); };
  auto raising = [&](int c) { return d[1](c) + i * csc * d[2](c) - i * cot * d[3](c); };

  Spinor<Scalar> out;
  out(0) = radial(0, -1, F1) - (2 / r) * up * lowering(1);
  out(1) = radial(1, +1, F1) + (2 / r) * down * raising(0);
  out(2) = radial(2, +1, F2) + (2 / r) * up * lowering(3);
  out(3) = radial(3, -1, F2) - (2 / r) * down * raising(2);
  return out;
}

}  // namespace ehspin
