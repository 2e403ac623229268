// Exponent bookkeeping for the separated harmonic modes and the nine-case
// table of where the angular profiles blow up.
//
// sin(theta/2) = 0 is the x1x2-plane (x3 = x0 = 0); cos(theta/2) = 0 is the
// x3x0-plane (x1 = x2 = 0).
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ehspin/geometry.hpp"
#include "ehspin/solutions.hpp"

namespace ehspin {

struct ExponentSet {
  double a_m_minus;
  double a_m_plus;
  double a_mn_minus;
  double a_mn_plus;
  double b_mn_minus;
  double b_mn_plus;
};

inline void require_quotient_order(int d) {
  if (d <= 2) throw std::invalid_argument("singularity analysis applies to d > 2, got d = " + std::to_string(d));
}

/// a_m^+- = (1 - d +- d m) / (2d)
/// a_mn^+- = n + 1/2 + (d/2)(-m +- 1/2)
/// b_mn^+- = n + 1/2 + (d/2)( m +- 1/2)
inline ExponentSet exponents(int d, int m, int n) {
  require_quotient_order(d);
  const double nh = n + 0.5;
  const double hd = d / 2.0;
  return {radial_base_exponent(d, m, -1), radial_base_exponent(d, m, +1),
          nh + hd * (-m - 0.5),           nh + hd * (-m + 0.5),
          nh + hd * (m - 0.5),            nh + hd * (m + 0.5)};
}

/// Where an angular exponent sits relative to 0 and -d/2.
enum class ExponentRegime { between, nonnegative, at_most_minus_half_d };

namespace detail {

// 4 a_mn^- and 4 b_mn^- are integers, so the regimes are decided exactly.
inline int quarter_a_minus(int d, int m, int n) { return 4 * n + 2 - d * (2 * m + 1); }
inline int quarter_b_minus(int d, int m, int n) { return 4 * n + 2 + d * (2 * m - 1); }

inline bool in_regime(int quarter, int d, ExponentRegime regime) {
  switch (regime) {
    case ExponentRegime::between: return -2 * d < quarter && quarter < 0;
    case ExponentRegime::nonnegative: return quarter >= 0;
    default: return quarter <= -2 * d;
  }
}

struct CaseRule {
  int label;
  ExponentRegime a;
  ExponentRegime b;
  std::vector<int> at_x1x2;
  std::vector<int> at_x3x0;
};

inline const std::array<CaseRule, 9>& case_rules() {
  using R = ExponentRegime;
  static const std::array<CaseRule, 9> rules{{
      {1, R::between, R::between, {1, 2, 3, 4}, {1, 2, 3, 4}},
      {2, R::between, R::nonnegative, {1, 2, 3, 4}, {1, 3}},
      {3, R::between, R::at_most_minus_half_d, {1, 2, 3, 4}, {2, 4}},
      {4, R::nonnegative, R::between, {2, 4}, {1, 2, 3, 4}},
      {5, R::nonnegative, R::nonnegative, {2, 4}, {1, 3}},
      {6, R::nonnegative, R::at_most_minus_half_d, {2, 4}, {2, 4}},
      {7, R::at_most_minus_half_d, R::between, {1, 3}, {1, 2, 3, 4}},
      {8, R::at_most_minus_half_d, R::nonnegative, {1, 3}, {1, 3}},
      {9, R::at_most_minus_half_d, R::at_most_minus_half_d, {1, 3}, {2, 4}},
  }};
  return rules;
}

}  // namespace detail

/// Labels of every case whose conditions hold. Exactly one for d > 2.
inline std::vector<int> matching_cases(int d, int m, int n) {
  require_quotient_order(d);
  const int qa = detail::quarter_a_minus(d, m, n);
  const int qb = detail::quarter_b_minus(d, m, n);
  std::vector<int> labels;
  for (const auto& rule : detail::case_rules())
    if (detail::in_regime(qa, d, rule.a) && detail::in_regime(qb, d, rule.b)) labels.push_back(rule.label);
  return labels;
}

enum class SingularPlane { x1x2, x3x0 };

inline std::string to_string(SingularPlane plane) { return plane == SingularPlane::x1x2 ? "x1x2" : "x3x0"; }

struct SingularityReport {
  int d = 0;
  int m = 0;
  int n = 0;
  ExponentSet exponents{};
  int case_label = 0;
  /// 1-based components whose angular profile blows up on each plane.
  std::vector<int> singular_at_x1x2;
  std::vector<int> singular_at_x3x0;
  /// Exponent of (r - r0) in u_1..u_4: a_m^-, a_m^+, -1/2 - a_m^-, -1/2 - a_m^+.
  std::array<double, 4> radial_exponents{};
  std::vector<int> radial_singular_components;
  /// Some component is unbounded at r = r0, so a mode with all C_i != 0 is.
  bool radial_singular = false;
  /// True when some component stays bounded at r = r0, i.e. amplitudes
  /// supported on those components give a norm that is finite there.
  bool radial_claim_needs_generic_amplitudes = false;
  /// Planes where |Phi| blows up for generic amplitudes.
  std::vector<SingularPlane> norm_singular_planes;
};

inline std::array<double, 4> radial_singular_exponents(int d, int m) {
  const double am = radial_base_exponent(d, m, -1);
  const double ap = radial_base_exponent(d, m, +1);
  return {am, ap, -0.5 - am, -0.5 - ap};
}

inline SingularityReport classify(int d, int m, int n) {
  const auto labels = matching_cases(d, m, n);
  if (labels.size() != 1)
    throw std::logic_error("case conditions do not partition (d, m, n) = (" + std::to_string(d) + ", " +
                           std::to_string(m) + ", " + std::to_string(n) + ")");
  const auto& rule = detail::case_rules()[labels.front() - 1];

  SingularityReport rep;
  rep.d = d;
  rep.m = m;
  rep.n = n;
  rep.exponents = exponents(d, m, n);
  rep.case_label = rule.label;
  rep.singular_at_x1x2 = rule.at_x1x2;
  rep.singular_at_x3x0 = rule.at_x3x0;
  rep.radial_exponents = radial_singular_exponents(d, m);
  for (int i = 0; i < 4; ++i) {
    if (rep.radial_exponents[i] < 0) rep.radial_singular_components.push_back(i + 1);
  }
  rep.radial_singular = !rep.radial_singular_components.empty();
  rep.radial_claim_needs_generic_amplitudes = rep.radial_singular_components.size() < 4;
  if (!rep.singular_at_x1x2.empty()) rep.norm_singular_planes.push_back(SingularPlane::x1x2);
  if (!rep.singular_at_x3x0.empty()) rep.norm_singular_planes.push_back(SingularPlane::x3x0);
  return rep;
}

/// Planes on which |Phi| blows up for the given amplitudes.
template <typename Scalar>
std::vector<SingularPlane> norm_singular_planes(const SingularityReport& rep,
                                                const std::array<Complex<Scalar>, 4>& C) {
  auto any_active = [&](const std::vector<int>& comps) {
    for (int c : comps)
      if (C[c - 1] != Complex<Scalar>(0)) return true;
    return false;
  };
  std::vector<SingularPlane> planes;
  if (any_active(rep.singular_at_x1x2)) planes.push_back(SingularPlane::x1x2);
  if (any_active(rep.singular_at_x3x0)) planes.push_back(SingularPlane::x3x0);
  return planes;
}

template <typename Scalar>
bool norm_radially_singular(const SingularityReport& rep, const std::array<Complex<Scalar>, 4>& C) {
  for (int c : rep.radial_singular_components)
    if (C[c - 1] != Complex<Scalar>(0)) return true;
  return false;
}

/// Signs of the four radial exponents for one m, next to the sign pattern
/// stated for its class (m = 0, m <= -1, m >= 1).
struct RadialSignTable {
  std::array<double, 4> exponents;
  std::array<int, 4> signs;
  std::array<int, 4> stated;
  bool matches;
  bool some_negative;
};

inline RadialSignTable radial_exponent_signs(int d, int m) {
  require_quotient_order(d);
  RadialSignTable t{};
  t.exponents = radial_singular_exponents(d, m);
  for (int i = 0; i < 4; ++i) t.signs[i] = t.exponents[i] > 0 ? 1 : (t.exponents[i] < 0 ? -1 : 0);
  if (m == 0) {
    t.stated = {-1, -1, -1, -1};
  } else if (m <= -1) {
    t.stated = {1, -1, -1, 1};
  } else {
    t.stated = {-1, 1, 1, -1};
  }
  t.matches = t.signs == t.stated;
  t.some_negative = false;
  for (int s : t.signs) t.some_negative = t.some_negative || s < 0;
  return t;
}

template <typename Scalar = double>
struct CartesianPoint {
  Scalar x0{};
  Scalar x1{};
  Scalar x2{};
  Scalar x3{};

  Scalar radius() const { return std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3); }
  /// theta recovered from |(x3, x0)| = r sin(theta/2) and |(x1, x2)| = r cos(theta/2).
  Scalar theta() const { return 2 * std::atan2(std::hypot(x3, x0), std::hypot(x1, x2)); }
};

template <typename Scalar>
CartesianPoint<Scalar> to_cartesian(const Point<Scalar>& p) {
  using std::cos;
  using std::sin;
  const Scalar c = p.r * cos(p.theta / 2), s = p.r * sin(p.theta / 2);
  const Scalar sum = (p.psi + p.phi) / 2, diff = (p.psi - p.phi) / 2;
  return {s * sin(diff), c * cos(sum), c * sin(sum), s * cos(diff)};
}

/// |Phi| = sqrt(sum_i |Phi_i|^2).
template <typename Scalar>
Scalar spinor_norm(const Spinor<Scalar>& s) {
  return s.norm();
}

}  // namespace ehspin
