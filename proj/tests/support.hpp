// Seeded generators shared by the property tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ehspin/ehspin.hpp"

namespace ehspin::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  Complex<double> complex() { return {uniform(-1, 1), uniform(-1, 1)}; }

  Point<double> point(const MetricParams<double>& params) {
    return {uniform(1.2, 3.0) * params.r0(), uniform(0.3, pi<double> - 0.3), uniform(0.2, 2 * pi<double> - 0.2),
            uniform(0.1, params.psi_period() - 0.1)};
  }

  std::vector<Point<double>> points(const MetricParams<double>& params, int count) {
    std::vector<Point<double>> out;
    for (int i = 0; i < count; ++i) out.push_back(point(params));
    return out;
  }

  Spinor<double> spinor() {
    Spinor<double> s;
    for (int i = 0; i < 4; ++i) s(i) = complex();
    return s;
  }

  /// A smooth non-constant field: random spinor times a product of
  /// trigonometric and rational factors in each coordinate.
  SpinorField<double> smooth_field() {
    const Spinor<double> a = spinor(), b = spinor();
    const double k1 = uniform(0.5, 2), k2 = uniform(0.5, 2), k3 = uniform(-2, 2), k4 = uniform(-2, 2);
    return [=](const Point<double>& p) -> Spinor<double> {
      const Complex<double> phase = std::polar(1.0, k3 * p.phi + k4 * p.psi);
      return (a * std::sin(k1 * p.theta) / p.r + b * std::cos(k2 * p.r) * p.theta) * phase;
    };
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const Spinor<double>& s) { return s.cwiseAbs().maxCoeff(); }

}  // namespace ehspin::testing
