// Spin(4) representation of the orthonormal frame e_1..e_4 as complex 4x4
// matrices, together with the small amount of matrix algebra the spin
// connection needs.
#pragma once

#include <array>

#include "ehspin/common.hpp"

namespace ehspin {

/// Label of an orthonormal frame leg, 1 <= k <= 4.
class FrameIndex {
 public:
  constexpr FrameIndex(int k) : k_(k) {  // NOLINT(google-explicit-constructor)
    if (k < 1 || k > 4) throw std::out_of_range("frame index must lie in 1..4, got " + std::to_string(k));
  }
  constexpr int value() const { return k_; }
  constexpr int zero_based() const { return k_ - 1; }

 private:
  int k_;
};

/// Matrix representing Clifford multiplication by e_k.
///
/// Entries are exactly 0, +-1 or +-i. The matrices satisfy
/// gamma(i) gamma(j) + gamma(j) gamma(i) = -2 delta_ij I and are anti-Hermitian.
template <typename Scalar = double>
Matrix4c<Scalar> gamma(FrameIndex k) {
  using C = Complex<Scalar>;
  const C o{0, 0}, p{1, 0}, m{-1, 0}, i{0, 1}, mi{0, -1};
  Matrix4c<Scalar> g;
  switch (k.value()) {
    case 1:
      g << o, o, p, o,
           o, o, o, p,
           m, o, o, o,
           o, m, o, o;
      break;
    case 2:
      g << o, o, o, i,
           o, o, i, o,
           o, i, o, o,
           i, o, o, o;
      break;
    case 3:
      g << o, o, o, m,
           o, o, p, o,
           o, m, o, o,
           p, o, o, o;
      break;
    default:
      g << o, o, i, o,
           o, o, o, mi,
           i, o, o, o,
           o, mi, o, o;
      break;
  }
  return g;
}

template <typename Scalar = double>
std::array<Matrix4c<Scalar>, 4> gammas() {
  return {gamma<Scalar>(1), gamma<Scalar>(2), gamma<Scalar>(3), gamma<Scalar>(4)};
}

template <typename Scalar>
Matrix4c<Scalar> mul(const Matrix4c<Scalar>& a, const Matrix4c<Scalar>& b) {
  return a * b;
}

/// Clifford action of a matrix on a spinor.
template <typename Scalar>
Spinor<Scalar> apply(const Matrix4c<Scalar>& m, const Spinor<Scalar>& s) {
  return m * s;
}

/// Entrywise comparison; the default tolerance admits any product of exact entries.
template <typename Derived1, typename Derived2>
bool approx_equal(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b,
                  double tol = 1e-14) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

/// gamma(1) gamma(2) gamma(3) gamma(4). Diagonal, splitting spinors into
/// the (Phi_1, Phi_2) and (Phi_3, Phi_4) halves.
template <typename Scalar = double>
Matrix4c<Scalar> chirality() {
  return gamma<Scalar>(1) * gamma<Scalar>(2) * gamma<Scalar>(3) * gamma<Scalar>(4);
}

}  // namespace ehspin
