// Shared dense types and error types for the ehspin library.
#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ehspin {

template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Complex 4x4 matrix acting on Dirac spinors.
template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

/// Four complex components (Phi_1, ..., Phi_4).
template <typename Scalar>
using Spinor = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

/// Raised when a point or parameter leaves the region where a formula is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Central finite-difference stencils. Truncation error is O(h^2) and O(h^4).
enum class Stencil { central2, central4 };

template <typename Scalar>
inline constexpr Scalar pi = std::numbers::pi_v<Scalar>;

}  // namespace ehspin
