#pragma once

#include <complex>
#include <Eigen/Dense>

namespace framecert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default relative rank cutoff; every certificate records the value used.
inline constexpr double kDefaultRtol = 1e-12;
// Relative floor for a certified lower frame bound: alpha > kAlphaFloor * beta.
inline constexpr double kAlphaFloor = 1e-10;
// Relative residual threshold for factorizations and weak expansions.
inline constexpr double kResidualTol = 1e-9;

}  // namespace framecert
