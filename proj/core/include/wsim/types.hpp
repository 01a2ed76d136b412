// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace wsim {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Structural checks (unitarity, hermiticity, spectra).
inline constexpr double kStructuralTol = 1e-10;
// Elementwise equality assertions.
inline constexpr double kAssertTol = 1e-12;

// Locale-free decimal formatting with a fixed number of significant digits.
std::string format_significant(double v, int digits = 15);

// Round-trip exact formatting (17 significant digits).
std::string format_exact(double v);

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace wsim
