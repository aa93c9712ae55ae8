#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lincov {

/// Coefficients c_0 + c_1 z + ... + c_n z^n, lowest degree first.
using Coeffs = std::vector<double>;

/// Roots of the polynomial with coefficients `c` (lowest degree first).
/// Trailing zero coefficients are dropped; a constant polynomial has no roots.
/// Eigenvalues of the companion matrix, polished with Newton steps.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> c);

/// Full linear convolution (polynomial product).
Coeffs convolve(std::span<const double> a, std::span<const double> b);

/// Expands prod_i (1 - z / root_i) into real coefficients. Complex roots must
/// come in conjugate pairs; imaginary parts of the result are discarded.
Coeffs polynomial_from_roots(std::span<const std::complex<double>> roots);

}  // namespace lincov
