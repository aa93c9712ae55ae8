#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lincov/acvf.hpp"
#include "lincov/polynomial.hpp"

namespace lincov {

/// phi(B) X_t = theta(B) a_t with
///   phi(z)   = 1 - ar[0] z - ... - ar[p-1] z^p
///   theta(z) = 1 + ma[0] z + ... + ma[q-1] z^q
/// and Var(a_t) = sigma2.
struct ArmaModel {
    std::vector<double> ar;
    std::vector<double> ma;
    double sigma2 = 1.0;

    Coeffs ar_polynomial() const;
    Coeffs ma_polynomial() const;
    /// Throws DomainError unless sigma2 > 0 and every coefficient is finite.
    void validate() const;
};

/// FARIMA(p, d, q): (1 - B)^d phi(B) X_t = theta(B) a_t, |d| < 0.5.
struct FarimaSpec {
    double d = 0.0;
    ArmaModel arma;
};

/// Roots that lie at modulus <= 1 + kUnitCircleTolerance count as on or inside
/// the unit circle.
inline constexpr double kUnitCircleTolerance = 1e-10;

struct RootReport {
    std::vector<std::complex<double>> roots;
    std::vector<double> moduli;
    double min_modulus = 0.0;  ///< +inf for a constant polynomial
    bool ok = true;
};

RootReport check_stationary(const ArmaModel& model);
RootReport check_invertible(const ArmaModel& model);

/// Exact autocovariances gamma_0..gamma_{k_max}: the first max(p, q) + 1 lags
/// from the Yule-Walker system, the rest from the AR recursion. The tail is a
/// geometric envelope fitted over an extended range, or ZeroTail for pure MA.
AcvfSequence arma_acvf(const ArmaModel& model, std::size_t k_max);

/// FARIMA autocovariances. For d != 0 the fractional part uses
/// gamma_{k+1} = gamma_k (k + d) / (k + 1 - d) anchored at
/// sigma2 Gamma(1 - 2d) / Gamma(1 - d)^2, composed with the ARMA part's
/// gamma^W when p + q > 0. d == 0 defers to arma_acvf.
AcvfSequence farima_acvf(const FarimaSpec& spec, std::size_t k_max);

}  // namespace lincov
