#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lincov {

struct ArmaModel;

/// Truncated causal filter psi_0..psi_N. For n >= tail_start the declared
/// envelope |psi_n| <= tail_const * tail_ratio^n holds on the computed range.
/// tail_ratio == 0 marks a filter with exactly finite support.
struct FilterWeights {
    std::vector<double> coeffs;
    double tail_ratio = 0.0;
    double tail_const = 0.0;
    std::size_t tail_start = 0;

    std::size_t size() const { return coeffs.size(); }
    double abs_sum() const;
    /// Bound on sum_{n>N} |psi_n| from the geometric envelope.
    double tail_abs_sum_bound() const;
};

inline constexpr std::size_t kMaxWeights = 100'000;
inline constexpr double kWeightsTailTolerance = 1e-14;

/// Power-series coefficients of theta(z)/phi(z) (the MA(infinity) form).
/// Without `n_max`, truncates at the first n where the tail envelope drops
/// below 1e-14 * sum |psi|, capped at 1e5. Throws NonStationary.
FilterWeights arma_psi_weights(const ArmaModel& model,
                               std::optional<std::size_t> n_max = std::nullopt);

/// Power-series coefficients of phi(z)/theta(z) (the inverse filter that maps
/// X_t back to innovations). Throws NonInvertible.
FilterWeights arma_pi_weights(const ArmaModel& model,
                              std::optional<std::size_t> n_max = std::nullopt);

/// Coefficients of (1 - z)^{-d}: psi_0 = 1, psi_n = psi_{n-1} (n - 1 + d) / n.
FilterWeights fractional_weights(double d, std::size_t n_max);

/// Wraps raw coefficients, estimating the tail ratio as the largest
/// |psi_{n+1}/psi_n| over the last 20 lags (zeros skipped, clamped < 1 - 1e-6).
FilterWeights weights_from_coeffs(std::vector<double> coeffs);

/// First n_max+1 coefficients of numerator/denominator by schoolbook long
/// division on an explicit remainder. No stationarity assumptions.
/// Throws DomainError when denominator[0] == 0.
std::vector<double> long_division_oracle(std::span<const double> numerator,
                                         std::span<const double> denominator,
                                         std::size_t n_max);

}  // namespace lincov
