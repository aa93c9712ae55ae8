#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lincov/acvf.hpp"
#include "lincov/weights.hpp"

namespace lincov {

enum class NoiseKind { gaussian, uniform };

struct SimConfig {
    std::size_t n_samples = 1;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    NoiseKind noise = NoiseKind::gaussian;
    double variance = 1.0;
};

/// Reproducible white noise. The stream is fixed by:
///   engine:   std::mt19937_64 seeded with `seed`
///   uniform:  u = (engine() >> 11) * 2^-53, in [0, 1)
///   gaussian: Marsaglia polar method on (2u - 1, 2u - 1), rejecting s == 0 and
///             s >= 1; both variates of an accepted pair are used, first u*f
///             then v*f with f = sqrt(-2 ln s / s)
///   uniform-symmetric: sqrt(3 variance) * (2u - 1)
/// Gaussian draws are scaled by sqrt(variance).
class NoiseSource {
public:
    NoiseSource(std::uint64_t seed, NoiseKind kind, double variance);

    double next();
    std::vector<double> take(std::size_t n);

private:
    double uniform();
    double standard_normal();

    std::mt19937_64 engine_;
    NoiseKind kind_;
    double scale_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// X_t = sum_{n=0}^{N} psi_n b_{t-n} for the n_samples values that follow
/// burn_in noise draws. Throws ConfigError if burn_in < N or n_samples == 0.
std::vector<double> simulate_linear_process(const FilterWeights& weights,
                                            const SimConfig& config);

/// Valid part of the causal filter: output length input.size() - N.
/// Throws ConfigError if the input is not longer than N.
std::vector<double> apply_filter(const FilterWeights& weights,
                                 std::span<const double> input);

/// Biased estimator (1/n) sum_t (x_t - mean)(x_{t+k} - mean), tail unknown.
/// Throws RangeError unless k_max < series.size().
AcvfSequence empirical_acvf(std::span<const double> series, std::size_t k_max);

struct LagAgreement {
    std::size_t k = 0;
    double analytic = 0.0;
    double empirical = 0.0;
    double standard_error = 0.0;
    double z = 0.0;
};

struct OracleReport {
    std::vector<LagAgreement> lags;
    double max_abs_z = 0.0;
    bool pass = false;
};

inline constexpr double kOracleZThreshold = 3.0;

/// Per-lag z = (empirical - analytic) / se_k with Bartlett's approximation
///   se_k^2 = (1/n) sum_{|j|<=J} (g_j^2 + g_{j+k} g_{j-k}),   g = empirical,
/// J = empirical.max_lag() - k_max. Passes iff |z| < 3 at every lag <= k_max.
OracleReport oracle_compare(const AcvfSequence& analytic,
                            const AcvfSequence& empirical, std::size_t k_max,
                            std::size_t n);

}  // namespace lincov
