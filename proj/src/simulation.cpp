#include "lincov/simulation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lincov/errors.hpp"
#include "lincov/kernels.hpp"

namespace lincov {

NoiseSource::NoiseSource(std::uint64_t seed, NoiseKind kind, double variance)
    : engine_(seed), kind_(kind) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw ConfigError("noise: variance must be finite and > 0");
    scale_ = kind == NoiseKind::gaussian ? std::sqrt(variance) : std::sqrt(3.0 * variance);
}

double NoiseSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NoiseSource::standard_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
}

double NoiseSource::next() {
    if (kind_ == NoiseKind::gaussian) return scale_ * standard_normal();
    return scale_ * (2.0 * uniform() - 1.0);
}

std::vector<double> NoiseSource::take(std::size_t n) {
    std::vector<double> out(n);
    for (auto& x : out) x = next();
    return out;
}

std::vector<double> simulate_linear_process(const FilterWeights& weights,
                                            const SimConfig& config) {
    if (weights.coeffs.empty()) throw ConfigError("weights: empty filter");
    if (config.n_samples == 0) throw ConfigError("sim.n: must be >= 1");
    const std::size_t N = weights.size() - 1;
    if (config.burn_in < N)
        throw ConfigError("sim.burn_in: " + std::to_string(config.burn_in) +
                          " is shorter than the filter length " + std::to_string(N));
    NoiseSource source(config.seed, config.noise, config.variance);
    const auto noise = source.take(config.burn_in + config.n_samples);
    // The valid convolution starts at noise index N; skip to index burn_in.
    const std::span<const double> window(noise.data() + (config.burn_in - N),
                                         config.n_samples + N);
    return kernels::parallel::causal_filter(weights.coeffs, window);
}

std::vector<double> apply_filter(const FilterWeights& weights,
                                 std::span<const double> input) {
    if (weights.coeffs.empty()) throw ConfigError("weights: empty filter");
    if (input.size() <= weights.size() - 1)
        throw ConfigError("input: series shorter than the filter length");
    return kernels::parallel::causal_filter(weights.coeffs, input);
}

AcvfSequence empirical_acvf(std::span<const double> series, std::size_t k_max) {
    const std::size_t n = series.size();
    if (k_max >= n) throw RangeError("k_max: must be smaller than the series length");
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    std::vector<double> dev(n);
    for (std::size_t t = 0; t < n; ++t) dev[t] = series[t] - mean;
    auto sums = kernels::parallel::lagged_products(dev, k_max);
    for (auto& s : sums) s /= static_cast<double>(n);
    return AcvfSequence{std::move(sums), UnknownTail{}, {}};
}

OracleReport oracle_compare(const AcvfSequence& analytic,
                            const AcvfSequence& empirical, std::size_t k_max,
                            std::size_t n) {
    if (!analytic.covers(k_max) || empirical.max_lag() < k_max || empirical.values.empty())
        throw RangeError("oracle_compare: sequences must cover k_max");
    const auto& g = empirical.values;
    const long long J = static_cast<long long>(empirical.max_lag() - k_max);
    auto ge = [&](long long j) { return g[static_cast<std::size_t>(j < 0 ? -j : j)]; };

    OracleReport rep;
    rep.pass = true;
    for (std::size_t k = 0; k <= k_max; ++k) {
        const long long kk = static_cast<long long>(k);
        double var = 0.0;
        for (long long j = -J; j <= J; ++j) var += ge(j) * ge(j) + ge(j + kk) * ge(j - kk);
        var /= static_cast<double>(n);

        LagAgreement lag;
        lag.k = k;
        lag.analytic = analytic.at(kk);
        lag.empirical = g[k];
        lag.standard_error = var > 0.0 ? std::sqrt(var) : 0.0;
        const double diff = lag.empirical - lag.analytic;
        if (lag.standard_error > 0.0)
            lag.z = diff / lag.standard_error;
        else
            lag.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(lag.z));
        rep.pass = rep.pass && std::abs(lag.z) < kOracleZThreshold;
        rep.lags.push_back(lag);
    }
    return rep;
}

}  // namespace lincov
