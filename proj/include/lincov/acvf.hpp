#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "lincov/weights.hpp"

namespace lincov {

/// |gamma_k| <= C * r^k for every k, including lags past the stored range.
struct GeometricTail {
    double C = 0.0;
    double r = 0.0;
};

/// |gamma_k| ~ c * k^-alpha past the stored range (asymptotic constant).
struct PowerTail {
    double c = 0.0;
    double alpha = 0.0;
};

/// gamma_k == 0 exactly past the stored range.
struct ZeroTail {};

struct UnknownTail {};

using TailDescriptor = std::variant<UnknownTail, GeometricTail, PowerTail, ZeroTail>;

/// Truncated autocovariance sequence gamma_0..gamma_K. gamma_{-k} = gamma_k is
/// implied. `truncation_bound`, when non-empty, holds a per-lag bound on the
/// error committed by truncating an infinite sum (same length as `values`).
struct AcvfSequence {
    std::vector<double> values;
    TailDescriptor tail = UnknownTail{};
    std::vector<double> truncation_bound;

    std::size_t max_lag() const { return values.empty() ? 0 : values.size() - 1; }
    double gamma0() const { return values.empty() ? 0.0 : values.front(); }

    /// Symmetric lookup; lags past the stored range resolve to zero only for a
    /// ZeroTail, otherwise RangeError.
    double at(long long k) const;

    /// True when `at(k)` is defined for every k <= lag.
    bool covers(std::size_t lag) const;
};

/// Constants of |gamma_k| <= C r^k. `binding_lag` is the lag at which the
/// envelope with C = |gamma_0| is tight; r == 0 means every lag k >= 1 is zero.
struct ExpBoundFit {
    double C = 0.0;
    double r = 0.0;
    std::size_t binding_lag = 0;
};

/// gamma^Y_k split into the three re-indexed partial sums of the filtered
/// covariance identity.
struct XiTriple {
    std::size_t k = 0;
    double xi1 = 0.0;  ///< sum_{j>=1} gw_{k+j} gx_j
    double xi2 = 0.0;  ///< sum_{j=0}^{k-1} gw_{k-j} gx_j
    double xi3 = 0.0;  ///< sum_{j>=0} gw_j gx_{k+j}

    double sum() const { return xi1 + xi2 + xi3; }
};

/// Truncation horizon for sums over gamma^W and the certified bound on what
/// the dropped terms contribute, in units of gamma^X_0.
struct CompositionPlan {
    std::size_t horizon = 0;
    double residual_per_unit = 0.0;
};

inline constexpr double kCompositionTolerance = 1e-12;
inline constexpr std::size_t kMaxHorizon = 1'000'000;

/// gamma^W_k = sum_n psi_n psi_{n+k}: the autocovariance of the filter driven by
/// unit-variance white noise.
AcvfSequence filter_self_acvf(const FilterWeights& weights, std::size_t k_max);

/// Horizon H such that 2 C r^{H+1} / (1 - r) < 1e-12 * gamma^W_0, clipped to
/// the stored range of `gw` and to 1e6. Throws TailUnknown if `gw` has neither
/// a geometric nor a zero tail.
CompositionPlan plan_composition(const AcvfSequence& gw);

/// gamma^Y_k = sum_{h=-H}^{H} gamma^W_h gamma^X_{k+h} for k = 0..k_max.
/// The result carries the per-lag truncation bound.
AcvfSequence compose_acvf(const AcvfSequence& gw, const AcvfSequence& gx,
                          std::size_t k_max);

/// Same sum evaluated with h -> -h (gamma^X_{k-h}); used as a consistency check.
AcvfSequence compose_acvf_reflected(const AcvfSequence& gw, const AcvfSequence& gx,
                                    std::size_t k_max);

XiTriple xi_decomposition(const AcvfSequence& gw, const AcvfSequence& gx,
                          std::size_t k);

/// Sup-based geometric envelope: r is the smallest rate with
/// |gamma_k| <= |gamma_0| r^k on every stored lag (found by bisection), and C is
/// the smallest constant that makes the envelope hold with that r.
/// Throws NoGeometricEnvelope for sub-geometric (e.g. power-law) decay.
ExpBoundFit fit_exponential_bound(const AcvfSequence& acvf);

/// |gamma_k| <= C r^k (1 + 1e-12) on every stored lag, compared in log space.
bool envelope_holds(const AcvfSequence& acvf, double C, double r);

}  // namespace lincov
