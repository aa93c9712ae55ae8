#include "lincov/acvf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lincov/errors.hpp"
#include "lincov/kernels.hpp"

namespace lincov {

namespace {

// Full-support autocovariances are computed (and fitted) when the filter has
// at most this many coefficients.
constexpr std::size_t kFullSupportLimit = 20'000;

// Decay-rate ratio separating geometric (2) from power-law (1) sequences.
constexpr double kGeometricRateRatio = 1.5;
constexpr double kRateCeiling = 1.0 - 1e-9;
constexpr double kEnvelopeSlack = 1e-12;

// Subnormal values carry too few significant bits to estimate a decay rate.
std::size_t last_normal(const std::vector<double>& v) {
    std::size_t last = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (std::abs(v[k]) >= std::numeric_limits<double>::min()) last = k;
    return last;
}

std::size_t last_nonzero(const std::vector<double>& v) {
    std::size_t last = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0.0) last = k;
    return last;
}

double window_max(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t k = lo; k < hi && k < v.size(); ++k) m = std::max(m, std::abs(v[k]));
    return m;
}

// Sub-geometric decay shows up as a log-decay over [K/2, K] no larger than
// over [K/8, K/4]; a geometric sequence decays twice as much.
bool looks_subgeometric(const std::vector<double>& v, std::size_t k_eff) {
    if (k_eff < 32) return false;
    const double a = window_max(v, k_eff / 8, k_eff / 4);
    const double b = window_max(v, k_eff / 4, k_eff / 2);
    const double d = window_max(v, k_eff / 2, k_eff + 1);
    if (a == 0.0 || b == 0.0 || d == 0.0) return false;
    const double early = std::log(a / b);
    const double late = std::log(b / d);
    if (late <= 0.0) return true;
    if (early <= 0.0) return false;
    return late / early < kGeometricRateRatio;
}

std::vector<double> padded_input(const AcvfSequence& gx, std::size_t length,
                                 const char* who) {
    if (!gx.covers(length - 1))
        throw InsufficientLags(std::string(who) + ": gx needs lags up to " +
                               std::to_string(length - 1) + ", has " +
                               std::to_string(gx.max_lag()));
    std::vector<double> x(length);
    for (std::size_t k = 0; k < length; ++k) x[k] = gx.at(static_cast<long long>(k));
    return x;
}

TailDescriptor composed_tail(const AcvfSequence& gw, const AcvfSequence& gx,
                             const AcvfSequence& out, std::size_t horizon,
                             std::size_t k_max) {
    if (const auto* power = std::get_if<PowerTail>(&gx.tail)) {
        double s = std::abs(gw.values[0]);
        for (std::size_t h = 1; h <= horizon; ++h) s += 2.0 * std::abs(gw.values[h]);
        return PowerTail{power->c * s, power->alpha};
    }
    const bool gw_finite = std::holds_alternative<ZeroTail>(gw.tail) ||
                           (std::holds_alternative<GeometricTail>(gw.tail) &&
                            std::get<GeometricTail>(gw.tail).r == 0.0);
    if (std::holds_alternative<ZeroTail>(gx.tail) && gw_finite &&
        k_max >= last_nonzero(gx.values) + horizon)
        return ZeroTail{};
    if (std::holds_alternative<ZeroTail>(gx.tail) ||
        std::holds_alternative<GeometricTail>(gx.tail)) {
        try {
            const auto fit = fit_exponential_bound(out);
            if (fit.r > 0.0) return GeometricTail{fit.C, fit.r};
        } catch (const Error&) {
        }
    }
    return UnknownTail{};
}

}  // namespace

double AcvfSequence::at(long long k) const {
    const auto lag = static_cast<std::size_t>(k < 0 ? -k : k);
    if (lag < values.size()) return values[lag];
    if (std::holds_alternative<ZeroTail>(tail)) return 0.0;
    throw RangeError("acvf: lag " + std::to_string(lag) + " beyond stored range " +
                     std::to_string(max_lag()));
}

bool AcvfSequence::covers(std::size_t lag) const {
    return lag < values.size() || std::holds_alternative<ZeroTail>(tail);
}

AcvfSequence filter_self_acvf(const FilterWeights& weights, std::size_t k_max) {
    AcvfSequence out;
    if (weights.coeffs.empty()) {
        out.values.assign(k_max + 1, 0.0);
        out.tail = ZeroTail{};
        return out;
    }
    const std::size_t support = weights.size() - 1;
    const bool full = support <= kFullSupportLimit;
    const std::size_t computed = full ? support : std::min(k_max, support);
    auto values = kernels::parallel::lagged_products(weights.coeffs, computed);

    if (weights.tail_ratio == 0.0) {
        out.tail = ZeroTail{};
    } else {
        try {
            const auto fit = fit_exponential_bound(AcvfSequence{values, UnknownTail{}, {}});
            if (fit.r > 0.0)
                out.tail = GeometricTail{fit.C, fit.r};
            else if (full)
                out.tail = ZeroTail{};
        } catch (const NoGeometricEnvelope&) {
            out.tail = UnknownTail{};
        }
    }
    values.resize(k_max + 1, 0.0);
    out.values = std::move(values);
    return out;
}

CompositionPlan plan_composition(const AcvfSequence& gw) {
    if (gw.values.empty()) throw DomainError("gw: empty sequence");
    CompositionPlan plan;
    if (std::holds_alternative<ZeroTail>(gw.tail)) {
        plan.horizon = last_nonzero(gw.values);
        return plan;
    }
    const auto* geo = std::get_if<GeometricTail>(&gw.tail);
    if (geo == nullptr)
        throw TailUnknown("gw: filter autocovariances need a geometric or zero tail");
    if (geo->r == 0.0) {
        plan.horizon = last_nonzero(gw.values);
        return plan;
    }
    const double C = geo->C;
    const double r = geo->r;
    const double gamma0 = std::abs(gw.gamma0());
    const double target = kCompositionTolerance * gamma0 * (1.0 - r) / (2.0 * C);
    // smallest H with r^{H+1} < target
    double h_real = std::log(target) / std::log(r) - 1.0;
    std::size_t horizon =
        h_real <= 0.0 ? 0 : static_cast<std::size_t>(std::min(std::floor(h_real) + 1.0, 1e7));
    horizon = std::min({horizon, kMaxHorizon, gw.max_lag()});
    plan.horizon = horizon;
    plan.residual_per_unit =
        2.0 * C * std::pow(r, static_cast<double>(horizon + 1)) / (1.0 - r);
    return plan;
}

AcvfSequence compose_acvf(const AcvfSequence& gw, const AcvfSequence& gx,
                          std::size_t k_max) {
    const auto plan = plan_composition(gw);
    const std::size_t H = plan.horizon;
    const auto x = padded_input(gx, k_max + H + 1, "compose_acvf");
    const std::span<const double> w(gw.values.data(), H + 1);

    AcvfSequence out;
    out.values = kernels::parallel::symmetric_convolve(w, x, k_max);
    out.truncation_bound.assign(k_max + 1, plan.residual_per_unit * std::abs(gx.gamma0()));
    out.tail = composed_tail(gw, gx, out, H, k_max);
    return out;
}

AcvfSequence compose_acvf_reflected(const AcvfSequence& gw, const AcvfSequence& gx,
                                    std::size_t k_max) {
    const auto plan = plan_composition(gw);
    const long long H = static_cast<long long>(plan.horizon);
    const auto x = padded_input(gx, k_max + plan.horizon + 1, "compose_acvf");

    AcvfSequence out;
    out.values.assign(k_max + 1, 0.0);
    for (std::size_t k = 0; k <= k_max; ++k) {
        const long long kk = static_cast<long long>(k);
        double acc = 0.0;
        for (long long h = H; h >= -H; --h) {
            const long long lag = kk - h;
            acc += gw.values[static_cast<std::size_t>(h < 0 ? -h : h)] *
                   x[static_cast<std::size_t>(lag < 0 ? -lag : lag)];
        }
        out.values[k] = acc;
    }
    out.truncation_bound.assign(k_max + 1, plan.residual_per_unit * std::abs(gx.gamma0()));
    out.tail = composed_tail(gw, gx, out, plan.horizon, k_max);
    return out;
}

XiTriple xi_decomposition(const AcvfSequence& gw, const AcvfSequence& gx,
                          std::size_t k) {
    if (k < 1) throw RangeError("xi_decomposition: k must be >= 1");
    const std::size_t H = plan_composition(gw).horizon;
    const auto x = padded_input(gx, k + H + 1, "xi_decomposition");
    const auto& w = gw.values;

    XiTriple t;
    t.k = k;
    for (std::size_t j = 1; k + j <= H; ++j) t.xi1 += w[k + j] * x[j];
    for (std::size_t j = k > H ? k - H : 0; j < k; ++j) t.xi2 += w[k - j] * x[j];
    for (std::size_t j = 0; j <= H; ++j) t.xi3 += w[j] * x[k + j];
    return t;
}

bool envelope_holds(const AcvfSequence& acvf, double C, double r) {
    const auto& v = acvf.values;
    if (v.empty()) return true;
    if (std::abs(v[0]) > C * (1.0 + kEnvelopeSlack)) return false;
    if (r == 0.0) {
        return std::all_of(v.begin() + 1, v.end(), [](double x) { return x == 0.0; });
    }
    const double log_c = std::log(C) + std::log1p(kEnvelopeSlack);
    const double log_r = std::log(r);
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (v[k] == 0.0) continue;
        if (std::log(std::abs(v[k])) > log_c + static_cast<double>(k) * log_r) return false;
    }
    return true;
}

ExpBoundFit fit_exponential_bound(const AcvfSequence& acvf) {
    const auto& v = acvf.values;
    if (v.empty()) throw DomainError("acvf: empty sequence");
    const double g0 = std::abs(v[0]);
    if (last_nonzero(v) == 0) return ExpBoundFit{g0, 0.0, 0};
    const std::size_t k_eff = std::max<std::size_t>(last_normal(v), 1);
    if (g0 == 0.0) throw DomainError("acvf: gamma_0 is zero but later lags are not");

    const double log_g0 = std::log(g0);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t binding = 0;
    for (std::size_t k = 1; k <= k_eff; ++k) {
        if (v[k] == 0.0) continue;
        const double rate = (std::log(std::abs(v[k])) - log_g0) / static_cast<double>(k);
        if (rate > best) {
            best = rate;
            binding = k;
        }
    }
    if (best > 1e-12) throw DomainError("acvf: |gamma_k| exceeds gamma_0");
    const double r_direct = std::exp(best);
    if (r_direct >= kRateCeiling || looks_subgeometric(v, k_eff))
        throw NoGeometricEnvelope(
            "acvf: decay is not geometric (|gamma_k|^(1/k) approaches 1)");

    // Bisection for the smallest r with |gamma_k| <= g0 r^k at every lag.
    auto holds = [&](double r) {
        const double log_r = std::log(r);
        for (std::size_t k = 1; k <= k_eff; ++k) {
            if (v[k] == 0.0) continue;
            if (std::log(std::abs(v[k])) - log_g0 > static_cast<double>(k) * log_r) return false;
        }
        return true;
    };
    double lo = r_direct * (1.0 - 1e-9);
    double hi = std::min(r_direct * (1.0 + 1e-9), kRateCeiling);
    if (!holds(hi)) hi = kRateCeiling;
    for (int iter = 0; iter < 100 && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (holds(mid) ? hi : lo) = mid;
    }
    const double r = hi;

    // Smallest C for this r (equals g0 up to rounding).
    const double log_r = std::log(r);
    double log_c = log_g0;
    for (std::size_t k = 1; k <= k_eff; ++k) {
        if (v[k] == 0.0) continue;
        log_c = std::max(log_c, std::log(std::abs(v[k])) - static_cast<double>(k) * log_r);
    }
    return ExpBoundFit{std::exp(log_c), r, binding};
}

}  // namespace lincov
