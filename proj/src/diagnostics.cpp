#include "lincov/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lincov/errors.hpp"

namespace lincov {

namespace {

constexpr double kBoundSlack = 1e-10;
constexpr double kBoundFloor = 1e-300;

double slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

bool within(double value, double bound) {
    return std::abs(value) <= bound * (1.0 + kBoundSlack) + kBoundFloor;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<std::size_t> geometric_lag_grid(std::size_t k_min, std::size_t k_max,
                                            int per_decade) {
    std::vector<std::size_t> grid;
    if (k_min == 0 || k_max < k_min) return grid;
    const double base = static_cast<double>(k_min);
    for (int i = 0;; ++i) {
        const double x = base * std::pow(10.0, static_cast<double>(i) / per_decade);
        const auto k = static_cast<std::size_t>(std::llround(x));
        if (k > k_max) break;
        if (grid.empty() || k > grid.back()) grid.push_back(k);
    }
    if (grid.back() != k_max) grid.push_back(k_max);
    return grid;
}

double berman_statistic(const AcvfSequence& acvf, std::size_t k) {
    if (k == 0) throw RangeError("k: the Berman statistic starts at lag 1");
    return std::abs(acvf.at(static_cast<long long>(k))) * std::log(static_cast<double>(k));
}

BermanReport berman_diagnostic(const AcvfSequence& acvf, std::size_t k_min,
                               std::size_t k_max) {
    if (k_min < 2) throw RangeError("k_min: must be >= 2");
    if (k_max < 10 * k_min) throw RangeError("k_max: must span at least one decade above k_min");
    if (!acvf.covers(k_max))
        throw RangeError("k_max: " + std::to_string(k_max) + " exceeds acvf range " +
                         std::to_string(acvf.max_lag()));

    auto b = [&](std::size_t k) { return berman_statistic(acvf, k); };

    BermanReport rep;
    rep.k_min = k_min;
    rep.k_max = k_max;
    for (std::size_t k : geometric_lag_grid(k_min, k_max)) rep.stats.emplace_back(k, b(k));

    const std::size_t first_hi = 10 * k_min;
    const std::size_t last_lo = (k_max + 9) / 10;
    for (std::size_t k = k_min; k <= first_hi; ++k)
        rep.first_decade_max = std::max(rep.first_decade_max, b(k));
    rep.last_decade_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = last_lo; k <= k_max; ++k) {
        const double x = b(k);
        rep.last_decade_max = std::max(rep.last_decade_max, x);
        rep.last_decade_min = std::min(rep.last_decade_min, x);
    }

    std::vector<std::pair<double, double>> pts;
    for (const auto& [k, x] : rep.stats)
        if (k >= last_lo && x > 0.0) pts.emplace_back(std::log(static_cast<double>(k)), std::log(x));
    rep.trend = slope(pts);

    if (rep.last_decade_max == 0.0)
        rep.verdict = Verdict::pass;
    else if (rep.last_decade_min > rep.first_decade_max)
        rep.verdict = Verdict::fail;
    else if (rep.last_decade_max < rep.first_decade_max && rep.trend < kBermanSlopeThreshold)
        rep.verdict = Verdict::pass;
    else
        rep.verdict = Verdict::inconclusive;
    return rep;
}

SummabilityReport summability_diagnostic(const AcvfSequence& acvf, double epsilon,
                                         std::size_t k_max) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon: must lie in (0, 1)");
    if (k_max < 1) throw RangeError("k_max: must be >= 1");
    if (!acvf.covers(k_max))
        throw RangeError("k_max: " + std::to_string(k_max) + " exceeds acvf range " +
                         std::to_string(acvf.max_lag()));

    SummabilityReport rep;
    rep.epsilon = epsilon;
    rep.k_max = k_max;

    std::vector<double> partial(k_max + 1, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k)
        partial[k] = partial[k - 1] + std::abs(acvf.at(static_cast<long long>(k))) /
                                          std::pow(static_cast<double>(k), epsilon);
    for (std::size_t K : geometric_lag_grid(1, k_max)) rep.partial_sums.emplace_back(K, partial[K]);

    const double total = partial[k_max];
    rep.last_decade_increment = total > 0.0 ? (total - partial[k_max / 10]) / total : 0.0;

    const double K1 = static_cast<double>(k_max + 1);
    bool certified = false;
    bool divergent = false;
    if (std::holds_alternative<ZeroTail>(acvf.tail)) {
        rep.tail_estimate = 0.0;
        certified = true;
    } else if (const auto* geo = std::get_if<GeometricTail>(&acvf.tail)) {
        rep.tail_estimate =
            geo->r == 0.0 ? 0.0
                          : geo->C * std::pow(geo->r, K1) / (std::pow(K1, epsilon) * (1.0 - geo->r));
        certified = true;
    } else if (const auto* power = std::get_if<PowerTail>(&acvf.tail)) {
        const double s = power->alpha + epsilon;
        rep.tail_estimate = s > 1.0 ? power->c * std::pow(static_cast<double>(k_max), 1.0 - s) / (s - 1.0)
                                    : std::numeric_limits<double>::infinity();
        certified = s > 1.0 + kPowerTailMargin;
        divergent = s < 1.0 - kPowerTailMargin;
    } else {
        rep.tail_estimate = std::numeric_limits<double>::quiet_NaN();
    }

    if (divergent)
        rep.verdict = Verdict::fail;
    else if (certified || rep.last_decade_increment < kCauchyRelativeIncrement)
        rep.verdict = Verdict::pass;
    else
        rep.verdict = Verdict::inconclusive;
    return rep;
}

ConditionReport condition_report(const AcvfSequence& acvf, std::size_t k_min,
                                 std::size_t k_max, double epsilon) {
    return ConditionReport{berman_diagnostic(acvf, k_min, k_max),
                           summability_diagnostic(acvf, epsilon, k_max)};
}

XiCheck check_xi_bounds(const AcvfSequence& gw, const AcvfSequence& gx,
                        const ExpBoundFit& envelope, std::size_t k) {
    const auto xi = xi_decomposition(gw, gx, k);
    const std::size_t H = plan_composition(gw).horizon;
    const double C = envelope.C;
    const double r = envelope.r;
    const double g0 = std::abs(gx.gamma0());
    const double kk = static_cast<double>(k);
    const double geom = r / (1.0 - r);

    XiCheck c;
    c.k = k;
    c.xi1 = xi.xi1;
    c.xi2 = xi.xi2;
    c.xi3 = xi.xi3;
    c.bound1 = C * g0 * std::pow(r, kk) * geom;

    double peak = 0.0;
    for (std::size_t j = k / 2 + 1; j + 1 <= k; ++j) {
        const double a = std::abs(gx.at(static_cast<long long>(j)));
        if (c.j_star == 0 || a > peak) {  // ties keep the smallest j
            peak = a;
            c.j_star = j;
        }
    }
    c.bound2 = C * g0 * std::pow(r, kk / 2.0) / (1.0 - r) + C * peak * geom;

    double s = 0.0;
    double rj = 1.0;
    for (std::size_t j = 0; j <= H; ++j) {
        s += rj * std::abs(gx.at(static_cast<long long>(k + j)));
        rj *= r;
    }
    c.bound3 = C * s;
    c.ok = within(c.xi1, c.bound1) && within(c.xi2, c.bound2) && within(c.xi3, c.bound3);
    return c;
}

TheoremReport theorem_check(const AcvfSequence& gw, const AcvfSequence& gx,
                            std::size_t k_min, std::size_t k_max, double epsilon) {
    TheoremReport rep;
    rep.envelope = fit_exponential_bound(gw);
    rep.input = condition_report(gx, k_min, k_max, epsilon);
    rep.composed = compose_acvf(gw, gx, k_max);
    rep.output = condition_report(rep.composed, k_min, k_max, epsilon);

    rep.xi_ok = true;
    for (std::size_t k : geometric_lag_grid(std::max<std::size_t>(2, k_min), k_max)) {
        rep.xi_checks.push_back(check_xi_bounds(gw, gx, rep.envelope, k));
        rep.xi_ok = rep.xi_ok && rep.xi_checks.back().ok;
    }
    rep.hypothesis_ok = rep.input.berman.verdict == Verdict::pass &&
                        rep.input.summability.verdict == Verdict::pass;
    rep.conclusion_ok = rep.output.berman.verdict == Verdict::pass &&
                        rep.output.summability.verdict == Verdict::pass;
    return rep;
}

}  // namespace lincov
