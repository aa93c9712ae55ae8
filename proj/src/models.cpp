#include "lincov/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "lincov/errors.hpp"
#include "lincov/weights.hpp"

namespace lincov {

namespace {

RootReport root_report(const Coeffs& poly) {
    RootReport report;
    report.roots = polynomial_roots(poly);
    report.min_modulus = std::numeric_limits<double>::infinity();
    for (const auto& z : report.roots) {
        const double m = std::abs(z);
        report.moduli.push_back(m);
        report.min_modulus = std::min(report.min_modulus, m);
    }
    report.ok = report.min_modulus > 1.0 + kUnitCircleTolerance;
    return report;
}

std::string describe(const char* what, const RootReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << what << " (min |root| = " << r.min_modulus << ")";
    return os.str();
}

// Lags needed for |gamma_k| to fall about 1e-17 below gamma_0 when the
// slowest mode decays like rho^k.
std::size_t decay_length(double rho, std::size_t order) {
    if (rho <= 0.0) return order;
    const double lags = std::log(1e-17) / std::log(rho);
    const double capped = std::min(lags, 1e6);
    return static_cast<std::size_t>(std::ceil(capped)) + 4 * order + 16;
}

std::vector<double> fractional_acvf_values(double d, double sigma2, std::size_t k_max) {
    std::vector<double> g(k_max + 1);
    g[0] = sigma2 * std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
    for (std::size_t k = 0; k < k_max; ++k) {
        const double kk = static_cast<double>(k);
        g[k + 1] = g[k] * (kk + d) / (kk + 1.0 - d);
    }
    return g;
}

double sum_abs_two_sided(const std::vector<double>& g) {
    double s = std::abs(g.empty() ? 0.0 : g[0]);
    for (std::size_t k = 1; k < g.size(); ++k) s += 2.0 * std::abs(g[k]);
    return s;
}

}  // namespace

Coeffs ArmaModel::ar_polynomial() const {
    Coeffs c{1.0};
    for (double phi : ar) c.push_back(-phi);
    return c;
}

Coeffs ArmaModel::ma_polynomial() const {
    Coeffs c{1.0};
    for (double theta : ma) c.push_back(theta);
    return c;
}

void ArmaModel::validate() const {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw DomainError("sigma2: innovation variance must be finite and > 0");
    for (double phi : ar)
        if (!std::isfinite(phi)) throw DomainError("ar: coefficients must be finite");
    for (double theta : ma)
        if (!std::isfinite(theta)) throw DomainError("ma: coefficients must be finite");
}

RootReport check_stationary(const ArmaModel& model) {
    return root_report(model.ar_polynomial());
}

RootReport check_invertible(const ArmaModel& model) {
    return root_report(model.ma_polynomial());
}

AcvfSequence arma_acvf(const ArmaModel& model, std::size_t k_max) {
    model.validate();
    const auto roots = check_stationary(model);
    if (!roots.ok)
        throw NonStationary(describe("ar: model is not stationary", roots));

    const std::size_t p = model.ar.size();
    const std::size_t q = model.ma.size();
    const std::size_t m = std::max(p, q);
    const double rho = std::isinf(roots.min_modulus) ? 0.0 : 1.0 / roots.min_modulus;
    const std::size_t length = p == 0 ? std::max(k_max, m)
                                      : std::max(k_max, decay_length(rho, m));

    const auto psi = arma_psi_weights(model, q).coeffs;
    const auto theta = model.ma_polynomial();
    // rhs_k = sigma2 sum_{j=k}^{q} theta_j psi_{j-k}
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m + 1));
    for (std::size_t k = 0; k <= q; ++k) {
        double s = 0.0;
        for (std::size_t j = k; j <= q; ++j) s += theta[j] * psi[j - k];
        rhs[static_cast<Eigen::Index>(k)] = model.sigma2 * s;
    }
    // gamma_k - sum_i phi_i gamma_{|k-i|} = rhs_k, k = 0..m
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m + 1),
                                                       static_cast<Eigen::Index>(m + 1));
    for (std::size_t k = 0; k <= m; ++k)
        for (std::size_t i = 1; i <= p; ++i) {
            const std::size_t lag = k >= i ? k - i : i - k;
            system(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(lag)) -= model.ar[i - 1];
        }
    const Eigen::VectorXd head = system.partialPivLu().solve(rhs);

    std::vector<double> gamma(length + 1, 0.0);
    for (std::size_t k = 0; k <= m; ++k) gamma[k] = head[static_cast<Eigen::Index>(k)];
    for (std::size_t k = m + 1; k <= length; ++k) {
        double s = 0.0;
        for (std::size_t i = 1; i <= p; ++i) s += model.ar[i - 1] * gamma[k - i];
        // a subnormal recursion can round to a fixed point instead of decaying
        gamma[k] = std::abs(s) < std::numeric_limits<double>::min() ? 0.0 : s;
    }

    AcvfSequence out;
    if (p == 0) {
        out.tail = ZeroTail{};
    } else {
        const std::size_t fit_length = std::min(length, decay_length(rho, m));
        AcvfSequence extended{{gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(fit_length) + 1},
                              UnknownTail{},
                              {}};
        const auto fit = fit_exponential_bound(extended);
        if (fit.r == 0.0)
            out.tail = ZeroTail{};
        else
            out.tail = GeometricTail{fit.C, fit.r};
    }
    gamma.resize(k_max + 1);
    out.values = std::move(gamma);
    return out;
}

AcvfSequence farima_acvf(const FarimaSpec& spec, std::size_t k_max) {
    if (!(std::abs(spec.d) < 0.5))
        throw DomainError("d: fractional order must satisfy |d| < 0.5");
    if (spec.d == 0.0) return arma_acvf(spec.arma, k_max);
    spec.arma.validate();
    const auto roots = check_stationary(spec.arma);
    if (!roots.ok)
        throw NonStationary(describe("ar: model is not stationary", roots));

    const double d = spec.d;
    const double alpha = 1.0 - 2.0 * d;
    const double limit_ratio = std::exp(std::lgamma(1.0 - d) - std::lgamma(d));

    auto power_const = [&](const std::vector<double>& g) {
        // |gamma_k| k^alpha tends to gamma_0 |Gamma(1-d)/Gamma(d)|.
        double c = g[0] * limit_ratio;
        for (std::size_t k = 1; k < g.size(); ++k)
            c = std::max(c, std::abs(g[k]) * std::pow(static_cast<double>(k), alpha));
        return c;
    };

    if (spec.arma.ar.empty() && spec.arma.ma.empty()) {
        AcvfSequence out;
        out.values = fractional_acvf_values(d, spec.arma.sigma2, k_max);
        out.tail = PowerTail{power_const(out.values), alpha};
        return out;
    }

    ArmaModel unit = spec.arma;
    unit.sigma2 = 1.0;
    const auto psi = arma_psi_weights(unit);
    const auto gw = filter_self_acvf(psi, psi.size() - 1);
    const auto plan = plan_composition(gw);
    AcvfSequence gx;
    gx.values = fractional_acvf_values(d, spec.arma.sigma2, k_max + plan.horizon);
    gx.tail = PowerTail{power_const(gx.values), alpha};

    auto out = compose_acvf(gw, gx, k_max);
    out.tail = PowerTail{std::get<PowerTail>(gx.tail).c * sum_abs_two_sided(gw.values), alpha};
    return out;
}

}  // namespace lincov
