#include "lincov/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lincov/errors.hpp"
#include "lincov/models.hpp"

namespace lincov {

namespace {

constexpr double kRatioCeiling = 1.0 - 1e-6;
constexpr double kRootRateMargin = 0.005;
constexpr std::size_t kRatioWindow = 20;

// q_n = numerator_n + sum_{i>=1} feedback[i-1] q_{n-i}
std::vector<double> expand_rational(std::span<const double> feedback,
                                    std::span<const double> numerator,
                                    std::size_t n_max) {
    std::vector<double> q(n_max + 1, 0.0);
    for (std::size_t n = 0; n <= n_max; ++n) {
        double s = n < numerator.size() ? numerator[n] : 0.0;
        const std::size_t depth = std::min(n, feedback.size());
        for (std::size_t i = 1; i <= depth; ++i) s += feedback[i - 1] * q[n - i];
        q[n] = s;
    }
    return q;
}

// max_{n >= start} |c_n| / ratio^n, evaluated in log space.
double envelope_constant(const std::vector<double>& c, double ratio, std::size_t start) {
    const double log_ratio = std::log(ratio);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t n = start; n < c.size(); ++n) {
        if (c[n] == 0.0) continue;
        best = std::max(best, std::log(std::abs(c[n])) - static_cast<double>(n) * log_ratio);
    }
    return std::isinf(best) ? 0.0 : std::exp(best);
}

double sum_abs(const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += std::abs(x);
    return s;
}

// Expansion with a denominator whose slowest root gives decay rate `rho`.
FilterWeights expand_with_roots(std::span<const double> feedback,
                                std::span<const double> numerator, double rho,
                                std::optional<std::size_t> n_max) {
    FilterWeights w;
    if (feedback.empty()) {
        // Polynomial numerator: exactly finite support.
        const std::size_t len = n_max ? *n_max + 1 : numerator.size();
        w.coeffs.assign(len, 0.0);
        std::copy_n(numerator.begin(), std::min(len, numerator.size()), w.coeffs.begin());
        w.tail_start = numerator.size();
        return w;
    }
    w.tail_ratio = std::min(kRatioCeiling, rho + kRootRateMargin);
    w.tail_start = 0;

    if (n_max) {
        w.coeffs = expand_rational(feedback, numerator, *n_max);
        w.tail_const = envelope_constant(w.coeffs, w.tail_ratio, 0);
        return w;
    }

    std::size_t n = 64;
    for (;;) {
        w.coeffs = expand_rational(feedback, numerator, n);
        w.tail_const = envelope_constant(w.coeffs, w.tail_ratio, 0);
        const double target = kWeightsTailTolerance * sum_abs(w.coeffs);
        const double log_ratio = std::log(w.tail_ratio);
        if (w.tail_const > 0.0) {
            // smallest m with tail_const * ratio^m < target
            const double m_real = (std::log(target) - std::log(w.tail_const)) / log_ratio;
            const std::size_t m = m_real <= 0.0
                                      ? 0
                                      : static_cast<std::size_t>(std::floor(m_real)) + 1;
            if (m <= n) {
                w.coeffs.resize(std::max<std::size_t>(m, numerator.size()) + 1);
                return w;
            }
        }
        if (n >= kMaxWeights) return w;
        n = std::min(2 * n, kMaxWeights);
    }
}

}  // namespace

double FilterWeights::abs_sum() const { return sum_abs(coeffs); }

double FilterWeights::tail_abs_sum_bound() const {
    if (tail_ratio == 0.0 || coeffs.empty()) return 0.0;
    const double n = static_cast<double>(coeffs.size());
    return tail_const * std::pow(tail_ratio, n) / (1.0 - tail_ratio);
}

FilterWeights arma_psi_weights(const ArmaModel& model, std::optional<std::size_t> n_max) {
    model.validate();
    const auto roots = check_stationary(model);
    if (!roots.ok) {
        std::ostringstream os;
        os.precision(17);
        os << "ar: model is not stationary (min |root| = " << roots.min_modulus << ")";
        throw NonStationary(os.str());
    }
    const double rho = std::isinf(roots.min_modulus) ? 0.0 : 1.0 / roots.min_modulus;
    const auto numerator = model.ma_polynomial();
    return expand_with_roots(model.ar, numerator, rho, n_max);
}

FilterWeights arma_pi_weights(const ArmaModel& model, std::optional<std::size_t> n_max) {
    model.validate();
    const auto roots = check_invertible(model);
    if (!roots.ok) {
        std::ostringstream os;
        os.precision(17);
        os << "ma: model is not invertible (min |root| = " << roots.min_modulus << ")";
        throw NonInvertible(os.str());
    }
    const double rho = std::isinf(roots.min_modulus) ? 0.0 : 1.0 / roots.min_modulus;
    std::vector<double> feedback(model.ma.size());
    std::transform(model.ma.begin(), model.ma.end(), feedback.begin(),
                   [](double theta) { return -theta; });
    const auto numerator = model.ar_polynomial();
    return expand_with_roots(feedback, numerator, rho, n_max);
}

FilterWeights fractional_weights(double d, std::size_t n_max) {
    if (!(std::abs(d) < 0.5))
        throw DomainError("d: fractional order must satisfy |d| < 0.5");
    std::vector<double> c(n_max + 1);
    c[0] = 1.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        c[n] = c[n - 1] * (nn - 1.0 + d) / nn;
    }
    return weights_from_coeffs(std::move(c));
}

FilterWeights weights_from_coeffs(std::vector<double> coeffs) {
    FilterWeights w;
    w.coeffs = std::move(coeffs);
    const std::size_t len = w.coeffs.size();
    if (len < 2) {
        w.tail_start = len;
        return w;
    }
    const std::size_t first = len > kRatioWindow + 1 ? len - kRatioWindow - 1 : 0;
    double ratio = 0.0;
    for (std::size_t n = first; n + 1 < len; ++n) {
        if (w.coeffs[n] == 0.0 || w.coeffs[n + 1] == 0.0) continue;
        ratio = std::max(ratio, std::abs(w.coeffs[n + 1] / w.coeffs[n]));
    }
    if (ratio == 0.0) {
        std::size_t last = len;
        while (last > 0 && w.coeffs[last - 1] == 0.0) --last;
        w.tail_start = last;
        return w;
    }
    w.tail_ratio = std::min(ratio, kRatioCeiling);
    w.tail_start = first;
    w.tail_const = envelope_constant(w.coeffs, w.tail_ratio, first);
    return w;
}

std::vector<double> long_division_oracle(std::span<const double> numerator,
                                         std::span<const double> denominator,
                                         std::size_t n_max) {
    if (denominator.empty() || denominator[0] == 0.0)
        throw DomainError("denominator: constant term must be nonzero");
    std::vector<double> remainder(n_max + 1, 0.0);
    std::copy_n(numerator.begin(), std::min(numerator.size(), n_max + 1), remainder.begin());
    std::vector<double> quotient(n_max + 1, 0.0);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double q = remainder[n] / denominator[0];
        quotient[n] = q;
        // remainder -= q z^n denominator(z), keeping terms up to z^n_max
        for (std::size_t i = 0; i < denominator.size() && n + i <= n_max; ++i)
            remainder[n + i] -= q * denominator[i];
    }
    return quotient;
}

}  // namespace lincov
