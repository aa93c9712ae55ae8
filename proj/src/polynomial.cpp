#include "lincov/polynomial.hpp"

#include <Eigen/Eigenvalues>

namespace lincov {

namespace {

std::complex<double> horner(std::span<const double> c, std::complex<double> z,
                            std::complex<double>& derivative) {
    std::complex<double> value = 0.0;
    derivative = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        derivative = derivative * z + value;
        value = value * z + *it;
    }
    return value;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> c) {
    std::size_t degree = c.size();
    while (degree > 0 && c[degree - 1] == 0.0) --degree;
    if (degree <= 1) return {};
    const auto coeffs = c.first(degree);
    const Eigen::Index n = static_cast<Eigen::Index>(degree - 1);
    const double lead = coeffs[degree - 1];

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<std::complex<double>> roots;
    roots.reserve(degree - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::complex<double> z = solver.eigenvalues()[i];
        // Newton polish; keep the step only if it reduces the residual.
        for (int iter = 0; iter < 3; ++iter) {
            std::complex<double> dp;
            const auto p = horner(coeffs, z, dp);
            if (dp == 0.0) break;
            const auto candidate = z - p / dp;
            std::complex<double> unused;
            if (std::abs(horner(coeffs, candidate, unused)) >= std::abs(p)) break;
            z = candidate;
        }
        if (std::abs(z.imag()) <= 1e-14 * std::abs(z)) z = {z.real(), 0.0};
        roots.push_back(z);
    }
    return roots;
}

Coeffs convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Coeffs polynomial_from_roots(std::span<const std::complex<double>> roots) {
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& root : roots) {
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= poly[i] / root;
        }
        poly = std::move(next);
    }
    Coeffs out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) out[i] = poly[i].real();
    return out;
}

}  // namespace lincov
