#pragma once

// Brute-force and independent reference computations used only by tests.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "lincov/models.hpp"
#include "lincov/polynomial.hpp"

namespace lincov::testing {

/// gamma^W_k = sum_n psi_n psi_{n+k} written as the literal double sum
/// sum_n sum_m psi_n psi_m [m - n == k].
inline std::vector<double> brute_self_acvf(const std::vector<double>& psi, std::size_t k_max) {
    std::vector<double> g(k_max + 1, 0.0);
    for (std::size_t n = 0; n < psi.size(); ++n)
        for (std::size_t m = n; m < psi.size(); ++m)
            if (m - n <= k_max) g[m - n] += psi[n] * psi[m];
    return g;
}

/// gamma^Y_k = sum_n sum_m psi_n psi_m gamma_{m-n+k} for a finite filter psi and
/// an input acvf given as a function of the (signed) lag.
template <class Gamma>
std::vector<double> brute_filtered_acvf(const std::vector<double>& psi, Gamma gamma,
                                        std::size_t k_max) {
    std::vector<double> out(k_max + 1, 0.0);
    for (std::size_t k = 0; k <= k_max; ++k) {
        double s = 0.0;
        for (std::size_t n = 0; n < psi.size(); ++n)
            for (std::size_t m = 0; m < psi.size(); ++m)
                s += psi[n] * psi[m] *
                     gamma(static_cast<long long>(m) - static_cast<long long>(n) +
                           static_cast<long long>(k));
        out[k] = s;
    }
    return out;
}

/// FARIMA(0, d, 0) autocovariance by quadrature of the spectral density
/// f(l) = sigma2 / (2 pi) |2 sin(l / 2)|^{-2d}.
inline double spectral_farima_acvf(double d, double sigma2, int k) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double l) {
        return std::pow(2.0 * std::sin(l / 2.0), -2.0 * d) * std::cos(k * l);
    };
    return sigma2 / std::numbers::pi * integrator.integrate(f, 0.0, std::numbers::pi);
}

inline double toeplitz_min_eigenvalue(const std::vector<double>& gamma, std::size_t K) {
    const auto n = static_cast<Eigen::Index>(K + 1);
    Eigen::MatrixXd T(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            T(i, j) = gamma[static_cast<std::size_t>(i > j ? i - j : j - i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

/// Monic-at-zero polynomial 1 + c_1 z + ... with every root of modulus in
/// [lo, hi]; roots are real or conjugate pairs.
inline Coeffs random_polynomial(std::mt19937_64& rng, std::size_t degree, double lo = 1.25,
                                double hi = 4.0) {
    std::uniform_real_distribution<double> modulus(lo, hi);
    std::uniform_real_distribution<double> angle(0.1, std::numbers::pi - 0.1);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::complex<double>> roots;
    while (roots.size() < degree) {
        if (degree - roots.size() >= 2 && coin(rng)) {
            const auto z = std::polar(modulus(rng), angle(rng));
            roots.push_back(z);
            roots.push_back(std::conj(z));
        } else {
            roots.emplace_back(coin(rng) ? modulus(rng) : -modulus(rng), 0.0);
        }
    }
    return polynomial_from_roots(roots);
}

/// ARMA(p <= 3, q <= 3), stationary and invertible.
inline ArmaModel random_arma(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> order(0, 3);
    const auto phi = random_polynomial(rng, order(rng));
    const auto theta = random_polynomial(rng, order(rng));
    ArmaModel m;
    for (std::size_t i = 1; i < phi.size(); ++i) m.ar.push_back(-phi[i]);
    for (std::size_t i = 1; i < theta.size(); ++i) m.ma.push_back(theta[i]);
    m.sigma2 = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    return m;
}

}  // namespace lincov::testing
