#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lincov/errors.hpp"
#include "lincov/models.hpp"
#include "lincov/polynomial.hpp"
#include "lincov/weights.hpp"
#include "oracles.hpp"

using namespace lincov;
namespace oracle = lincov::testing;

namespace {

std::vector<double> head(const std::vector<double>& v, std::size_t n) {
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

}  // namespace

TEST(LongDivision, Examples) {
    const auto q = long_division_oracle(std::vector<double>{1.0, 0.4},
                                        std::vector<double>{1.0, -0.5}, 2);
    ASSERT_EQ(q.size(), 3u);
    EXPECT_DOUBLE_EQ(q[0], 1.0);
    EXPECT_DOUBLE_EQ(q[1], 0.9);
    EXPECT_DOUBLE_EQ(q[2], 0.45);

    // 1 / (1 - z) = 1 + z + z^2 + ...
    const auto ones = long_division_oracle(std::vector<double>{1.0},
                                           std::vector<double>{1.0, -1.0}, 5);
    for (double c : ones) EXPECT_EQ(c, 1.0);

    // non-monic denominator
    const auto half = long_division_oracle(std::vector<double>{1.0},
                                           std::vector<double>{2.0}, 3);
    EXPECT_EQ(half, (std::vector<double>{0.5, 0.0, 0.0, 0.0}));

    EXPECT_THROW(long_division_oracle(std::vector<double>{1.0},
                                      std::vector<double>{0.0, 1.0}, 3),
                 DomainError);
}

TEST(PsiWeights, Ar1) {
    const auto w = arma_psi_weights(ArmaModel{{0.5}, {}, 1.0}, 10);
    ASSERT_EQ(w.size(), 11u);
    for (std::size_t n = 0; n <= 10; ++n) EXPECT_DOUBLE_EQ(w.coeffs[n], std::pow(0.5, n));
}

TEST(PsiWeights, Arma11MatchesLongDivision) {
    const ArmaModel m{{0.5}, {0.4}, 1.0};
    const auto w = arma_psi_weights(m, 30);
    const auto q = long_division_oracle(m.ma_polynomial(), m.ar_polynomial(), 30);
    EXPECT_DOUBLE_EQ(w.coeffs[1], 0.9);
    EXPECT_DOUBLE_EQ(w.coeffs[2], 0.45);
    for (std::size_t n = 0; n <= 30; ++n) EXPECT_NEAR(w.coeffs[n], q[n], 1e-15);
}

TEST(PiWeights, Ma1IsAlternatingGeometric) {
    const auto w = arma_pi_weights(ArmaModel{{}, {0.4}, 1.0}, 12);
    for (std::size_t n = 0; n <= 12; ++n) EXPECT_NEAR(w.coeffs[n], std::pow(-0.4, n), 1e-16);
}

TEST(PiWeights, Ar1HasFiniteSupport) {
    const auto w = arma_pi_weights(ArmaModel{{0.5}, {}, 1.0});
    ASSERT_GE(w.size(), 2u);
    EXPECT_EQ(w.coeffs[0], 1.0);
    EXPECT_EQ(w.coeffs[1], -0.5);
    for (std::size_t n = 2; n < w.size(); ++n) EXPECT_EQ(w.coeffs[n], 0.0);
    EXPECT_EQ(w.tail_ratio, 0.0);
}

TEST(PiWeights, NonInvertibleModelIsRejected) {
    try {
        arma_pi_weights(ArmaModel{{}, {2.0}, 1.0});
        FAIL() << "expected NonInvertible";
    } catch (const NonInvertible& e) {
        EXPECT_NE(std::string(e.what()).find("invertible"), std::string::npos);
    }
    EXPECT_THROW(arma_psi_weights(ArmaModel{{1.1}, {}, 1.0}), NonStationary);
}

TEST(Weights, ReconvolutionRecoversNumerator) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = oracle::random_arma(rng);
        const auto psi = arma_psi_weights(m, 100);
        const auto back = head(convolve(m.ar_polynomial(), psi.coeffs), 101);
        const auto theta = m.ma_polynomial();
        for (std::size_t n = 0; n <= 100; ++n) {
            const double want = n < theta.size() ? theta[n] : 0.0;
            EXPECT_NEAR(back[n], want, 1e-10);
        }
    }
}

TEST(Weights, PsiAndPiAreInverses) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = oracle::random_arma(rng);
        const auto psi = arma_psi_weights(m, 200);
        const auto pi = arma_pi_weights(m, 200);
        const auto delta = head(convolve(psi.coeffs, pi.coeffs), 201);
        EXPECT_NEAR(delta[0], 1.0, 1e-10);
        for (std::size_t n = 1; n <= 200; ++n) EXPECT_NEAR(delta[n], 0.0, 1e-10);
    }
}

TEST(Weights, RecursionMatchesLongDivisionOracle) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = oracle::random_arma(rng);
        const auto psi = arma_psi_weights(m, 150);
        const auto pi = arma_pi_weights(m, 150);
        const auto qpsi = long_division_oracle(m.ma_polynomial(), m.ar_polynomial(), 150);
        const auto qpi = long_division_oracle(m.ar_polynomial(), m.ma_polynomial(), 150);
        for (std::size_t n = 0; n <= 150; ++n) {
            EXPECT_NEAR(psi.coeffs[n], qpsi[n], 1e-12 * std::max(1.0, std::abs(qpsi[n])));
            EXPECT_NEAR(pi.coeffs[n], qpi[n], 1e-12 * std::max(1.0, std::abs(qpi[n])));
        }
    }
}

TEST(Weights, PiDecayRateFollowsSmallestMaRoot) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = oracle::random_arma(rng);
        if (m.ma.empty()) continue;
        const double rate = 1.0 / check_invertible(m).min_modulus;
        // "eventually": probe the largest index before the weights underflow
        const auto pi = arma_pi_weights(m, 5000);
        std::size_t n = pi.size() - 1;
        while (n > 0 && std::abs(pi.coeffs[n]) < 1e-280) --n;
        if (n < 200) continue;
        const double emp = std::pow(std::abs(pi.coeffs[n]), 1.0 / static_cast<double>(n));
        EXPECT_LE(emp, rate + 0.01) << "n=" << n;
    }
}

TEST(Weights, DefaultTruncationMeetsDeclaredTail) {
    for (const ArmaModel& m : {ArmaModel{{0.9}, {}, 1.0}, ArmaModel{{0.5}, {0.4}, 1.0},
                               ArmaModel{{1.0, -0.5}, {0.3}, 1.0},
                               ArmaModel{{1.5, -0.56}, {}, 1.0}}) {
        const auto w = arma_psi_weights(m);
        ASSERT_GT(w.tail_ratio, 0.0);
        ASSERT_LT(w.tail_ratio, 1.0);
        const double last = static_cast<double>(w.size() - 1);
        EXPECT_LT(w.tail_const * std::pow(w.tail_ratio, last), 1e-14 * w.abs_sum());
        // The declared envelope covers every computed coefficient and a longer
        // expansion beyond the truncation point.
        const auto longer = arma_psi_weights(m, 2 * w.size());
        for (std::size_t n = w.tail_start; n < longer.size(); ++n)
            EXPECT_LE(std::abs(longer.coeffs[n]),
                      w.tail_const * std::pow(w.tail_ratio, static_cast<double>(n)) * (1 + 1e-9))
                << n;
        double dropped = 0.0;
        for (std::size_t n = w.size(); n < longer.size(); ++n) dropped += std::abs(longer.coeffs[n]);
        EXPECT_LE(dropped, w.tail_abs_sum_bound() * (1 + 1e-9));
    }
}

TEST(Weights, NearUnitRootHitsCap) {
    const auto w = arma_psi_weights(ArmaModel{{0.9999}, {}, 1.0});
    EXPECT_LE(w.size(), kMaxWeights + 1);
    EXPECT_GT(w.size(), 10'000u);
}

TEST(FractionalWeights, Recursion) {
    const auto w = fractional_weights(0.3, 4);
    EXPECT_DOUBLE_EQ(w.coeffs[0], 1.0);
    EXPECT_DOUBLE_EQ(w.coeffs[1], 0.3);
    EXPECT_DOUBLE_EQ(w.coeffs[2], 0.3 * 1.3 / 2.0);
    EXPECT_DOUBLE_EQ(w.coeffs[3], 0.3 * 1.3 * 2.3 / 6.0);
    // (1-z)^d (1-z)^{-d} = 1
    const auto a = fractional_weights(0.3, 60);
    const auto b = fractional_weights(-0.3, 60);
    const auto one = head(convolve(a.coeffs, b.coeffs), 61);
    EXPECT_NEAR(one[0], 1.0, 1e-15);
    for (std::size_t n = 1; n <= 60; ++n) EXPECT_NEAR(one[n], 0.0, 1e-14);
    EXPECT_THROW(fractional_weights(0.5, 10), DomainError);
}

TEST(WeightsFromCoeffs, TailRatioEstimate) {
    std::vector<double> c(50);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = std::pow(0.7, n);
    const auto w = weights_from_coeffs(c);
    EXPECT_NEAR(w.tail_ratio, 0.7, 1e-12);
    const auto flat = weights_from_coeffs(std::vector<double>(30, 1.0));
    EXPECT_LT(flat.tail_ratio, 1.0);
}
