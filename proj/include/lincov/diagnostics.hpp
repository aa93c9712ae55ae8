#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "lincov/acvf.hpp"

namespace lincov {

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

/// Integer lags from k_min to k_max (both included), about `per_decade`
/// points per decade, strictly increasing.
std::vector<std::size_t> geometric_lag_grid(std::size_t k_min, std::size_t k_max,
                                            int per_decade = 50);

// Verdict thresholds. All are ratios, so verdicts do not change when the
// sequence is rescaled.
inline constexpr double kBermanSlopeThreshold = -0.05;
inline constexpr double kCauchyRelativeIncrement = 1e-6;
inline constexpr double kPowerTailMargin = 0.01;
inline constexpr double kDefaultEpsilon = 0.8;
inline constexpr std::size_t kDefaultLagMax = 100'000;

struct BermanReport {
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    std::vector<std::pair<std::size_t, double>> stats;  ///< (k, |gamma_k| ln k)
    double trend = 0.0;  ///< log-log slope of b_k over the last decade; NaN if undefined
    double first_decade_max = 0.0;
    double last_decade_max = 0.0;
    double last_decade_min = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

struct SummabilityReport {
    double epsilon = kDefaultEpsilon;
    std::size_t k_max = 0;
    std::vector<std::pair<std::size_t, double>> partial_sums;  ///< (K, S_K)
    double last_decade_increment = 0.0;  ///< (S_K - S_{K/10}) / S_K, 0 when S_K == 0
    double tail_estimate = 0.0;          ///< bound on sum_{k>K}; +inf/NaN when none
    Verdict verdict = Verdict::inconclusive;
};

struct ConditionReport {
    BermanReport berman;
    SummabilityReport summability;
};

/// b_k = |gamma_k| ln k (natural log; b_1 = 0).
double berman_statistic(const AcvfSequence& acvf, std::size_t k);

/// Berman statistic b_k = |gamma_k| ln k on a geometric grid over
/// [k_min, k_max]. Pass: the last decade's max is below the first decade's max
/// and the last-decade log-log slope is below -0.05 (or the last decade is
/// identically zero). Fail: the last decade's min exceeds the first decade's max.
/// Throws RangeError unless 2 <= k_min, 10 k_min <= k_max and the sequence
/// covers k_max.
BermanReport berman_diagnostic(const AcvfSequence& acvf, std::size_t k_min,
                               std::size_t k_max);

/// Partial sums S_K = sum_{k=1}^{K} |gamma_k| / k^epsilon. Throws DomainError
/// unless 0 < epsilon < 1.
SummabilityReport summability_diagnostic(const AcvfSequence& acvf, double epsilon,
                                         std::size_t k_max);

ConditionReport condition_report(const AcvfSequence& acvf, std::size_t k_min,
                                 std::size_t k_max, double epsilon);

/// The three bounds used to control xi_1, xi_2, xi_3 at lag k, evaluated with an
/// envelope (C, r) for gamma^W.
struct XiCheck {
    std::size_t k = 0;
    double xi1 = 0.0, xi2 = 0.0, xi3 = 0.0;
    double bound1 = 0.0;  ///< C gx_0 r^k r / (1 - r)
    double bound2 = 0.0;  ///< C gx_0 r^{k/2} / (1 - r) + C |gx_{j*}| r / (1 - r)
    double bound3 = 0.0;  ///< C sum_{j=0}^{H} r^j |gx_{k+j}|
    std::size_t j_star = 0;  ///< argmax |gx_j| on [floor(k/2)+1, k-1]; 0 when empty
    bool ok = false;
};

XiCheck check_xi_bounds(const AcvfSequence& gw, const AcvfSequence& gx,
                        const ExpBoundFit& envelope, std::size_t k);

struct TheoremReport {
    ExpBoundFit envelope;
    ConditionReport input;   ///< diagnostics on gamma^X (the hypothesis)
    ConditionReport output;  ///< diagnostics on gamma^Y
    std::vector<XiCheck> xi_checks;
    AcvfSequence composed;
    bool hypothesis_ok = false;  ///< gamma^X passes both conditions
    bool xi_ok = false;
    bool conclusion_ok = false;  ///< gamma^Y passes both conditions
};

/// Composes gx through the filter whose self-acvf is gw, diagnoses both ends and
/// checks the xi bounds at every grid lag in [max(2, k_min), k_max].
/// Throws NoGeometricEnvelope when gw violates the filter hypothesis.
TheoremReport theorem_check(const AcvfSequence& gw, const AcvfSequence& gx,
                            std::size_t k_min, std::size_t k_max, double epsilon);

}  // namespace lincov
