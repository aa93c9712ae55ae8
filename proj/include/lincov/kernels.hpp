#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Inner loops shared by the covariance calculus and the simulator. Each
// kernel exists twice: a plain serial reference and an OpenMP version
// parallel over output index. Both accumulate every output in the same order
// (ascending summation index), so their results are bit-identical.

namespace lincov::kernels {

namespace serial {

/// out[k] = sum_{n=0}^{N-1-k} x[n] * x[n+k] for k = 0..k_max (zero when k >= N).
std::vector<double> lagged_products(std::span<const double> x, std::size_t k_max);

/// out[k] = sum_{h=-H}^{H} w[|h|] * x[|k+h|] for k = 0..k_max, where
/// H = w.size() - 1. Requires x.size() > k_max + H.
std::vector<double> symmetric_convolve(std::span<const double> w,
                                       std::span<const double> x,
                                       std::size_t k_max);

/// Causal filter, valid part only: out[t] = sum_{j=0}^{N} psi[j] * in[t + N - j]
/// for t = 0..in.size()-N-1 with N = psi.size() - 1.
std::vector<double> causal_filter(std::span<const double> psi,
                                  std::span<const double> in);

}  // namespace serial

namespace parallel {

std::vector<double> lagged_products(std::span<const double> x, std::size_t k_max);
std::vector<double> symmetric_convolve(std::span<const double> w,
                                       std::span<const double> x,
                                       std::size_t k_max);
std::vector<double> causal_filter(std::span<const double> psi,
                                  std::span<const double> in);

}  // namespace parallel

}  // namespace lincov::kernels
