#include "lincov/kernels.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

// Outputs are processed in blocks of kBlock; inside a block the summation
// index runs in the outer loop so the compiler can vectorize across outputs
// while each output still accumulates in ascending index order.

namespace lincov::kernels::parallel {

namespace {
constexpr std::size_t kBlock = 64;
}

std::vector<double> lagged_products(std::span<const double> x, std::size_t k_max) {
    std::vector<double> out(k_max + 1, 0.0);
    const std::size_t n = x.size();
    const std::size_t k_end = std::min(k_max + 1, n);
    const std::size_t blocks = (k_end + kBlock - 1) / kBlock;

#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t k0 = b * kBlock;
        const std::size_t k1 = std::min(k0 + kBlock, k_end);
        std::array<double, kBlock> acc{};
        // Rows i where every lag in the block is in range.
        const std::size_t full = n - (k1 - 1);
        for (std::size_t i = 0; i < full; ++i) {
            const double xi = x[i];
            const double* row = x.data() + i + k0;
            for (std::size_t k = 0; k < k1 - k0; ++k) acc[k] += xi * row[k];
        }
        for (std::size_t i = full; i < n; ++i) {
            for (std::size_t k = k0; k < k1 && i + k < n; ++k)
                acc[k - k0] += x[i] * x[i + k];
        }
        std::copy(acc.begin(), acc.begin() + (k1 - k0), out.begin() + k0);
    }
    return out;
}

std::vector<double> symmetric_convolve(std::span<const double> w,
                                       std::span<const double> x,
                                       std::size_t k_max) {
    if (w.empty()) return std::vector<double>(k_max + 1, 0.0);
    const long long H = static_cast<long long>(w.size()) - 1;
    if (x.size() <= k_max + static_cast<std::size_t>(H))
        throw std::out_of_range("symmetric_convolve: x too short");
    std::vector<double> out(k_max + 1, 0.0);
    const long long K = static_cast<long long>(k_max);

#pragma omp parallel for schedule(static)
    for (long long k = 0; k <= K; ++k) {
        double acc = 0.0;
        if (k >= H) {
            // k + h >= 0 for every h: plain strided access.
            const double* base = x.data() + (k - H);
            for (long long h = -H; h < 0; ++h) acc += w[static_cast<std::size_t>(-h)] * base[h + H];
            for (long long h = 0; h <= H; ++h) acc += w[static_cast<std::size_t>(h)] * base[h + H];
        } else {
            for (long long h = -H; h <= H; ++h) {
                const long long lag = k + h;
                acc += w[static_cast<std::size_t>(h < 0 ? -h : h)] *
                       x[static_cast<std::size_t>(lag < 0 ? -lag : lag)];
            }
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

std::vector<double> causal_filter(std::span<const double> psi,
                                  std::span<const double> in) {
    if (psi.empty() || in.size() < psi.size()) return {};
    const std::size_t N = psi.size() - 1;
    const std::size_t len = in.size() - N;
    std::vector<double> out(len, 0.0);
    const std::size_t blocks = (len + kBlock - 1) / kBlock;

#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t t0 = b * kBlock;
        const std::size_t width = std::min(kBlock, len - t0);
        std::array<double, kBlock> acc{};
        for (std::size_t j = 0; j <= N; ++j) {
            const double coeff = psi[j];
            const double* src = in.data() + t0 + N - j;
            for (std::size_t t = 0; t < width; ++t) acc[t] += coeff * src[t];
        }
        std::copy(acc.begin(), acc.begin() + width, out.begin() + t0);
    }
    return out;
}

}  // namespace lincov::kernels::parallel
