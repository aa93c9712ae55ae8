#include "lincov/kernels.hpp"

#include <stdexcept>

namespace lincov::kernels::serial {

std::vector<double> lagged_products(std::span<const double> x, std::size_t k_max) {
    std::vector<double> out(k_max + 1, 0.0);
    const std::size_t n = x.size();
    for (std::size_t k = 0; k <= k_max && k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) acc += x[i] * x[i + k];
        out[k] = acc;
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
    for (std::size_t k = 0; k <= k_max; ++k) {
        const long long kk = static_cast<long long>(k);
        double acc = 0.0;
        for (long long h = -H; h <= H; ++h) {
            const long long lag = kk + h;
            acc += w[static_cast<std::size_t>(h < 0 ? -h : h)] *
                   x[static_cast<std::size_t>(lag < 0 ? -lag : lag)];
        }
        out[k] = acc;
    }
    return out;
}

std::vector<double> causal_filter(std::span<const double> psi,
                                  std::span<const double> in) {
    if (psi.empty() || in.size() < psi.size()) return {};
    const std::size_t N = psi.size() - 1;
    const std::size_t len = in.size() - N;
    std::vector<double> out(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= N; ++j) acc += psi[j] * in[t + N - j];
        out[t] = acc;
    }
    return out;
}

}  // namespace lincov::kernels::serial
