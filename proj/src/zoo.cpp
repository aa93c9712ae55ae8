#include "lincov/zoo.hpp"

namespace lincov {

namespace {

ZooEntry arma(std::string name, std::vector<double> ar, std::vector<double> ma,
              double sigma2 = 1.0, bool invertible = true) {
    return ZooEntry{std::move(name), FarimaSpec{0.0, ArmaModel{std::move(ar), std::move(ma), sigma2}},
                    invertible};
}

ZooEntry farima(std::string name, double d, std::vector<double> ar = {},
                std::vector<double> ma = {}) {
    return ZooEntry{std::move(name), FarimaSpec{d, ArmaModel{std::move(ar), std::move(ma), 1.0}},
                    true};
}

}  // namespace

const std::vector<ZooEntry>& model_zoo() {
    static const std::vector<ZooEntry> zoo = {
        arma("white_noise", {}, {}, 2.0),
        arma("ar1_0.5", {0.5}, {}),
        arma("ar1_0.9", {0.9}, {}),
        arma("ar1_-0.7", {-0.7}, {}),
        arma("ma1_0.4", {}, {0.4}),
        arma("ma2", {}, {0.5, -0.3}),
        arma("arma11", {0.5}, {0.4}),
        arma("ar2_real_roots", {1.5, -0.56}, {}),
        arma("arma21_complex_roots", {1.0, -0.5}, {0.3}),
        arma("ma1_noninvertible", {}, {2.0}, 1.0, false),
        farima("farima_0.3", 0.3),
        farima("farima_0.2", 0.2),
        farima("farima_-0.3", -0.3),
        farima("farima_1_0.2_1", 0.2, {0.5}, {0.4}),
    };
    return zoo;
}

AcvfSequence zoo_acvf(const ZooEntry& entry, std::size_t k_max) {
    return farima_acvf(entry.spec, k_max);
}

}  // namespace lincov
