#pragma once

#include <string>
#include <vector>

#include "lincov/models.hpp"

namespace lincov {

/// Named reference models with closed-form or exactly computable
/// autocovariances. Everything here is stationary, and every entry with
/// `invertible == true` also has an invertible MA part.
struct ZooEntry {
    std::string name;
    FarimaSpec spec;
    bool invertible = true;
};

const std::vector<ZooEntry>& model_zoo();

/// Autocovariances of a zoo entry (FARIMA path, which reduces to ARMA at d = 0).
AcvfSequence zoo_acvf(const ZooEntry& entry, std::size_t k_max);

}  // namespace lincov
