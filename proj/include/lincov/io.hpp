#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lincov/acvf.hpp"
#include "lincov/models.hpp"
#include "lincov/simulation.hpp"

namespace lincov::io {

/// "sim" sub-object of a model spec.
struct SimSpec {
    std::size_t n = 0;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    NoiseKind noise = NoiseKind::gaussian;
};

/// {"ar": [..], "ma": [..], "sigma2": x, "d": optional, "sim": optional}.
/// "ar", "ma", "sigma2" may be omitted (defaults [], [], 1).
struct ModelSpec {
    FarimaSpec model;
    bool has_d = false;
    std::optional<SimSpec> sim;
};

/// Throws ParseError naming the offending field (unknown keys are rejected).
ModelSpec parse_model_spec(std::string_view json_text);
ModelSpec read_model_spec(const std::filesystem::path& path);

/// %.17g
std::string format_double(double x);

/// CSV "k,gamma_k" (plus ",trunc_bound" when the sequence carries one),
/// preceded by a "# tail ..." comment line when the tail is known.
void write_acvf_csv(std::ostream& out, const AcvfSequence& acvf);
AcvfSequence read_acvf_csv(std::istream& in);

/// CSV "n,psi_n".
void write_weights_csv(std::ostream& out, const FilterWeights& weights);

/// One value per line.
void write_series(std::ostream& out, const std::vector<double>& series);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace lincov::io
