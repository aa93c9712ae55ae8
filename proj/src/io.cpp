#include "lincov/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "lincov/errors.hpp"

namespace lincov::io {

using nlohmann::json;

namespace {

std::vector<double> number_list(const json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string(field) + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw ParseError(std::string(field) + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(j[i].get<double>());
    }
    return out;
}

double number(const json& j, const char* field) {
    if (!j.is_number()) throw ParseError(std::string(field) + ": expected a number");
    return j.get<double>();
}

std::uint64_t count(const json& j, const char* field) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParseError(std::string(field) + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

SimSpec parse_sim(const json& j) {
    if (!j.is_object()) throw ParseError("sim: expected an object");
    SimSpec sim;
    bool has_n = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "n") {
            sim.n = count(value, "sim.n");
            has_n = true;
        } else if (key == "burn_in") {
            sim.burn_in = count(value, "sim.burn_in");
        } else if (key == "seed") {
            sim.seed = count(value, "sim.seed");
        } else if (key == "noise") {
            if (!value.is_string()) throw ParseError("sim.noise: expected \"gaussian\" or \"uniform\"");
            const auto s = value.get<std::string>();
            if (s == "gaussian")
                sim.noise = NoiseKind::gaussian;
            else if (s == "uniform")
                sim.noise = NoiseKind::uniform;
            else
                throw ParseError("sim.noise: expected \"gaussian\" or \"uniform\", got \"" + s + "\"");
        } else {
            throw ParseError("sim." + key + ": unknown key");
        }
    }
    if (!has_n || sim.n == 0) throw ParseError("sim.n: required and must be >= 1");
    return sim;
}

double parse_double(std::string_view text, const std::string& where) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(where + ": cannot parse number '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        parts.push_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

TailDescriptor parse_tail(std::string_view line) {
    // "# tail geometric C=.. r=..", "# tail power c=.. alpha=..", "# tail zero"
    std::istringstream in{std::string(line)};
    std::string hash, word, kind;
    in >> hash >> word >> kind;
    if (word != "tail") return UnknownTail{};
    auto field = [&](const char* name) {
        std::string token;
        const std::string prefix = std::string(name) + "=";
        while (in >> token)
            if (token.rfind(prefix, 0) == 0) return parse_double(token.substr(prefix.size()), "tail");
        throw ParseError(std::string("tail: missing ") + name);
    };
    if (kind == "geometric") {
        const double C = field("C");
        const double r = field("r");
        return GeometricTail{C, r};
    }
    if (kind == "power") {
        const double c = field("c");
        const double alpha = field("alpha");
        return PowerTail{c, alpha};
    }
    if (kind == "zero") return ZeroTail{};
    if (kind == "unknown") return UnknownTail{};
    throw ParseError("tail: unknown descriptor '" + kind + "'");
}

}  // namespace

ModelSpec parse_model_spec(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("model spec: expected a JSON object");

    ModelSpec spec;
    auto& arma = spec.model.arma;
    for (const auto& [key, value] : j.items()) {
        if (key == "ar") {
            arma.ar = number_list(value, "ar");
        } else if (key == "ma") {
            arma.ma = number_list(value, "ma");
        } else if (key == "sigma2") {
            arma.sigma2 = number(value, "sigma2");
            if (!(arma.sigma2 > 0.0)) throw ParseError("sigma2: must be > 0");
        } else if (key == "d") {
            spec.model.d = number(value, "d");
            spec.has_d = true;
            if (!(std::abs(spec.model.d) < 0.5)) throw ParseError("d: must satisfy |d| < 0.5");
        } else if (key == "sim") {
            spec.sim = parse_sim(value);
        } else {
            throw ParseError(key + ": unknown key");
        }
    }
    return spec;
}

ModelSpec read_model_spec(const std::filesystem::path& path) {
    return parse_model_spec(read_file(path));
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_acvf_csv(std::ostream& out, const AcvfSequence& acvf) {
    if (const auto* geo = std::get_if<GeometricTail>(&acvf.tail))
        out << "# tail geometric C=" << format_double(geo->C) << " r=" << format_double(geo->r) << '\n';
    else if (const auto* power = std::get_if<PowerTail>(&acvf.tail))
        out << "# tail power c=" << format_double(power->c) << " alpha=" << format_double(power->alpha)
            << '\n';
    else if (std::holds_alternative<ZeroTail>(acvf.tail))
        out << "# tail zero\n";

    const bool bounds = !acvf.truncation_bound.empty();
    out << (bounds ? "k,gamma_k,trunc_bound\n" : "k,gamma_k\n");
    for (std::size_t k = 0; k < acvf.values.size(); ++k) {
        out << k << ',' << format_double(acvf.values[k]);
        if (bounds) out << ',' << format_double(acvf.truncation_bound[k]);
        out << '\n';
    }
}

AcvfSequence read_acvf_csv(std::istream& in) {
    AcvfSequence acvf;
    std::string line;
    bool header = false;
    bool bounds = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line.find("tail") != std::string::npos) acvf.tail = parse_tail(line);
            continue;
        }
        const auto parts = split(line, ',');
        if (!header) {
            if (parts.size() < 2 || parts[0] != "k" || parts[1] != "gamma_k")
                throw ParseError("acvf csv: header must start with 'k,gamma_k'");
            bounds = parts.size() >= 3 && parts[2] == "trunc_bound";
            header = true;
            continue;
        }
        const std::string where = "acvf csv line " + std::to_string(line_no);
        if (parts.size() < 2) throw ParseError(where + ": expected k,gamma_k");
        const double k = parse_double(parts[0], where + " k");
        if (k != static_cast<double>(acvf.values.size()))
            throw ParseError(where + ": lags must run 0,1,2,... without gaps");
        acvf.values.push_back(parse_double(parts[1], where + " gamma_k"));
        if (bounds && parts.size() >= 3)
            acvf.truncation_bound.push_back(parse_double(parts[2], where + " trunc_bound"));
    }
    if (!header) throw ParseError("acvf csv: missing header 'k,gamma_k'");
    if (acvf.values.empty()) throw ParseError("acvf csv: no rows");
    if (!acvf.truncation_bound.empty() && acvf.truncation_bound.size() != acvf.values.size())
        throw ParseError("acvf csv: trunc_bound column incomplete");
    return acvf;
}

void write_weights_csv(std::ostream& out, const FilterWeights& weights) {
    out << "n,psi_n\n";
    for (std::size_t n = 0; n < weights.coeffs.size(); ++n)
        out << n << ',' << format_double(weights.coeffs[n]) << '\n';
}

void write_series(std::ostream& out, const std::vector<double>& series) {
    for (double x : series) out << format_double(x) << '\n';
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("output: cannot open " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw ConfigError("output: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError("output: cannot rename into " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("input: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace lincov::io
