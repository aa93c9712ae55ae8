#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lincov/acvf.hpp"
#include "lincov/diagnostics.hpp"
#include "lincov/errors.hpp"
#include "lincov/io.hpp"
#include "lincov/models.hpp"
#include "lincov/simulation.hpp"
#include "lincov/weights.hpp"

namespace lincov::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::size_t kBartlettLags = 1000;

struct Options {
    std::string model;
    std::string filter;
    std::string gw_path;
    std::string gx_path;
    std::string acvf_path;
    std::string manifest_path;
    std::string direction = "psi";
    std::string output;
    std::optional<std::size_t> k_max;
    std::size_t k_min = 2;
    std::optional<std::size_t> n_max;
    std::optional<std::uint64_t> seed;
    double epsilon = kDefaultEpsilon;
    bool strict = false;
};

json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

json berman_json(const BermanReport& b) {
    json stats = json::array();
    for (const auto& [k, v] : b.stats) stats.push_back({{"k", k}, {"b", number(v)}});
    return {{"stats", stats},
            {"trend", number(b.trend)},
            {"k_min", b.k_min},
            {"k_max", b.k_max},
            {"first_decade_max", number(b.first_decade_max)},
            {"last_decade_max", number(b.last_decade_max)},
            {"verdict", std::string(to_string(b.verdict))}};
}

json summability_json(const SummabilityReport& s) {
    json sums = json::array();
    for (const auto& [K, v] : s.partial_sums) sums.push_back({{"K", K}, {"S", number(v)}});
    return {{"epsilon", s.epsilon},
            {"partial_sums", sums},
            {"last_decade_increment", number(s.last_decade_increment)},
            {"tail_estimate", number(s.tail_estimate)},
            {"verdict", std::string(to_string(s.verdict))}};
}

json xi_json(const XiCheck& c) {
    return {{"k", c.k},           {"xi1", c.xi1},       {"xi2", c.xi2},
            {"xi3", c.xi3},       {"bound1", c.bound1}, {"bound2", c.bound2},
            {"bound3", c.bound3}, {"j_star", c.j_star}, {"ok", c.ok}};
}

// Coefficients of a * b up to degree n_max.
std::vector<double> truncated_product(const std::vector<double>& a,
                                      const std::vector<double>& b, std::size_t n_max) {
    std::vector<double> out(n_max + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && i <= n_max; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= n_max; ++j) out[i + j] += a[i] * b[j];
    return out;
}

FilterWeights model_weights(const io::ModelSpec& spec, const std::string& direction,
                            std::optional<std::size_t> n_max) {
    const bool inverse = direction == "pi";
    if (!inverse && direction != "psi")
        throw ParseError("direction: expected 'psi' or 'pi', got '" + direction + "'");
    const auto& arma = spec.model.arma;
    if (spec.model.d == 0.0)
        return inverse ? arma_pi_weights(arma, n_max) : arma_psi_weights(arma, n_max);
    const std::size_t n = n_max.value_or(kMaxWeights);
    const auto short_part = inverse ? arma_pi_weights(arma) : arma_psi_weights(arma);
    const auto fractional = fractional_weights(inverse ? -spec.model.d : spec.model.d, n);
    return weights_from_coeffs(truncated_product(short_part.coeffs, fractional.coeffs, n));
}

AcvfSequence filter_acvf(const FilterWeights& w) {
    return filter_self_acvf(w, w.size() - 1);
}

class Runner {
public:
    Runner(std::vector<std::string> args, std::ostream& out, std::ostream& err)
        : args_(std::move(args)), out_(out), err_(err) {}

    int acvf(const Options& o) {
        const auto spec = io::read_model_spec(o.model);
        const std::size_t k_max = o.k_max.value_or(100);
        std::ostringstream body;
        io::write_acvf_csv(body, farima_acvf(spec.model, k_max));
        emit(o, body.str(), {o.model}, {{"k_max", k_max}});
        return kExitOk;
    }

    int weights(const Options& o) {
        const auto spec = io::read_model_spec(o.model);
        std::ostringstream body;
        io::write_weights_csv(body, model_weights(spec, o.direction, o.n_max));
        json params = {{"direction", o.direction}};
        if (o.n_max) params["n_max"] = *o.n_max;
        emit(o, body.str(), {o.model}, params);
        return kExitOk;
    }

    int compose(const Options& o) {
        const auto gw = read_acvf(o.gw_path);
        const auto gx = read_acvf(o.gx_path);
        const std::size_t k_max = o.k_max.value_or(gx.max_lag() - plan_composition(gw).horizon);
        std::ostringstream body;
        io::write_acvf_csv(body, compose_acvf(gw, gx, k_max));
        emit(o, body.str(), {o.gw_path, o.gx_path}, {{"k_max", k_max}});
        return kExitOk;
    }

    int check(const Options& o) {
        const auto acvf = read_acvf(o.acvf_path);
        const std::size_t k_max =
            o.k_max.value_or(acvf.covers(kDefaultLagMax) ? kDefaultLagMax : acvf.max_lag());
        const auto rep = condition_report(acvf, o.k_min, k_max, o.epsilon);
        const json doc = {{"berman", berman_json(rep.berman)},
                          {"summability", summability_json(rep.summability)},
                          {"xi_checks", json::array()}};
        emit(o, doc.dump(2) + "\n", {o.acvf_path},
             {{"epsilon", o.epsilon}, {"k_min", o.k_min}, {"k_max", k_max}});
        const bool failed = rep.berman.verdict == Verdict::fail ||
                            rep.summability.verdict == Verdict::fail;
        return o.strict && failed ? kExitVerdictFailure : kExitOk;
    }

    int theorem(const Options& o) {
        const auto x_spec = io::read_model_spec(o.model);
        const auto f_spec = io::read_model_spec(o.filter);
        const std::size_t k_max = o.k_max.value_or(kDefaultLagMax);
        const json params = {{"direction", o.direction}, {"epsilon", o.epsilon},
                             {"k_min", o.k_min},         {"k_max", k_max}};

        const auto gw = filter_acvf(model_weights(f_spec, o.direction, o.n_max));
        json doc;
        doc["filter"] = {{"direction", o.direction}};
        bool failed = false;
        try {
            const auto horizon = plan_composition(gw).horizon;
            const auto gx = farima_acvf(x_spec.model, k_max + horizon);
            const auto rep = theorem_check(gw, gx, o.k_min, k_max, o.epsilon);
            doc["filter"]["envelope"] = {{"C", rep.envelope.C},
                                         {"r", rep.envelope.r},
                                         {"binding_lag", rep.envelope.binding_lag}};
            doc["input"] = {{"berman", berman_json(rep.input.berman)},
                            {"summability", summability_json(rep.input.summability)}};
            doc["berman"] = berman_json(rep.output.berman);
            doc["summability"] = summability_json(rep.output.summability);
            json xi = json::array();
            for (const auto& c : rep.xi_checks) xi.push_back(xi_json(c));
            doc["xi_checks"] = xi;
            doc["hypothesis_ok"] = rep.hypothesis_ok;
            doc["xi_ok"] = rep.xi_ok;
            doc["conclusion_ok"] = rep.conclusion_ok;
            failed = !rep.xi_ok || rep.output.berman.verdict == Verdict::fail ||
                     rep.output.summability.verdict == Verdict::fail;
        } catch (const NoGeometricEnvelope& e) {
            doc["hypothesis_ok"] = false;
            doc["hypothesis_failure"] = std::string("filter: ") + e.what();
            failed = true;
        } catch (const TailUnknown& e) {
            doc["hypothesis_ok"] = false;
            doc["hypothesis_failure"] = std::string("filter: ") + e.what();
            failed = true;
        }
        emit(o, doc.dump(2) + "\n", {o.model, o.filter}, params);
        return o.strict && failed ? kExitVerdictFailure : kExitOk;
    }

    int simulate(const Options& o) {
        if (o.output.empty()) throw ParseError("--output: required for simulate");
        const auto spec = io::read_model_spec(o.model);
        if (!spec.sim) throw ParseError("sim: required for simulate");
        const std::size_t k_max = o.k_max.value_or(20);
        const std::size_t n = spec.sim->n;
        if (n <= k_max + 1) throw ParseError("sim.n: must exceed k_max + 1");

        const auto x_weights = model_weights(spec, "psi", o.n_max);
        std::optional<FilterWeights> f_weights;
        if (!o.filter.empty()) f_weights = model_weights(io::read_model_spec(o.filter), o.direction, std::nullopt);
        const std::size_t extra = f_weights ? f_weights->size() - 1 : 0;

        SimConfig config{n + extra, spec.sim->burn_in, o.seed.value_or(spec.sim->seed),
                         spec.sim->noise, spec.model.arma.sigma2};
        auto series = simulate_linear_process(x_weights, config);
        if (f_weights) series = apply_filter(*f_weights, series);

        const std::size_t bartlett = std::min(kBartlettLags, n - 1 - k_max);
        const auto empirical = empirical_acvf(series, k_max + bartlett);

        AcvfSequence analytic;
        if (f_weights) {
            const auto gw = filter_acvf(*f_weights);
            const auto gx = farima_acvf(spec.model, k_max + plan_composition(gw).horizon);
            analytic = compose_acvf(gw, gx, k_max);
        } else {
            analytic = farima_acvf(spec.model, k_max);
        }
        const auto report = oracle_compare(analytic, empirical, k_max, n);

        json lags = json::array();
        for (const auto& l : report.lags)
            lags.push_back({{"k", l.k},
                            {"analytic", l.analytic},
                            {"empirical", l.empirical},
                            {"se", l.standard_error},
                            {"z", number(l.z)}});
        const json oracle = {{"n", n},         {"k_max", k_max},   {"bartlett_lags", bartlett},
                             {"lags", lags},   {"max_abs_z", number(report.max_abs_z)},
                             {"pass", report.pass}};

        AcvfSequence empirical_head{
            std::vector<double>(empirical.values.begin(), empirical.values.begin() + k_max + 1),
            UnknownTail{}, {}};
        std::ostringstream series_text, acvf_text;
        io::write_series(series_text, series);
        io::write_acvf_csv(acvf_text, empirical_head);

        const fs::path base = o.output;
        io::write_file_atomic(base.string() + ".acvf.csv", acvf_text.str());
        io::write_file_atomic(base.string() + ".oracle.json", oracle.dump(2) + "\n");
        std::vector<std::string> inputs{o.model};
        if (!o.filter.empty()) inputs.push_back(o.filter);
        json params = {{"k_max", k_max}, {"seed", config.seed}, {"n", n}, {"direction", o.direction}};
        if (o.n_max) params["n_max"] = *o.n_max;
        emit(o, series_text.str(), inputs, params,
             {base.string() + ".acvf.csv", base.string() + ".oracle.json"});
        return o.strict && !report.pass ? kExitVerdictFailure : kExitOk;
    }

    int replay(const Options& o) {
        json manifest;
        try {
            manifest = json::parse(io::read_file(o.manifest_path));
        } catch (const json::exception& e) {
            throw ParseError(std::string("manifest: invalid JSON: ") + e.what());
        }
        if (!manifest.contains("argv") || !manifest["argv"].is_array())
            throw ParseError("manifest.argv: missing");
        const auto argv = manifest["argv"].get<std::vector<std::string>>();
        if (argv.size() < 2 || argv[1] == "replay") throw ParseError("manifest.argv: not replayable");
        return run(argv, out_, err_);
    }

private:
    AcvfSequence read_acvf(const std::string& path) {
        std::istringstream in(io::read_file(path));
        return io::read_acvf_csv(in);
    }

    void emit(const Options& o, const std::string& body, const std::vector<std::string>& inputs,
              const json& params, const std::vector<std::string>& extra_outputs = {}) {
        if (o.output.empty()) {
            out_ << body;
            return;
        }
        io::write_file_atomic(o.output, body);
        std::vector<std::string> outputs{o.output};
        outputs.insert(outputs.end(), extra_outputs.begin(), extra_outputs.end());
        const json manifest = {{"version", kVersion},
                               {"command", args_.size() > 1 ? args_[1] : ""},
                               {"argv", args_},
                               {"inputs", inputs},
                               {"parameters", params},
                               {"outputs", outputs}};
        io::write_file_atomic(o.output + ".manifest.json", manifest.dump(2) + "\n");
    }

    std::vector<std::string> args_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Autocovariance calculus for stationary linear filters", "lincov"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options o;

    auto output = [&](CLI::App* cmd) {
        cmd->add_option("--output", o.output, "Write results to this file (atomically) plus a manifest");
    };
    auto strict = [&](CLI::App* cmd) {
        cmd->add_flag("--strict", o.strict, "Exit 1 when a verdict is 'fail'");
    };
    auto lags = [&](CLI::App* cmd, const char* k_max_help) {
        cmd->add_option("--k-min", o.k_min, "Smallest diagnosed lag (>= 2)")->capture_default_str();
        cmd->add_option("--k-max", o.k_max, k_max_help);
    };
    auto epsilon = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon", o.epsilon, "Exponent of the summability condition, in (0, 1)")
            ->capture_default_str();
    };
    auto direction = [&](CLI::App* cmd, const char* help) {
        cmd->add_option("--direction", o.direction, help)->check(CLI::IsMember({"psi", "pi"}));
    };

    auto* acvf = app.add_subcommand("acvf", "Exact autocovariances of a model spec");
    acvf->add_option("model", o.model, "Model spec JSON")->required();
    acvf->add_option("--k-max", o.k_max, "Largest lag (default 100)");
    output(acvf);

    auto* weights = app.add_subcommand("weights", "Filter weights of a model spec");
    weights->add_option("model", o.model, "Model spec JSON")->required();
    direction(weights, "psi: theta/phi expansion; pi: phi/theta (inverse filter)");
    weights->add_option("--n-max", o.n_max,
                        "Largest index (default: automatic truncation, 1e5 for fractional models)");
    output(weights);

    auto* compose = app.add_subcommand("compose", "Autocovariances of gx filtered by the filter with self-acvf gw");
    compose->add_option("gw", o.gw_path, "Filter autocovariance CSV")->required();
    compose->add_option("gx", o.gx_path, "Input autocovariance CSV")->required();
    compose->add_option("--k-max", o.k_max, "Largest output lag (default: as far as gx allows)");
    output(compose);

    auto* check = app.add_subcommand("check", "Diagnose the Berman and summability conditions");
    check->add_option("acvf", o.acvf_path, "Autocovariance CSV")->required();
    epsilon(check);
    lags(check, "Largest diagnosed lag (default 1e5 or the stored range)");
    strict(check);
    output(check);

    auto* theorem = app.add_subcommand("theorem", "Filter a model's autocovariances and check both conditions end to end");
    theorem->add_option("model", o.model, "Model spec JSON for the input series")->required();
    theorem->add_option("filter", o.filter, "Model spec JSON defining the filter")->required();
    direction(theorem, "Filter weights from the filter model: pi (default) or psi");
    theorem->add_option("--n-max", o.n_max, "Filter truncation (default automatic)");
    epsilon(theorem);
    lags(theorem, "Largest diagnosed lag (default 1e5)");
    strict(theorem);
    output(theorem);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo oracle: simulate, estimate, compare");
    simulate->add_option("model", o.model, "Model spec JSON with a \"sim\" object")->required();
    simulate->add_option("--filter", o.filter, "Optional model spec whose weights filter the simulated series");
    direction(simulate, "Weights taken from --filter: pi (default) or psi");
    simulate->add_option("--k-max", o.k_max, "Largest compared lag (default 20)");
    simulate->add_option("--n-max", o.n_max, "Truncation of the simulated model's weights");
    simulate->add_option("--seed", o.seed, "Override sim.seed");
    strict(simulate);
    output(simulate);

    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("manifest", o.manifest_path, "Manifest JSON written next to an output")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "lincov: " << e.what() << '\n';
        return kExitInputError;
    }

    const bool inverse_default = theorem->parsed() || simulate->parsed();
    if (inverse_default && theorem->get_option("--direction")->count() == 0 &&
        simulate->get_option("--direction")->count() == 0)
        o.direction = "pi";

    Runner runner(args, out, err);
    try {
        if (acvf->parsed()) return runner.acvf(o);
        if (weights->parsed()) return runner.weights(o);
        if (compose->parsed()) return runner.compose(o);
        if (check->parsed()) return runner.check(o);
        if (theorem->parsed()) return runner.theorem(o);
        if (simulate->parsed()) return runner.simulate(o);
        if (replay->parsed()) return runner.replay(o);
    } catch (const Error& e) {
        err << "lincov: " << e.what() << '\n';
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "lincov: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace lincov::cli
