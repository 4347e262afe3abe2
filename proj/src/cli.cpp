#include "qtransfer/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtransfer/channel.hpp"
#include "qtransfer/compare.hpp"
#include "qtransfer/entpur.hpp"
#include "qtransfer/errors.hpp"
#include "qtransfer/estimate.hpp"
#include "qtransfer/qubitpur.hpp"
#include "qtransfer/validate.hpp"

namespace qtransfer::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultMcSamples = 1'000'000;

struct RunConfig {
    std::string command;
    std::optional<int> n;
    std::vector<int> n_values;
    std::optional<int> n_max;
    std::optional<double> lambda0;
    std::string method;
    std::string methods = "all";
    int grid_points = 50;
    bool mc = false;
    std::optional<std::uint64_t> mc_samples;
    std::uint64_t seed = 0;
    bool distribution = false;
    double tolerance = 1e-12;
    std::optional<std::string> output_path;
    std::string format = "csv";
    bool format_given = false;
    int precision = 12;
};

// Value as it would read back from its formatted text, so JSON and CSV agree.
double rounded(double v, int precision) { return std::stod(format_real(v, precision)); }

int emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
    if (!cfg.output_path) {
        out << text;
        return kOk;
    }
    std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << *cfg.output_path << "' for writing\n";
        return kIoError;
    }
    file << text;
    file.flush();
    if (!file) {
        err << "error: failed writing '" << *cfg.output_path << "'\n";
        return kIoError;
    }
    return kOk;
}

std::vector<Method> parse_methods(const std::string& spec) {
    if (spec == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
    std::vector<Method> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_method(item));
    if (out.empty()) throw InputError("--methods: empty method list");
    return out;
}

std::string rows_csv(const std::vector<SweepRow>& rows, int precision) {
    std::string s = "method,N,lambda0,fidelity\n";
    for (const auto& r : rows) {
        s += to_string(r.method);
        s += ',' + std::to_string(r.n) + ',' + format_real(r.lambda0, precision) + ',' +
             format_real(r.fidelity, precision) + '\n';
    }
    return s;
}

Json row_json(const SweepRow& r, int precision) {
    return Json{{"method", to_string(r.method)},
                {"N", r.n},
                {"lambda0", rounded(r.lambda0, precision)},
                {"fidelity", rounded(r.fidelity, precision)}};
}

int cmd_single(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const WernerParam lam(*cfg.lambda0);
    require_protocol_range(lam, "single");
    const double f = single_shot_fidelity(lam);
    if (cfg.format == "json") {
        const Json j{{"lambda0", rounded(lam.value(), cfg.precision)},
                     {"fidelity", rounded(f, cfg.precision)}};
        return emit(cfg, j.dump() + '\n', out, err);
    }
    return emit(cfg, format_real(f, cfg.precision) + '\n', out, err);
}

int cmd_strategy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Method method = parse_method(cfg.method);
    const int n = *cfg.n;
    if (method != Method::estimation && !cfg.lambda0)
        throw InputError("strategy " + cfg.method + ": --lambda0 is required");

    Json j;
    j["method"] = to_string(method);
    j["n"] = n;
    if (cfg.lambda0) j["lambda0"] = rounded(*cfg.lambda0, cfg.precision);
    double fidelity = 0.0;

    switch (method) {
        case Method::estimation: {
            if (cfg.lambda0) (void)WernerParam(*cfg.lambda0);
            fidelity = estimation_fidelity(n).fidelity;
            j["fidelity"] = rounded(fidelity, cfg.precision);
            break;
        }
        case Method::qubit_pur: {
            const QubitPurResult r = average_fidelity(n, WernerParam(*cfg.lambda0));
            fidelity = r.expected_fidelity;
            j["fidelity"] = rounded(fidelity, cfg.precision);
            if (cfg.distribution) {
                Json table = Json::array();
                for (const auto& [m, p] : r.distribution.probs)
                    table.push_back({{"M", m},
                                     {"p", rounded(p, cfg.precision)},
                                     {"f", rounded(r.per_m_fidelity.at(m), cfg.precision)}});
                j["distribution"] = std::move(table);
            }
            break;
        }
        case Method::ent_pur: {
            const WernerParam lam(*cfg.lambda0);
            const bool sampled = cfg.mc || cfg.mc_samples.has_value();
            const EntPurResult r =
                sampled ? mc_simulate(n, lam, cfg.mc_samples.value_or(kDefaultMcSamples), cfg.seed)
                        : expected_fidelity_dp(n, lam);
            fidelity = r.expected_fidelity;
            j["fidelity"] = rounded(fidelity, cfg.precision);
            j["effective_fidelity"] = rounded(effective_entpur_fidelity(n, lam), cfg.precision);
            j["path_count"] = r.path_count;
            if (sampled) {
                j["mc_estimate"] = rounded(*r.mc_estimate, cfg.precision);
                j["mc_stderr"] = rounded(*r.mc_stderr, cfg.precision);
                j["samples"] = *r.samples;
                j["seed"] = *r.seed;
            }
            break;
        }
    }

    if (cfg.format_given && cfg.format == "csv") {
        const SweepRow row{method, n, cfg.lambda0.value_or(0.0), fidelity};
        std::string s = rows_csv({row}, cfg.precision);
        if (!cfg.lambda0) {
            // No channel parameter for estimation: leave the field empty.
            const auto line = s.find('\n') + 1;
            s = s.substr(0, line) + std::string(to_string(method)) + ',' + std::to_string(n) +
                ",," + format_real(fidelity, cfg.precision) + '\n';
        }
        return emit(cfg, s, out, err);
    }
    return emit(cfg, j.dump() + '\n', out, err);
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<int> ns = cfg.n_values;
    if (cfg.n_max) {
        if (*cfg.n_max < 1) throw InputError("--n-max must be positive");
        for (int n = 1; n <= *cfg.n_max; ++n) ns.push_back(n);
    }
    if (ns.empty()) throw InputError("sweep: give --n or --n-max");
    const std::vector<Method> methods = parse_methods(cfg.methods);
    const std::vector<SweepRow> rows = sweep(methods, ns, interior_grid(cfg.grid_points));

    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(row_json(r, cfg.precision));
        return emit(cfg, arr.dump() + '\n', out, err);
    }
    return emit(cfg, rows_csv(rows, cfg.precision), out, err);
}

int cmd_crossings(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (*cfg.n_max < 1) throw InputError("--n-max must be positive");
    std::vector<CrossingResult> results;
    for (int n = 1; n <= *cfg.n_max; ++n) results.push_back(crossing_points(n, cfg.tolerance));

    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& c : results) {
            Json row{{"N", c.n}};
            row["lambda1"] = c.lambda_1 ? Json(rounded(*c.lambda_1, cfg.precision)) : Json(nullptr);
            row["lambda2"] = c.lambda_2 ? Json(rounded(*c.lambda_2, cfg.precision)) : Json(nullptr);
            arr.push_back(std::move(row));
        }
        return emit(cfg, arr.dump() + '\n', out, err);
    }
    std::string s = "N,lambda1,lambda2\n";
    for (const auto& c : results) {
        s += std::to_string(c.n) + ',';
        if (c.lambda_1) s += format_real(*c.lambda_1, cfg.precision);
        s += ',';
        if (c.lambda_2) s += format_real(*c.lambda_2, cfg.precision);
        s += '\n';
    }
    return emit(cfg, s, out, err);
}

int cmd_validate(const RunConfig& cfg, const ClosedForms& forms, std::ostream& out,
                 std::ostream& err) {
    ValidationConfig vc;
    vc.seed = cfg.seed;
    if (cfg.mc_samples) vc.mc_samples = *cfg.mc_samples;
    const ValidationReport report = run_validation(vc, forms);

    Json checks = Json::array();
    std::vector<std::string> failed;
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"max_error", std::isfinite(c.max_error)
                                            ? Json(rounded(c.max_error, cfg.precision))
                                            : Json(nullptr)},
                          {"tolerance", c.tolerance}});
        if (!c.passed) failed.push_back(c.name);
    }
    const Json summary{{"passed", report.passed()},
                       {"seed", vc.seed},
                       {"mc_samples", vc.mc_samples},
                       {"checks", std::move(checks)}};
    if (const int rc = emit(cfg, summary.dump(2) + '\n', out, err); rc != kOk) return rc;
    if (!failed.empty()) {
        err << "validation failed:";
        for (const auto& f : failed) err << ' ' << f;
        err << '\n';
        return kValidationFailed;
    }
    return kOk;
}

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--precision", cfg.precision, "Significant digits of printed reals")
        ->check(CLI::Range(6, 17));
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->each([&cfg](const std::string&) { cfg.format_given = true; });
    cmd->add_option("-o,--output", cfg.output_path, "Write output to this file");
}

}  // namespace

std::string format_real(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run(args, out, err, ClosedForms::library());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const ClosedForms& forms) {
    CLI::App app{"Compare finite-resource qubit transfer strategies over a noisy channel",
                 "qtransfer"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* single = app.add_subcommand("single", "Fidelity of one teleportation");
    single->add_option("--lambda0", cfg.lambda0, "Werner parameter of the ebit")->required();
    add_output_options(single, cfg);

    auto* strategy = app.add_subcommand("strategy", "Average fidelity of one strategy");
    strategy->add_option("method", cfg.method, "ent, qubit or est")
        ->required()
        ->check(CLI::IsMember({"ent", "qubit", "est", "ent_pur", "qubit_pur", "estimation"}));
    strategy->add_option("--n", cfg.n, "Number of copies / ebits")->required();
    strategy->add_option("--lambda0", cfg.lambda0, "Werner parameter of the ebits");
    strategy->add_flag("--mc", cfg.mc, "Also run the Monte Carlo sampler (ent)");
    strategy->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples (ent)")
        ->check(CLI::PositiveNumber);
    strategy->add_option("--seed", cfg.seed, "Monte Carlo seed");
    strategy->add_flag("--distribution", cfg.distribution, "Include the p_M table (qubit)");
    add_output_options(strategy, cfg);

    auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity table over a lambda0 grid");
    sweep_cmd->add_option("--methods", cfg.methods, "all, or a comma list of ent,qubit,est");
    sweep_cmd->add_option("--n", cfg.n_values, "Copy counts (comma list)")->delimiter(',');
    sweep_cmd->add_option("--n-max", cfg.n_max, "Sweep N = 1..n-max");
    sweep_cmd->add_option("--grid", cfg.grid_points, "Interior lambda0 points in (1/4, 1)")
        ->check(CLI::Range(2, 1'000'000));
    add_output_options(sweep_cmd, cfg);

    auto* crossings = app.add_subcommand("crossings", "Crossing points with estimation");
    crossings->add_option("--n-max", cfg.n_max, "Largest N")->required();
    crossings->add_option("--tol", cfg.tolerance, "Bisection width")
        ->check(CLI::Range(1e-12, 0.1));
    add_output_options(crossings, cfg);

    auto* validate = app.add_subcommand("validate", "Run the oracle suite");
    validate->add_option("--seed", cfg.seed, "Seed for random inputs and Monte Carlo");
    validate->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples per case")
        ->check(CLI::PositiveNumber);
    validate->add_option("--precision", cfg.precision, "Significant digits of printed reals")
        ->check(CLI::Range(6, 17));
    validate->add_option("-o,--output", cfg.output_path, "Write the summary to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (single->parsed()) return cmd_single(cfg, out, err);
        if (strategy->parsed()) return cmd_strategy(cfg, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out, err);
        if (crossings->parsed()) return cmd_crossings(cfg, out, err);
        if (validate->parsed()) return cmd_validate(cfg, forms, out, err);
    } catch (const AmbiguityError& e) {
        err << "error: ambiguous crossing at N = " << e.n() << ": " << e.what() << '\n';
        return kAmbiguity;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace qtransfer::cli
