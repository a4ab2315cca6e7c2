// lexpfam command line: simulate datasets from the two bundled families, fit
// them with the dual-space fixed-point iteration, and audit stored traces
// for monotonicity. Exit codes: 0 success, 2 validation/parse error,
// 3 domain error during solve, 4 monotonicity violation.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexpfam/dirichlet.hpp"
#include "lexpfam/io.hpp"
#include "lexpfam/qgaussian.hpp"
#include "lexpfam/solver.hpp"

namespace {

using nlohmann::json;
using namespace lexpfam;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDomain = 3;
constexpr int kExitMonotonicity = 4;

struct InvalidManifest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Vec parse_list(const std::string& s) {
    Vec out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InvalidManifest("cannot parse number '" + tok + "' in list '" + s + "'");
        }
    }
    if (out.empty()) throw InvalidManifest("empty list '" + s + "'");
    return out;
}

std::string trace_path_for(const std::string& base, std::size_t index, std::size_t total) {
    if (total <= 1) return base;
    const std::filesystem::path p(base);
    std::filesystem::path stem = p.parent_path() / p.stem();
    return stem.string() + "_" + std::to_string(index) + p.extension().string();
}

// ---- simulate ----

struct SimulateArgs {
    std::string family;
    std::optional<double> lambda;
    std::optional<double> sigma;
    std::optional<double> theta;
    std::optional<std::string> p_list;
    int n = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_simulate(const SimulateArgs& a) {
    if (a.n < 1) throw InvalidManifest("--n must be >= 1");
    if (!a.seed) throw InvalidManifest("--seed is required for simulate");

    json manifest{{"schema_version", io::kSchemaVersion},
                  {"artifact_version", io::kArtifactVersion},
                  {"family", a.family},
                  {"n", a.n},
                  {"seed", *a.seed},
                  {"out", a.out}};

    if (a.family == "qgaussian") {
        if (!a.lambda) throw InvalidManifest("qgaussian needs --lambda");
        if (!a.theta) throw InvalidManifest("qgaussian needs --theta");
        if (!(*a.lambda < 0.0 && *a.lambda > -2.0)) {
            throw InvalidManifest("qgaussian needs lambda in (-2, 0)");
        }
        if (!(*a.theta < 0.0)) throw InvalidManifest("qgaussian needs theta < 0");
        QGaussianModel model{Curvature(*a.lambda)};
        const std::vector<double> xs = model.sample(*a.theta, a.n, *a.seed);
        std::vector<Vec> rows;
        rows.reserve(xs.size());
        for (double x : xs) rows.push_back(Vec{x});
        io::write_csv(a.out, {"x"}, rows);
        manifest["lambda"] = *a.lambda;
        manifest["theta"] = *a.theta;
    } else if (a.family == "dirichlet") {
        if (!a.sigma) throw InvalidManifest("dirichlet needs --sigma");
        if (!a.p_list) throw InvalidManifest("dirichlet needs --p");
        if (!(*a.sigma > 0.0)) throw InvalidManifest("dirichlet needs sigma > 0");
        Vec praw = parse_list(*a.p_list);
        if (praw.size() < 2) throw InvalidManifest("--p needs at least two components");
        SimplexPoint p = [&] {
            try {
                return SimplexPoint(praw);
            } catch (const InvalidParameter& e) {
                throw InvalidManifest(e.what());
            }
        }();
        const int d = p.dim();
        const auto qs = dp_sample(p, *a.sigma, a.n, *a.seed);
        std::vector<std::string> header;
        for (int j = 0; j <= d; ++j) header.push_back("q" + std::to_string(j));
        io::write_csv(a.out, header, as_points(qs));
        manifest["sigma"] = *a.sigma;
        manifest["p"] = p.coords();
        manifest["d"] = d;
    } else {
        throw InvalidManifest("unknown family '" + a.family + "'");
    }

    io::save_json(a.out + ".json", manifest);
    std::cout << manifest.dump(2) << '\n';
    return kExitOk;
}

// ---- fit ----

struct FitArgs {
    std::string family;
    std::optional<double> lambda;
    std::optional<double> sigma;
    std::string data_path;
    std::string init_rule;  // "mean" or empty
    std::vector<std::string> init_theta;
    std::vector<std::string> init_eta;
    double tol_step = 1e-12;
    double tol_residual = 1e-10;
    int max_iter = 500;
    std::optional<std::string> trace_path;
    std::optional<std::string> out_path;
};

struct InitSpec {
    std::string label;
    std::optional<NaturalParam> theta;
    std::optional<DualParam> eta;
};

int run_fit(const FitArgs& a) {
    std::unique_ptr<FamilyModel> model;
    std::vector<Vec> samples;

    // validation phase: exit 2 on anything wrong with flags or the dataset
    const io::CsvData csv = io::read_csv(a.data_path);
    if (a.family == "qgaussian") {
        if (!a.lambda) throw InvalidManifest("qgaussian needs --lambda");
        if (!(*a.lambda < 0.0 && *a.lambda > -2.0)) {
            throw InvalidManifest("qgaussian needs lambda in (-2, 0)");
        }
        if (csv.header.size() != 1) {
            throw ParseError(a.data_path + ": expected a single-column CSV for qgaussian");
        }
        model = std::make_unique<QGaussianModel>(Curvature(*a.lambda));
        samples = csv.rows;
    } else if (a.family == "dirichlet") {
        if (!a.sigma) throw InvalidManifest("dirichlet needs --sigma");
        if (!(*a.sigma > 0.0)) throw InvalidManifest("dirichlet needs sigma > 0");
        if (csv.header.size() < 2) {
            throw ParseError(a.data_path + ": expected at least two columns for dirichlet");
        }
        const int d = static_cast<int>(csv.header.size()) - 1;
        model = std::make_unique<DirichletPerturbationModel>(*a.sigma, d);
        for (std::size_t i = 0; i < csv.rows.size(); ++i) {
            try {
                samples.push_back(SimplexPoint(csv.rows[i]).coords());
            } catch (const InvalidParameter& e) {
                // header is line 1, so data row i sits on line i+2
                throw ParseError(a.data_path + " line " + std::to_string(i + 2) +
                                 ": not a simplex point (" + e.what() + ")");
            }
        }
    } else {
        throw InvalidManifest("unknown family '" + a.family + "'");
    }
    if (samples.empty()) throw ParseError(a.data_path + ": no data rows");

    if (!a.init_rule.empty() && a.init_rule != "mean") {
        throw InvalidManifest("unknown --init rule '" + a.init_rule + "' (supported: mean)");
    }
    std::vector<InitSpec> inits;
    for (const std::string& s : a.init_theta) {
        inits.push_back({"theta=" + s, NaturalParam(parse_list(s)), std::nullopt});
    }
    for (const std::string& s : a.init_eta) {
        inits.push_back({"eta=" + s, std::nullopt, DualParam(parse_list(s))});
    }
    if (inits.empty() || a.init_rule == "mean") {
        inits.insert(inits.begin(), {"mean", std::nullopt, std::nullopt});
    }

    const SufficientData data = SufficientData::from_samples(*model, std::move(samples));

    json fits = json::array();
    bool any_monotonicity_violation = false;
    for (std::size_t i = 0; i < inits.size(); ++i) {
        SolverConfig cfg;
        cfg.tol_step = a.tol_step;
        cfg.tol_residual = a.tol_residual;
        cfg.max_iter = a.max_iter;
        cfg.init_theta = inits[i].theta;
        cfg.init_eta = inits[i].eta;
        const FitResult fit = solve(*model, data, cfg);
        any_monotonicity_violation |= fit.termination == Termination::monotonicity_violation;

        json jf{{"init", inits[i].label},
                {"theta_hat", fit.theta_hat.coords()},
                {"eta_hat", fit.eta_hat.coords()},
                {"loglik", fit.loglik},
                {"iterations", fit.iterations},
                {"residual", fit.first_order_residual},
                {"termination", to_string(fit.termination)}};
        if (a.family == "dirichlet") {
            jf["p_hat"] = dp_p_from_eta(fit.eta_hat).coords();
        }
        if (a.trace_path) {
            const std::string tp = trace_path_for(*a.trace_path, i, inits.size());
            io::save_trace(tp, fit.trace);
            jf["trace"] = tp;
        }
        fits.push_back(std::move(jf));
    }

    json report{{"schema_version", io::kSchemaVersion},
                {"artifact_version", io::kArtifactVersion},
                {"family", a.family},
                {"data", a.data_path},
                {"n", data.n()},
                {"fits", fits}};
    if (a.lambda) report["lambda"] = *a.lambda;
    if (a.sigma) report["sigma"] = *a.sigma;
    // mirror the first fit at top level
    for (const auto& [key, value] : fits[0].items()) {
        if (key != "init" && key != "trace") report[key] = value;
    }

    std::cout << report.dump(2) << '\n';
    if (a.out_path) io::save_json(*a.out_path, report);
    return any_monotonicity_violation ? kExitMonotonicity : kExitOk;
}

// ---- audit ----

int run_audit(const std::string& trace_path, double slack) {
    const SolverTrace trace = io::load_trace(trace_path);
    const AuditReport report = monotonicity_audit(trace, slack);
    json j{{"schema_version", io::kSchemaVersion},
           {"trace", trace_path},
           {"records", trace.records.size()},
           {"loglik_violations", report.loglik_violations},
           {"mean_ratio_violations", report.mean_ratio_violations},
           {"healthy", report.clean()}};
    std::cout << j.dump(2) << '\n';
    return report.clean() ? kExitOk : kExitMonotonicity;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum likelihood estimation for lambda-exponential families"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "draw a dataset and write CSV + manifest");
    sim_cmd->add_option("--family", sim.family, "qgaussian or dirichlet")->required();
    double sim_lambda = 0, sim_sigma = 0, sim_theta = 0;
    std::string sim_p;
    std::uint64_t sim_seed = 0;
    auto* sl = sim_cmd->add_option("--lambda", sim_lambda, "curvature (qgaussian)");
    auto* ss = sim_cmd->add_option("--sigma", sim_sigma, "noise level (dirichlet)");
    auto* st = sim_cmd->add_option("--theta", sim_theta, "true natural parameter (qgaussian)");
    auto* sp = sim_cmd->add_option("--p", sim_p, "true simplex point, comma list (dirichlet)");
    sim_cmd->add_option("--n", sim.n, "sample count")->required();
    auto* sd = sim_cmd->add_option("--seed", sim_seed, "RNG seed (required)");
    sim_cmd->add_option("--out", sim.out, "output CSV path")->required();

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "run the fixed-point MLE iteration");
    fit_cmd->add_option("--family", fit.family, "qgaussian or dirichlet")->required();
    double fit_lambda = 0, fit_sigma = 0;
    auto* fl = fit_cmd->add_option("--lambda", fit_lambda, "curvature (qgaussian)");
    auto* fs = fit_cmd->add_option("--sigma", fit_sigma, "noise level (dirichlet)");
    fit_cmd->add_option("--data", fit.data_path, "input CSV")->required();
    fit_cmd->add_option("--init", fit.init_rule, "initialization rule: mean (the default)");
    fit_cmd->add_option("--init-theta", fit.init_theta, "explicit theta(0), comma list (repeatable)");
    fit_cmd->add_option("--init-eta", fit.init_eta, "explicit eta(0), comma list (repeatable)");
    fit_cmd->add_option("--tol-step", fit.tol_step, "step sup-norm stopping threshold");
    fit_cmd->add_option("--tol-residual", fit.tol_residual, "first-order residual threshold");
    fit_cmd->add_option("--max-iter", fit.max_iter, "iteration cap");
    std::string fit_trace, fit_out;
    auto* ft = fit_cmd->add_option("--trace", fit_trace, "write per-iteration trace JSON here");
    auto* fo = fit_cmd->add_option("--out", fit_out, "also write the report JSON here");

    std::string audit_trace;
    double audit_slack = 1e-9;
    auto* audit_cmd = app.add_subcommand("audit", "check a stored trace for monotonicity");
    audit_cmd->add_option("--trace", audit_trace, "trace JSON path")->required();
    audit_cmd->add_option("--slack", audit_slack, "permitted relative decrease");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (sim_cmd->parsed()) {
            if (sl->count()) sim.lambda = sim_lambda;
            if (ss->count()) sim.sigma = sim_sigma;
            if (st->count()) sim.theta = sim_theta;
            if (sp->count()) sim.p_list = sim_p;
            if (sd->count()) sim.seed = sim_seed;
            return run_simulate(sim);
        }
        if (fit_cmd->parsed()) {
            if (fl->count()) fit.lambda = fit_lambda;
            if (fs->count()) fit.sigma = fit_sigma;
            if (ft->count()) fit.trace_path = fit_trace;
            if (fo->count()) fit.out_path = fit_out;
            return run_fit(fit);
        }
        if (audit_cmd->parsed()) {
            return run_audit(audit_trace, audit_slack);
        }
    } catch (const InvalidManifest& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const EmptyData& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InitializationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}
