// Command-line front end: Monte Carlo runs, parameter sweeps, confidence
// curves, and oracle calibration.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "momtour/baselines.hpp"
#include "momtour/harness.hpp"
#include "momtour/oracle.hpp"
#include "momtour/theory.hpp"

namespace {

using namespace momtour;

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            std::optional<std::uint64_t> seed, int threads) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) cfg.base_seed = *seed;
    const auto results = run_experiment(cfg, threads);
    const std::string path = out_path.empty() ? cfg.output_path : out_path;
    if (path.empty()) {
        std::cout << results_to_csv(results);
    } else {
        emit_csv(results, path);
        std::cerr << results.size() << " rows -> " << path << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, const std::string& out_path, int threads) {
    const ExperimentConfig base = load_config(config_path);
    const auto values = parse_values(values_csv);
    if (values.empty()) throw std::runtime_error("sweep: no values given");

    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("sweep: cannot open " + out_path);
    os << "sweep_param,sweep_value,trial,method,r_used,error_l2,excess_risk,qualifier_count,"
          "fallback_used,runtime_ms,seed,stream_id\n";
    for (double v : values) {
        ExperimentConfig cfg = base;
        if (param == "N") {
            cfg.problem.N_per_part = static_cast<Index>(v);
        } else if (param == "n_dim") {
            const int d = static_cast<int>(v);
            cfg.problem.n_dim = d;
            VectorXd t0 = VectorXd::Zero(d);
            if (d > 0) t0[0] = 1.0;
            cfg.problem.t0 = t0;
        } else if (param == "noise_tail") {
            cfg.problem.noise_tail = v;
        } else if (param == "r_mult") {
            cfg.r_multipliers = {v};
        } else {
            throw std::runtime_error("sweep: unknown param " + param);
        }
        const auto results = run_experiment(cfg, threads);
        std::string csv = results_to_csv(results);
        std::istringstream is(csv);
        std::string line;
        std::getline(is, line);  // drop the inner header
        while (std::getline(is, line)) {
            if (!line.empty()) os << param << ',' << v << ',' << line << '\n';
        }
    }
    std::cerr << "sweep -> " << out_path << "\n";
    return 0;
}

int cmd_curves(const std::string& in_path, const std::string& out_path,
               const std::string& thresholds_csv) {
    std::ifstream is(in_path);
    if (!is) throw std::runtime_error("curves: cannot open " + in_path);
    std::ostringstream ss;
    ss << is.rdbuf();
    const auto results = results_from_csv(ss.str());
    const auto thresholds = parse_values(thresholds_csv);
    if (thresholds.empty()) throw std::runtime_error("curves: no thresholds given");

    std::vector<std::string> methods;
    for (const auto& r : results) {
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
            methods.push_back(r.method);
        }
    }
    std::vector<NamedCurve> curves;
    for (const auto& m : methods) {
        curves.push_back({m, confidence_curve(results, m, thresholds)});
    }
    emit_svg_curves(curves, out_path);
    std::cerr << curves.size() << " curves -> " << out_path << "\n";
    return 0;
}

int cmd_calibrate(const std::string& config_path, int n_pairs, const std::string& ell_grid_csv) {
    const ExperimentConfig cfg = load_config(config_path);
    const Dataset data = generate(cfg.problem, {cfg.base_seed, 0});
    const MatrixXd xs = data.xs_part(0);

    const double r =
        cfg.r_multipliers.front() *
        rate_full_space(cfg.problem.n_dim, cfg.problem.N_per_part, cfg.problem.sigma).r_star;
    CounterRng gen({cfg.base_seed ^ 0x63616C69ULL, 0});
    std::vector<std::pair<Candidate, Candidate>> pairs;
    for (int i = 0; i < n_pairs; ++i) {
        VectorXd dir(cfg.problem.n_dim);
        for (int d = 0; d < cfg.problem.n_dim; ++d) dir[d] = gen.gaussian();
        dir *= r / dir.norm();
        pairs.push_back({Candidate{cfg.problem.t0, 0}, Candidate{cfg.problem.t0 + dir, 1}});
    }
    std::vector<int> grid;
    for (double v : parse_values(ell_grid_csv)) grid.push_back(static_cast<int>(v));
    const auto res = calibrate_oracle_constants(xs, grid, pairs, 0.99,
                                                {cfg.base_seed ^ 0x63616C32ULL, 0});
    std::cout << "alpha = " << res.alpha << "\nbeta = " << res.beta << "\nell = " << res.ell
              << "\nbeta/alpha = " << res.ratio << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"median-of-means tournament regression toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, in_path, param, values_csv, thresholds_csv;
    std::string ell_grid = "1,2,4,8,16";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    int n_pairs = 400;

    auto* run = app.add_subcommand("run", "run a Monte Carlo experiment");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_path, "output CSV (default: config output_path or stdout)");
    run->add_option("--seed", seed, "override base seed");
    run->add_option("--threads", threads, "worker threads");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--param", param, "one of N, n_dim, noise_tail, r_mult")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();
    sweep->add_option("--out", out_path, "output CSV")->required();
    sweep->add_option("--threads", threads, "worker threads");

    auto* curves = app.add_subcommand("curves", "confidence curves from a results CSV");
    curves->add_option("--in", in_path, "input CSV")->required();
    curves->add_option("--out", out_path, "output SVG")->required();
    curves->add_option("--thresholds", thresholds_csv, "comma-separated thresholds")->required();

    auto* calib = app.add_subcommand("calibrate-oracle", "calibrate (alpha, beta, ell)");
    calib->add_option("--config", config_path, "config file")->required();
    calib->add_option("--pairs", n_pairs, "calibration pair count");
    calib->add_option("--ell-grid", ell_grid, "comma-separated ell grid");

    CLI11_PARSE(app, argc, argv);
    try {
        if (app.got_subcommand(run)) return cmd_run(config_path, out_path, seed, threads);
        if (app.got_subcommand(sweep)) return cmd_sweep(config_path, param, values_csv, out_path, threads);
        if (app.got_subcommand(curves)) return cmd_curves(in_path, out_path, thresholds_csv);
        if (app.got_subcommand(calib)) return cmd_calibrate(config_path, n_pairs, ell_grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
