#include "momtour/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "momtour/baselines.hpp"
#include "momtour/theory.hpp"
#include "momtour/tournament.hpp"

namespace momtour {

void ExperimentConfig::validate() const {
    problem.validate();
    if (n_trials < 1) throw std::invalid_argument("ExperimentConfig: n_trials must be >= 1");
    if (methods.empty()) throw std::invalid_argument("ExperimentConfig: methods must be nonempty");
    if (r_multipliers.empty()) {
        throw std::invalid_argument("ExperimentConfig: r_multipliers must be nonempty");
    }
    for (double m : r_multipliers) {
        if (!(m > 0.0)) throw std::invalid_argument("ExperimentConfig: r multipliers must be positive");
    }
    if (!(sigma_inflate > 0.0)) {
        throw std::invalid_argument("ExperimentConfig: sigma_inflate must be positive");
    }
}

const char* to_string(Method m) {
    switch (m) {
        case Method::Tournament: return "tournament";
        case Method::ErmLS: return "erm";
        case Method::MomRiskMin: return "mom_risk";
    }
    return "?";
}

CandidatePool make_trial_pool(const ExperimentConfig& config, const Dataset& data, double r,
                              RngSpec rng) {
    const int d = config.problem.n_dim;
    VectorXd center;
    switch (config.pool.center_mode) {
        case PoolCenterMode::Zero: center = VectorXd::Zero(d); break;
        case PoolCenterMode::T0: center = config.problem.t0; break;
        case PoolCenterMode::ErmPart1:
            center = erm_least_squares(data, PartsSelector::only(0)).coeffs;
            break;
        case PoolCenterMode::Explicit: center = config.pool.spec.center; break;
    }
    if (config.pool.decoys) {
        // t0 plus decoys in random directions at fixed multiples of r.
        PoolSpec spec;
        spec.strategy = PoolStrategy::Explicit;
        spec.explicit_coeffs.push_back(center);
        CounterRng gen(rng);
        for (double mult : config.pool.decoy_distances) {
            for (int i = 0; i < config.pool.decoys_per_distance; ++i) {
                VectorXd dir(d);
                for (int k = 0; k < d; ++k) dir[k] = gen.gaussian();
                const double nrm = dir.norm();
                if (nrm == 0.0) continue;
                spec.explicit_coeffs.push_back(center + (mult * r / nrm) * dir);
            }
        }
        auto pool = build_pool(spec, d, rng);
        pool.provenance = "decoys";
        return pool;
    }
    PoolSpec spec = config.pool.spec;
    spec.center = center;
    return build_pool(spec, d, rng);
}

namespace {

std::vector<TrialResult> run_one_trial(const ExperimentConfig& config, int trial) {
    std::vector<TrialResult> rows;
    const RngSpec data_rng{config.base_seed, static_cast<std::uint64_t>(trial)};
    const Dataset data = generate(config.problem, data_rng);
    const double r_star =
        rate_full_space(config.problem.n_dim, config.problem.N_per_part, config.problem.sigma)
            .r_star;

    auto base_row = [&](Method m, double r_used) {
        TrialResult row;
        row.trial = trial;
        row.method = to_string(m);
        row.r_used = r_used;
        row.seed = config.base_seed;
        row.stream_id = static_cast<std::uint64_t>(trial);
        return row;
    };
    auto finish = [&](TrialResult& row, const Candidate& est,
                      std::chrono::steady_clock::time_point start) {
        row.error_l2 = true_l2_error(est, config.problem);
        row.excess_risk = true_excess_risk(est, config.problem);
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    };

    for (Method m : config.methods) {
        // ERM and the MoM-risk minimizer do not depend on r; they run once
        // per trial, tagged with the first multiplier's r for grouping.
        const std::vector<double> mults =
            (m == Method::Tournament) ? config.r_multipliers
                                      : std::vector<double>{config.r_multipliers.front()};
        for (double mult : mults) {
            const double r = mult * r_star;
            TrialResult row = base_row(m, r);
            const auto start = std::chrono::steady_clock::now();
            try {
                switch (m) {
                    case Method::Tournament: {
                        const RngSpec pool_rng{config.base_seed ^ 0x706F6F6CULL,
                                               static_cast<std::uint64_t>(trial)};
                        const CandidatePool pool = make_trial_pool(config, data, r, pool_rng);
                        TournamentConfig tc = config.tournament;
                        tc.r = r;
                        tc.sigma = config.problem.sigma * config.sigma_inflate;
                        const auto out = run_tournament(data, pool, tc);
                        row.qualifier_count = static_cast<int>(out.qualifiers.ids.size());
                        row.fallback_used =
                            (out.result.fallback_used || out.empty_qualifier_fallback) ? 1 : 0;
                        finish(row, out.champion, start);
                        break;
                    }
                    case Method::ErmLS: {
                        const Candidate est = erm_least_squares(data, PartsSelector::all());
                        finish(row, est, start);
                        break;
                    }
                    case Method::MomRiskMin: {
                        const RngSpec pool_rng{config.base_seed ^ 0x706F6F6CULL,
                                               static_cast<std::uint64_t>(trial)};
                        const CandidatePool pool = make_trial_pool(config, data, r, pool_rng);
                        const Candidate est =
                            mom_risk_minimizer(pool, data, config.tournament.ell);
                        finish(row, est, start);
                        break;
                    }
                }
            } catch (const std::exception&) {
                row.method += "_error";
                row.error_l2 = 0.0;
                row.excess_risk = 0.0;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace

std::vector<TrialResult> run_experiment(const ExperimentConfig& config, int n_threads) {
    config.validate();
    std::vector<std::vector<TrialResult>> per_trial(static_cast<std::size_t>(config.n_trials));
    if (n_threads <= 1) {
        for (int t = 0; t < config.n_trials; ++t) per_trial[static_cast<std::size_t>(t)] = run_one_trial(config, t);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= config.n_trials) return;
                per_trial[static_cast<std::size_t>(t)] = run_one_trial(config, t);
            }
        };
        std::vector<std::thread> threads;
        for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    std::vector<TrialResult> all;
    for (auto& rows : per_trial) {
        all.insert(all.end(), rows.begin(), rows.end());
    }
    return all;
}

std::vector<std::pair<double, double>> confidence_curve(const std::vector<TrialResult>& results,
                                                        const std::string& method,
                                                        const std::vector<double>& thresholds) {
    std::vector<double> errors;
    for (const auto& r : results) {
        if (r.method == method) errors.push_back(r.error_l2);
    }
    if (errors.empty()) {
        throw std::invalid_argument("confidence_curve: no results for method " + method);
    }
    std::vector<std::pair<double, double>> curve;
    curve.reserve(thresholds.size());
    for (double t : thresholds) {
        const auto hit = std::count_if(errors.begin(), errors.end(),
                                       [&](double e) { return e <= t; });
        curve.emplace_back(t, static_cast<double>(hit) / static_cast<double>(errors.size()));
    }
    return curve;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string results_to_csv(const std::vector<TrialResult>& results) {
    std::ostringstream os;
    os << "trial,method,r_used,error_l2,excess_risk,qualifier_count,fallback_used,runtime_ms,"
          "seed,stream_id\n";
    for (const auto& r : results) {
        os << r.trial << ',' << r.method << ',' << fmt17(r.r_used) << ',' << fmt17(r.error_l2)
           << ',' << fmt17(r.excess_risk) << ',' << r.qualifier_count << ',' << r.fallback_used
           << ',' << fmt17(r.runtime_ms) << ',' << r.seed << ',' << r.stream_id << '\n';
    }
    return os.str();
}

std::vector<TrialResult> results_from_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line)) {
        throw std::invalid_argument("results_from_csv: empty input");
    }
    std::vector<TrialResult> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f;
        TrialResult r;
        std::getline(ls, f, ',');
        r.trial = std::stoi(f);
        std::getline(ls, r.method, ',');
        std::getline(ls, f, ',');
        r.r_used = std::stod(f);
        std::getline(ls, f, ',');
        r.error_l2 = std::stod(f);
        std::getline(ls, f, ',');
        r.excess_risk = std::stod(f);
        std::getline(ls, f, ',');
        r.qualifier_count = std::stoi(f);
        std::getline(ls, f, ',');
        r.fallback_used = std::stoi(f);
        std::getline(ls, f, ',');
        r.runtime_ms = std::stod(f);
        std::getline(ls, f, ',');
        r.seed = std::stoull(f);
        std::getline(ls, f, ',');
        r.stream_id = std::stoull(f);
        out.push_back(std::move(r));
    }
    return out;
}

void emit_csv(const std::vector<TrialResult>& results, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
    os << results_to_csv(results);
    if (!os) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_svg_curves(const std::vector<NamedCurve>& curves, const std::string& path,
                     const std::string& x_label, const std::string& y_label) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit_svg_curves: cannot open " + path);

    const int W = 720, H = 480, ML = 70, MR = 160, MT = 30, MB = 60;
    double xmin = 0.0, xmax = 1.0;
    bool any = false;
    for (const auto& c : curves) {
        for (const auto& [x, y] : c.points) {
            if (!any) {
                xmin = xmax = x;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
            }
        }
    }
    if (!any || xmax == xmin) xmax = xmin + 1.0;
    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - y * (H - MT - MB); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
       << H - MB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = i / 5.0;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - MB + 18
           << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt17(std::round(xv * 1e4) / 1e4)
           << "</text>\n";
        os << "<text x=\"" << ML - 8 << "\" y=\"" << py(yv) + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << yv << "</text>\n";
    }
    os << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 15
       << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
    os << "<text x=\"18\" y=\"" << (MT + H - MB) / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << (MT + H - MB) / 2 << ")\">" << y_label << "</text>\n";
    int ci = 0;
    for (const auto& c : curves) {
        const char* color = colors[ci % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : c.points) os << px(x) << ',' << py(y) << ' ';
        os << "\"/>\n";
        const int ly = MT + 18 * ci;
        os << "<line x1=\"" << W - MR + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - MR + 34
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << W - MR + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
           << c.label << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
    if (!os) throw std::runtime_error("emit_svg_curves: write failed for " + path);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.problem.n_dim = 5;
    cfg.problem.N_per_part = 1000;
    bool t0_given = false;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto bad = [&](const std::string& what) {
            return std::invalid_argument("config line " + std::to_string(lineno) + ": " + what +
                                         " '" + val + "'");
        };

        if (key == "n_dim") cfg.problem.n_dim = std::stoi(val);
        else if (key == "n_per_part") cfg.problem.N_per_part = std::stol(val);
        else if (key == "design") {
            if (val == "gaussian") cfg.problem.design = DesignKind::GaussianIso;
            else if (val == "rademacher") cfg.problem.design = DesignKind::Rademacher;
            else if (val == "student_t") cfg.problem.design = DesignKind::StudentTIso;
            else throw bad("unknown design");
        } else if (key == "design_dof") cfg.problem.design_dof = std::stod(val);
        else if (key == "noise") {
            if (val == "none") cfg.problem.noise = NoiseKind::None;
            else if (val == "gaussian") cfg.problem.noise = NoiseKind::Gaussian;
            else if (val == "student_t") cfg.problem.noise = NoiseKind::StudentT;
            else if (val == "pareto") cfg.problem.noise = NoiseKind::SymmetrizedPareto;
            else throw bad("unknown noise");
        } else if (key == "noise_dof") cfg.problem.noise_dof = std::stod(val);
        else if (key == "noise_tail") cfg.problem.noise_tail = std::stod(val);
        else if (key == "sigma") cfg.problem.sigma = std::stod(val);
        else if (key == "t0") {
            const auto vals = parse_list(val);
            cfg.problem.t0 = Eigen::Map<const VectorXd>(vals.data(), static_cast<Index>(vals.size()));
            t0_given = true;
        } else if (key == "theta") cfg.tournament.theta = std::stod(val);
        else if (key == "tau") cfg.tournament.tau = std::stod(val);
        else if (key == "ell") cfg.tournament.ell = std::stoi(val);
        else if (key == "alpha") cfg.tournament.alpha = std::stod(val);
        else if (key == "beta") cfg.tournament.beta = std::stod(val);
        else if (key == "tie_break") {
            if (val == "min_mom_risk") cfg.tournament.tie_break = TieBreak::MinMomRisk;
            else if (val == "lowest_id") cfg.tournament.tie_break = TieBreak::LowestId;
            else throw bad("unknown tie_break");
        } else if (key == "fallback") {
            if (val == "copeland") cfg.tournament.fallback = Fallback::CopelandScore;
            else if (val == "fail") cfg.tournament.fallback = Fallback::Fail;
            else throw bad("unknown fallback");
        } else if (key == "sigma_inflate") cfg.sigma_inflate = std::stod(val);
        else if (key == "pool_strategy") {
            cfg.pool.decoys = false;
            if (val == "decoys") cfg.pool.decoys = true;
            else if (val == "randomball") cfg.pool.spec.strategy = PoolStrategy::RandomBall;
            else if (val == "seeded") cfg.pool.spec.strategy = PoolStrategy::SeededPerturbation;
            else if (val == "gridnet") cfg.pool.spec.strategy = PoolStrategy::GridNet;
            else throw bad("unknown pool_strategy");
        } else if (key == "pool_center_mode") {
            if (val == "t0") cfg.pool.center_mode = PoolCenterMode::T0;
            else if (val == "zero") cfg.pool.center_mode = PoolCenterMode::Zero;
            else if (val == "erm_part1") cfg.pool.center_mode = PoolCenterMode::ErmPart1;
            else if (val == "explicit") cfg.pool.center_mode = PoolCenterMode::Explicit;
            else throw bad("unknown pool_center_mode");
        } else if (key == "pool_center") {
            const auto vals = parse_list(val);
            cfg.pool.spec.center =
                Eigen::Map<const VectorXd>(vals.data(), static_cast<Index>(vals.size()));
        } else if (key == "pool_radius") cfg.pool.spec.radius = std::stod(val);
        else if (key == "pool_count") cfg.pool.spec.count = std::stoi(val);
        else if (key == "pool_mesh") cfg.pool.spec.mesh = std::stod(val);
        else if (key == "pool_norm") {
            if (val == "l2") cfg.pool.spec.norm = BallNorm::L2;
            else if (val == "l1") cfg.pool.spec.norm = BallNorm::L1;
            else throw bad("unknown pool_norm");
        } else if (key == "pool_include_center") cfg.pool.spec.include_center = std::stoi(val) != 0;
        else if (key == "pool_decoy_distances") cfg.pool.decoy_distances = parse_list(val);
        else if (key == "pool_decoys_per_distance") cfg.pool.decoys_per_distance = std::stoi(val);
        else if (key == "methods") {
            cfg.methods.clear();
            std::istringstream ms(val);
            std::string tok;
            while (std::getline(ms, tok, ',')) {
                tok = trim(tok);
                if (tok == "tournament") cfg.methods.push_back(Method::Tournament);
                else if (tok == "erm") cfg.methods.push_back(Method::ErmLS);
                else if (tok == "mom_risk") cfg.methods.push_back(Method::MomRiskMin);
                else throw bad("unknown method");
            }
        } else if (key == "n_trials") cfg.n_trials = std::stoi(val);
        else if (key == "base_seed") cfg.base_seed = std::stoull(val);
        else if (key == "r_multipliers") cfg.r_multipliers = parse_list(val);
        else if (key == "output_path") cfg.output_path = val;
        else throw std::invalid_argument("config line " + std::to_string(lineno) +
                                         ": unknown key '" + key + "'");
    }
    if (!t0_given) {
        cfg.problem.t0 = VectorXd::Zero(cfg.problem.n_dim);
        if (cfg.problem.n_dim > 0) cfg.problem.t0[0] = 1.0;
    }
    if (cfg.problem.t0.size() != cfg.problem.n_dim) {
        throw std::invalid_argument("config: t0 length must equal n_dim");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_config: cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

}  // namespace momtour
