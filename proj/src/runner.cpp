#include "strichartz/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "strichartz/fourier_state.hpp"
#include "strichartz/nls.hpp"
#include "strichartz/rng.hpp"
#include "strichartz/scaling.hpp"
#include "strichartz/verify.hpp"

#include "json.hpp"

namespace strichartz {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
T field_or(const json& j, const std::string& key, T def) {
    if (!j.contains(key)) return def;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error(key, "has the wrong type");
    }
}

IrrationalTorus torus_from(const json& j, int dim, const std::string& where) {
    if (j.contains("alphas")) {
        const auto alphas = j.at("alphas").get<std::vector<double>>();
        if (static_cast<int>(alphas.size()) != dim)
            throw config_error(where + ".alphas", "expected " + std::to_string(dim) + " entries");
        const double c = field_or(j, "C", 2.0);
        return IrrationalTorus(dim, alphas, c);
    }
    const std::string kind = field_or<std::string>(j, "torus", "generic");
    if (kind == "generic") return IrrationalTorus::generic(dim);
    if (kind == "square") return IrrationalTorus::square(dim);
    throw config_error(where + ".torus", "expected 'generic' or 'square'");
}

EstimateOpts opts_from(const json& j, std::uint64_t default_seed, int workers) {
    EstimateOpts o;
    o.t0 = field_or(j, "t0", o.t0);
    o.t1 = field_or(j, "t1", o.t1);
    o.n_t = field_or(j, "n_t", o.n_t);
    o.n_t_cap = field_or(j, "n_t_cap", o.n_t_cap);
    o.rtol = field_or(j, "rtol", o.rtol);
    o.trials = field_or(j, "trials", o.trials);
    o.seed = field_or<std::uint64_t>(j, "seed", default_seed);
    o.family = parse_family(field_or<std::string>(j, "family", "dirichlet"));
    o.data_scale = field_or(j, "data_scale", o.data_scale);
    o.slope_tol = field_or(j, "slope_tol", o.slope_tol);
    o.workers = workers;
    return o;
}

std::vector<long> long_list(const json& j, const std::string& key,
                            const std::vector<long>& def) {
    if (!j.contains(key)) return def;
    try {
        return j.at(key).get<std::vector<long>>();
    } catch (const json::exception&) {
        throw config_error(key, "must be an array of integers");
    }
}

struct ExperimentResult {
    std::string name;
    std::string type;
    std::string csv_path;  // relative to out_dir
    bool pass = true;
    bool asserted = true;
    json summary;
    long wall_ms = 0;
};

LinearMode linear_mode_from(const json& j, const std::string& where) {
    const std::string mode = field_or<std::string>(j, "mode", "cubes");
    if (mode == "cubes") return LinearMode::cubes;
    if (mode == "rectangles") return LinearMode::rectangles;
    throw config_error(where + ".mode", "expected 'cubes' or 'rectangles'");
}

SweepMode sweep_mode_from(const json& j, const std::string& where) {
    const std::string mode = field_or<std::string>(j, "mode", "balanced");
    if (mode == "balanced") return SweepMode::balanced;
    if (mode == "separated") return SweepMode::separated;
    if (mode == "n3_sweep") return SweepMode::n3_sweep;
    throw config_error(where + ".mode", "expected 'balanced', 'separated' or 'n3_sweep'");
}

ExperimentResult run_scaling_experiment(const std::string& name, const std::string& type,
                                        const ScalingReport& rep, const fs::path& out_dir) {
    ExperimentResult res;
    res.name = name;
    res.type = type;
    res.csv_path = name + ".csv";
    std::ofstream csv(out_dir / res.csv_path);
    rep.write_csv(csv);
    res.summary = json::parse(rep.to_json());
    res.pass = rep.pass;
    return res;
}

ExperimentResult dispatch_experiment(const json& e, const std::string& name,
                                     std::uint64_t master_seed, int workers,
                                     const fs::path& out_dir) {
    const std::string type = e.at("type").get<std::string>();
    const std::uint64_t default_seed = mix_seed(master_seed, name);

    if (type == "trilinear-2d") {
        Trilinear2dConfig cfg;
        cfg.torus = torus_from(e, 2, name);
        cfg.p = field_or(e, "p", cfg.p);
        cfg.n_big = field_or(e, "N", cfg.n_big);
        cfg.m_list = long_list(e, "M_list", cfg.m_list);
        cfg.opts = opts_from(e, default_seed, workers);
        return run_scaling_experiment(name, type, run_trilinear_2d(cfg), out_dir);
    }
    if (type == "linear-2d") {
        Linear2dConfig cfg;
        cfg.torus = torus_from(e, 2, name);
        cfg.p = field_or(e, "p", cfg.p);
        cfg.mode = linear_mode_from(e, name);
        cfg.n_list = long_list(e, "N_list", cfg.n_list);
        cfg.q_rect = field_or(e, "q", cfg.q_rect);
        cfg.n_rect = field_or(e, "N", cfg.n_rect);
        cfg.m_list = long_list(e, "M_list", cfg.m_list);
        cfg.opts = opts_from(e, default_seed, workers);
        return run_scaling_experiment(name, type, run_linear_2d(cfg), out_dir);
    }
    if (type == "linear-3d") {
        Linear3dConfig cfg;
        cfg.torus = torus_from(e, 3, name);
        cfg.p = field_or(e, "p", cfg.p);
        cfg.mode = linear_mode_from(e, name);
        cfg.n_list = long_list(e, "N_list", cfg.n_list);
        cfg.q_rect = field_or(e, "q", cfg.q_rect);
        cfg.n_rect = field_or(e, "N", cfg.n_rect);
        cfg.m_list = long_list(e, "M_list", cfg.m_list);
        cfg.opts = opts_from(e, default_seed, workers);
        return run_scaling_experiment(name, type, run_linear_3d(cfg), out_dir);
    }
    if (type == "multilinear-2d") {
        Multilinear2dConfig cfg;
        cfg.torus = torus_from(e, 2, name);
        cfg.k = field_or(e, "k", cfg.k);
        cfg.mode = sweep_mode_from(e, name);
        cfg.n_list = long_list(e, "N_list", cfg.n_list);
        cfg.n_small = field_or(e, "N_small", cfg.n_small);
        cfg.opts = opts_from(e, default_seed, workers);
        return run_scaling_experiment(name, type, run_multilinear_2d(cfg), out_dir);
    }
    if (type == "trilinear-3d") {
        Trilinear3dConfig cfg;
        cfg.torus = torus_from(e, 3, name);
        cfg.eps = field_or(e, "eps", cfg.eps);
        cfg.mode = sweep_mode_from(e, name);
        cfg.n_list = long_list(e, "N_list", cfg.n_list);
        cfg.n_fixed = field_or(e, "N_fixed", cfg.n_fixed);
        cfg.n_small = field_or(e, "N_small", cfg.n_small);
        cfg.opts = opts_from(e, default_seed, workers);
        return run_scaling_experiment(name, type, run_trilinear_3d(cfg), out_dir);
    }
    if (type == "weyl") {
        const double p = field_or(e, "p", 3.0);
        const auto m_list = long_list(e, "M_list", {16, 32, 64, 128, 256, 512, 1024});
        const double tol = field_or(e, "slope_tol", 0.08);
        return run_scaling_experiment(name, type, weyl_scaling(p, m_list, tol), out_dir);
    }
    if (type == "orthogonality") {
        OrthogonalityConfig cfg;
        cfg.torus = torus_from(e, field_or(e, "d", 2), name);
        cfg.k = field_or(e, "k", cfg.k);
        cfg.n2_list = long_list(e, "N2_list", cfg.n2_list);
        cfg.n1_override = field_or(e, "N1", cfg.n1_override);
        cfg.t0 = field_or(e, "t0", cfg.t0);
        cfg.t1 = field_or(e, "t1", cfg.t1);
        cfg.margin = field_or(e, "margin", cfg.margin);
        cfg.family = parse_family(field_or<std::string>(e, "family", "random_phase"));
        cfg.seed = field_or<std::uint64_t>(e, "seed", default_seed);
        cfg.n_t = field_or(e, "n_t", cfg.n_t);
        cfg.n_t_cap = field_or(e, "n_t_cap", cfg.n_t_cap);
        cfg.rtol = field_or(e, "rtol", cfg.rtol);
        cfg.workers = workers;
        const OrthogonalityReport rep = run_orthogonality_check(cfg);
        return run_scaling_experiment(name, type, rep.to_report(), out_dir);
    }
    if (type == "point-estimate") {
        PointEstimateTrialsConfig cfg;
        cfg.trials = field_or(e, "trials", cfg.trials);
        cfg.r_values = field_or(e, "r_values", cfg.r_values);
        cfg.p_values = field_or(e, "p_values", cfg.p_values);
        cfg.max_set = field_or(e, "max_set", cfg.max_set);
        cfg.box_radius = field_or(e, "box_radius", cfg.box_radius);
        cfg.seed = field_or<std::uint64_t>(e, "seed", default_seed);
        cfg.quad.rtol = field_or(e, "rtol", cfg.quad.rtol);
        cfg.tol = field_or(e, "tol", cfg.tol);
        cfg.workers = workers;
        const PointEstimateTrialsReport rep = run_point_estimate_trials(cfg);
        ExperimentResult res;
        res.name = name;
        res.type = type;
        res.csv_path = name + ".csv";
        std::ofstream csv(out_dir / res.csv_path);
        rep.write_csv(csv);
        res.summary = json::parse(rep.to_json());
        res.pass = rep.all_pass;
        return res;
    }
    if (type == "nls") {
        const int d = field_or(e, "d", 2);
        NLSProblem prob;
        prob.torus = torus_from(e, d, name);
        prob.k = field_or(e, "k", 1);
        prob.sign = field_or(e, "sign", 1);
        prob.T = field_or(e, "T", 1.0);
        prob.dt = field_or(e, "dt", 1e-3);
        prob.grid_per_dim = field_or(e, "grid", 0);
        prob.out_every = field_or<long>(e, "out_every", 100);
        prob.nonlinear = field_or(e, "nonlinear", true);
        const long side = field_or<long>(e, "region_side", 2);
        const double amplitude = field_or(e, "amplitude", 0.1);
        const DataFamily fam = parse_family(field_or<std::string>(e, "family", "random_phase"));
        prob.initial = scale(make_data(prob.torus, FrequencyRegion::cube(d, {0, 0, 0}, side), fam,
                                       field_or<std::uint64_t>(e, "seed", default_seed)),
                             amplitude);
        const Trajectory traj = solve(prob);

        ExperimentResult res;
        res.name = name;
        res.type = type;
        res.csv_path = name + ".csv";
        std::ofstream csv(out_dir / res.csv_path);
        traj.write_csv(csv);

        double mass_drift = 0, energy_drift = 0;
        for (const auto& f : traj.frames) {
            mass_drift = std::max(mass_drift, std::abs(f.mass - traj.frames.front().mass));
            energy_drift = std::max(
                energy_drift, std::abs(f.energy_weighted - traj.frames.front().energy_weighted));
        }
        res.summary = {{"experiment", name},
                       {"type", type},
                       {"d", d},
                       {"k", prob.k},
                       {"grid", traj.grid_used},
                       {"frames", traj.frames.size()},
                       {"mass_drift", mass_drift},
                       {"energy_drift", energy_drift}};
        res.pass = true;
        if (e.contains("assert_mass_drift"))
            res.pass = res.pass && mass_drift <= e.at("assert_mass_drift").get<double>();
        if (e.contains("assert_energy_drift"))
            res.pass = res.pass && energy_drift <= e.at("assert_energy_drift").get<double>();
        return res;
    }
    if (type == "small-data") {
        SmallDataConfig cfg;
        cfg.d = field_or(e, "d", cfg.d);
        cfg.k = field_or(e, "k", cfg.k);
        cfg.deltas = field_or(e, "deltas", cfg.deltas);
        cfg.seed = field_or<std::uint64_t>(e, "seed", default_seed);
        cfg.T = field_or(e, "T", cfg.T);
        cfg.dt = field_or(e, "dt", cfg.dt);
        cfg.cube_side = field_or<long>(e, "region_side", cfg.cube_side);
        cfg.sign = field_or(e, "sign", cfg.sign);
        cfg.nonlinear = field_or(e, "nonlinear", cfg.nonlinear);
        cfg.workers = workers;
        const SmallDataReport rep = small_data_experiment(cfg);
        ExperimentResult res;
        res.name = name;
        res.type = type;
        res.csv_path = name + ".csv";
        std::ofstream csv(out_dir / res.csv_path);
        rep.write_csv(csv);
        res.summary = json::parse(rep.to_json());
        res.pass = true;
        if (e.contains("assert_ratio_range")) {
            const auto range = e.at("assert_ratio_range").get<std::vector<double>>();
            if (range.size() != 2) throw config_error(name + ".assert_ratio_range", "expected [lo, hi]");
            double smallest_ratio = 1.0, smallest_delta = kInf;
            for (const auto& r : rep.rows) {
                if (r.delta > 0 && r.delta < smallest_delta) {
                    smallest_delta = r.delta;
                    smallest_ratio = r.ratio;
                }
            }
            res.pass = smallest_ratio >= range[0] && smallest_ratio <= range[1];
        }
        return res;
    }
    throw config_error(name + ".type", "unknown experiment type '" + type + "'");
}

int default_workers() {
    if (const char* env = std::getenv(kWorkersEnvVar)) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

}  // namespace

int run_config(const RunOptions& opt, std::ostream& diag) {
    json cfg;
    {
        std::ifstream in(opt.config_path);
        if (!in) {
            diag << "config error: cannot open '" << opt.config_path << "'\n";
            return kExitConfigError;
        }
        try {
            in >> cfg;
        } catch (const json::exception& ex) {
            diag << "config error: " << ex.what() << '\n';
            return kExitConfigError;
        }
    }

    try {
        const std::uint64_t master_seed =
            opt.seed_override.value_or(field_or<std::uint64_t>(cfg, "seed", 1));
        const int workers = opt.workers_override.value_or(
            cfg.contains("workers") ? cfg.at("workers").get<int>() : default_workers());
        if (workers < 1) throw config_error("workers", "must be >= 1");
        const std::string out_dir_str = !opt.out_dir_override.empty()
                                            ? opt.out_dir_override
                                            : field_or<std::string>(cfg, "out_dir", "out");
        const fs::path out_dir(out_dir_str);
        fs::create_directories(out_dir);

        // canonical hash: nlohmann::json orders object keys, so dump() is canonical
        const std::uint64_t hash = fnv1a64(cfg.dump());
        char hash_hex[20];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(hash));

        const json experiments = field_or(cfg, "experiments", json::array());
        if (!experiments.is_array()) throw config_error("experiments", "must be an array");

        std::vector<ExperimentResult> results;
        for (std::size_t i = 0; i < experiments.size(); ++i) {
            const json& e = experiments[i];
            const std::string where = "experiments[" + std::to_string(i) + "]";
            if (!e.is_object() || !e.contains("type"))
                throw config_error(where, "each experiment needs a 'type'");
            const std::string name =
                field_or<std::string>(e, "name", e.at("type").get<std::string>() + "_" +
                                                     std::to_string(i));
            const auto start = std::chrono::steady_clock::now();
            ExperimentResult res = dispatch_experiment(e, name, master_seed, workers, out_dir);
            res.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            res.asserted = field_or(e, "assert", true);
            diag << (res.pass ? "[pass] " : "[FAIL] ") << name << " (" << res.wall_ms << " ms)\n";
            results.push_back(std::move(res));
        }

        json summary;
        summary["schema_version"] = 1;
        summary["tool_version"] = kToolVersion;
        summary["config_hash"] = hash_hex;
        summary["seed"] = master_seed;
        summary["experiments"] = json::array();
        for (const auto& r : results) {
            json e = r.summary;
            e["name"] = r.name;
            e["type"] = r.type;
            e["csv"] = r.csv_path;
            e["pass"] = r.pass;
            summary["experiments"].push_back(e);
        }
        {
            std::ofstream out(out_dir / "summary.json");
            out << summary.dump(2) << '\n';
        }

        json manifest;
        manifest["tool_version"] = kToolVersion;
        manifest["config_hash"] = hash_hex;
        manifest["seed"] = master_seed;
        manifest["workers"] = workers;
        manifest["experiments"] = json::array();
        for (const auto& r : results) {
            manifest["experiments"].push_back({{"name", r.name},
                                               {"type", r.type},
                                               {"csv", r.csv_path},
                                               {"pass", r.pass},
                                               {"wall_ms", r.wall_ms}});
        }
        {
            std::ofstream out(out_dir / "manifest.json");
            out << manifest.dump(2) << '\n';
        }

        for (const auto& r : results) {
            if (r.asserted && !r.pass) {
                diag << "assertion failed: " << (out_dir / r.csv_path).string() << '\n';
                return kExitAssertFailed;
            }
        }
        return kExitOk;
    } catch (const config_error& ex) {
        diag << "config error at " << ex.field << ": " << ex.what() << '\n';
        return kExitConfigError;
    } catch (const json::exception& ex) {
        diag << "config error: " << ex.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& ex) {
        diag << "error: " << ex.what() << '\n';
        return kExitAssertFailed;
    }
}

int export_plots(const std::string& report_path, const std::string& out_dir, std::ostream& diag) {
    json summary;
    {
        std::ifstream in(report_path);
        if (!in) {
            diag << "error: cannot open report '" << report_path << "'\n";
            return kExitConfigError;
        }
        try {
            in >> summary;
        } catch (const json::exception& ex) {
            diag << "error: report is not valid JSON: " << ex.what() << '\n';
            return kExitConfigError;
        }
    }
    const fs::path dir(out_dir.empty() ? fs::path(report_path).parent_path() : fs::path(out_dir));
    fs::create_directories(dir);

    const json experiments = summary.value("experiments", json::array());
    for (const auto& e : experiments) {
        if (!e.contains("fit_points")) continue;  // non-scaling experiments have no plot
        const std::string name = e.value("name", std::string("experiment"));
        const double slope = e.value("slope", 0.0);
        const double intercept = e.value("intercept", 0.0);

        std::ofstream plot(dir / (name + ".plot.csv"));
        plot << "log2_scale,log2_value,fitted_value\n";
        for (const auto& pt : e.at("fit_points")) {
            const double s = std::log2(pt.at(0).get<double>());
            const double v = std::log2(pt.at(1).get<double>());
            plot << format_double(s) << ',' << format_double(v) << ','
                 << format_double(intercept + slope * s) << '\n';
        }
        std::ofstream fitf(dir / (name + ".fit.csv"));
        fitf << "slope,intercept\n"
             << format_double(slope) << ',' << format_double(intercept) << '\n';
        diag << "wrote " << (dir / (name + ".plot.csv")).string() << '\n';
    }
    return kExitOk;
}

}  // namespace strichartz
