// Acceptance suite: one pass/fail line per criterion, exit = number of
// failures. Each criterion pins its tolerances in code. Pass a list of
// criterion numbers to run a subset, e.g. `acceptance 5 12`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "strichartz/counting.hpp"
#include "strichartz/nls.hpp"
#include "strichartz/runner.hpp"
#include "strichartz/spectral.hpp"
#include "strichartz/verify.hpp"

using namespace strichartz;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int number;
    const char* label;
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- C1: unitarity of the propagator, grid sampling vs direct summation ----
Outcome c1_unitarity() {
    Rng rng(101);
    double worst_norm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const auto torus = IrrationalTorus::generic(d);
        const FourierState s = oracle::random_state(torus, 20, 24, rng.uniform_int(1, 1 << 30));
        const double t = rng.uniform(-3.0, 3.0);
        const double drift = std::abs(propagate(s, t).l2_norm() - s.l2_norm());
        worst_norm = std::max(worst_norm, drift / s.l2_norm());
    }

    double worst_grid = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto torus = IrrationalTorus::generic(2);
        const FourierState s = oracle::random_state(torus, 9, 6, 500 + trial);
        const int G = 16;
        const Grid g = sample_grid(s, G);
        for (int ix = 0; ix < G; ++ix) {
            for (int iy = 0; iy < G; ++iy) {
                std::complex<double> direct{0.0, 0.0};
                for (const auto& m : s.modes()) {
                    const double ph = 2.0 * M_PI * (m.n[0] * ix + m.n[1] * iy) / G;
                    direct += m.c * std::complex<double>(std::cos(ph), std::sin(ph));
                }
                worst_grid = std::max(worst_grid,
                                      std::abs(g[static_cast<std::size_t>(ix) * G + iy] - direct));
            }
        }
    }
    return {worst_norm <= 1e-12 && worst_grid <= 1e-12,
            "norm drift " + fmt(worst_norm) + ", grid vs direct " + fmt(worst_grid)};
}

// ---- C2: partition of unity --------------------------------------------
Outcome c2_partition() {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double xi = 64.0 * i / 9999.0;
        double sum = 0.0;
        for (long N = 1; N <= 64; N *= 2) sum += make_cutoff(N)(xi);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return {worst <= 1e-12, "max |sum psi_N - 1| = " + fmt(worst)};
}

// ---- C3: strip decomposition partition/reconstruction -------------------
Outcome c3_strips() {
    Rng rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        const long n2 = 4L << rng.uniform_int(0, 2);
        const long n1 = n2 << rng.uniform_int(0, 4);
        Coord c{};
        do {
            for (int j = 0; j < dim; ++j) c[j] = static_cast<int>(rng.uniform_int(-n1, n1));
        } while (norm_sq(c) == 0);
        const auto cube = FrequencyRegion::cube(dim, c, n2);
        const auto dec = strip_decompose(cube, n1, n2);

        // exact set partition
        std::vector<Coord> all;
        for (const auto& s : dec.strips) {
            const auto pts = s.region.lattice_points();
            all.insert(all.end(), pts.begin(), pts.end());
        }
        std::sort(all.begin(), all.end());
        const auto cube_pts = cube.lattice_points();
        if (all.size() != cube_pts.size() ||
            !std::equal(all.begin(), all.end(), cube_pts.begin()))
            return {false, "partition mismatch at trial " + std::to_string(trial)};

        // exact reconstruction sum_l P_{R_l} P phi = P_C P phi
        const auto torus = IrrationalTorus::generic(dim);
        const FourierState phi =
            project(oracle::random_state(torus, 60, static_cast<int>(n1 + n2), 900 + trial),
                    cube);
        std::vector<Mode> merged;
        for (const auto& s : dec.strips) {
            const auto piece = project(phi, s.region);
            merged.insert(merged.end(), piece.modes().begin(), piece.modes().end());
        }
        const FourierState sum(torus, merged);
        if (l2_distance(sum, phi) != 0.0)
            return {false, "reconstruction mismatch at trial " + std::to_string(trial)};
    }
    return {true, "50 random cubes/centers, exact partition and reconstruction"};
}

// ---- C4: point-estimate lemma chain over 200 randomized trials -----------
Outcome c4_point_estimate() {
    PointEstimateTrialsConfig cfg;
    cfg.trials = 200;
    cfg.seed = 404;
    const auto rep = run_point_estimate_trials(cfg);
    int failures = 0;
    for (const auto& r : rep.rows) failures += r.pass ? 0 : 1;
    return {rep.all_pass, std::to_string(failures) + " of 200 trials violated the chain"};
}

// ---- C5: Weyl-sum scaling -----------------------------------------------
Outcome c5_weyl() {
    const std::vector<long> ms{16, 32, 64, 128, 256, 512, 1024};
    const ScalingReport rep = weyl_scaling(3.0, ms, 0.08);
    return {rep.pass, "slope " + fmt(rep.slope) + " vs 2/3 + 0.08 = " + fmt(2.0 / 3.0 + 0.08)};
}

// ---- C6: 2d trilinear lemma ----------------------------------------------
Outcome c6_trilinear_2d() {
    Trilinear2dConfig cfg;
    cfg.p = 4.0;
    cfg.n_big = 64;
    cfg.m_list = {2, 4, 8, 16, 32};
    cfg.opts.slope_tol = 0.1;
    const ScalingReport rep = run_trilinear_2d(cfg);

    // small-instance cross-check against the independent resonance oracle
    Trilinear2dConfig small = cfg;
    small.p = 3.0;
    small.n_big = 4;
    small.m_list = {1, 2, 4};
    small.opts.rtol = 1e-6;
    small.opts.n_t_cap = 1 << 20;
    const ScalingReport srep = run_trilinear_2d(small);
    std::vector<FourierState> f;
    f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {4, 0, 0}, 4),
                          DataFamily::dirichlet, 0));
    f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {0, 0, 0}, 4),
                          DataFamily::dirichlet, 0));
    f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {0, 4, 0}, 4),
                          DataFamily::dirichlet, 0));
    const double oracle_val = oracle::product_lp(f, 3.0, 0.0, 1.0, 4096);
    const double oracle_err = std::abs(srep.rows[2].lhs - oracle_val) / oracle_val;

    const bool pass = rep.pass && oracle_err <= 1e-4;
    return {pass, "M-slope " + fmt(rep.slope) + " vs 1.5 + 0.1; oracle rel err " +
                      fmt(oracle_err)};
}

// ---- C7: 2d linear corollary ----------------------------------------------
Outcome c7_linear_2d() {
    Linear2dConfig cubes;
    cubes.p = 7.0;
    cubes.n_list = {4, 8, 16, 32, 64};
    cubes.opts.slope_tol = 0.1;
    const ScalingReport crep = run_linear_2d(cubes);

    Linear2dConfig rects;
    rects.p = 8.0;
    rects.mode = LinearMode::rectangles;
    rects.q_rect = 6.0;
    rects.n_rect = 16;
    rects.m_list = {1, 2, 4, 8};
    rects.opts.slope_tol = 0.1;
    const ScalingReport rrep = run_linear_2d(rects);

    const double sup1 = crep.extras.at("cardinality_sup_ratio_max");
    const double sup2 = rrep.extras.at("cardinality_sup_ratio_max");
    const bool sup_ok = sup1 <= 1.0 + 1e-12 && sup2 <= 1.0 + 1e-12;
    const bool pass = crep.pass && rrep.pass && sup_ok;
    return {pass, "cube slope " + fmt(crep.slope) + " vs " + fmt(2.0 / 3.0 - 2.0 / 7.0 + 0.1) +
                      "; rect M-slope " + fmt(rrep.slope) + " vs 0.1; sup ratios " + fmt(sup1) +
                      ", " + fmt(sup2)};
}

// ---- C8: 3d linear lemma ---------------------------------------------------
Outcome c8_linear_3d() {
    Linear3dConfig cfg;
    cfg.p = 6.0;
    cfg.n_list = {4, 8, 16, 32};
    cfg.opts.slope_tol = 0.1;
    const ScalingReport rep = run_linear_3d(cfg);
    return {rep.pass,
            "slope " + fmt(rep.slope) + " vs 3/4 - 1/3 + 0.1 = " + fmt(3.0 / 4.0 - 1.0 / 3.0 + 0.1)};
}

// ---- C9: 3d trilinear proposition ------------------------------------------
Outcome c9_trilinear_3d() {
    Trilinear3dConfig balanced;
    balanced.eps = 0.1;
    balanced.mode = SweepMode::balanced;
    balanced.n_list = {4, 8, 16};
    balanced.opts.slope_tol = 0.15;
    const ScalingReport brep = run_trilinear_3d(balanced);

    Trilinear3dConfig sep;
    sep.eps = 0.1;
    sep.mode = SweepMode::separated;
    sep.n_list = {8, 16, 32, 64};
    sep.n_small = 2;
    const ScalingReport srep = run_trilinear_3d(sep);
    const double delta_hat = srep.extras.at("delta_hat");

    const bool pass = brep.pass && delta_hat > 0.0;
    return {pass, "balanced slope " + fmt(brep.slope) + " vs 2 + 0.15; delta_hat " +
                      fmt(delta_hat)};
}

// ---- C10: 2d multilinear proposition (k = 3) -------------------------------
Outcome c10_multilinear_2d() {
    Multilinear2dConfig balanced;
    balanced.k = 3;
    balanced.mode = SweepMode::balanced;
    balanced.n_list = {4, 8, 16, 32};
    balanced.opts.slope_tol = 0.15;
    const ScalingReport brep = run_multilinear_2d(balanced);

    Multilinear2dConfig sep;
    sep.k = 3;
    sep.mode = SweepMode::separated;
    sep.n_list = {4, 8, 16, 32, 64};
    sep.n_small = 2;
    const ScalingReport srep = run_multilinear_2d(sep);
    const double delta_hat = srep.extras.at("delta_hat");

    const bool pass = brep.pass && delta_hat > 0.0;
    return {pass, "balanced slope " + fmt(brep.slope) + " vs 2 + 0.15 = 2.15; delta_hat " +
                      fmt(delta_hat)};
}

// ---- C11: almost-orthogonality deficit ------------------------------------
Outcome c11_orthogonality() {
    OrthogonalityConfig cfg;
    cfg.n2_list = {4, 8, 16, 32};
    cfg.seed = 1111;
    const OrthogonalityReport rep = run_orthogonality_check(cfg);
    bool bound_ok = true;
    for (const auto& r : rep.rows) {
        if (r.skipped) continue;
        bound_ok = bound_ok &&
                   r.deficit <= rep.k_const * std::pow(static_cast<double>(r.n2), -rep.sigma0) *
                                        r.norms_sq +
                                    1e-9 * r.norms_sq;
    }
    return {rep.sigma0 > 0.0 && bound_ok,
            "sigma0 " + fmt(rep.sigma0) + ", K " + fmt(rep.k_const) + ", bound " +
                (bound_ok ? "holds" : "violated")};
}

// ---- C12: NLS solver -------------------------------------------------------
Outcome c12_nls() {
    std::string detail;
    bool pass = true;

    // plane-wave exactness, d = 2 and 3, T = 1, dt = 1e-3
    double worst_pw = 0.0;
    for (int d : {2, 3}) {
        NLSProblem prob;
        prob.torus = IrrationalTorus::generic(d);
        prob.k = 2;
        const std::complex<double> a{0.4, 0.3};
        const Coord n0{1, 1, d == 3 ? -1 : 0};
        prob.initial = FourierState(prob.torus, {{n0, a}});
        prob.T = 1.0;
        prob.dt = 1e-3;
        prob.out_every = 0;
        const Trajectory traj = solve(prob);
        const double omega = 4.0 * M_PI * M_PI * quadratic_form(prob.torus, n0) -
                             std::pow(std::norm(a), prob.k);
        const std::complex<double> expect = a * std::polar(1.0, omega * traj.actual_T);
        worst_pw = std::max(worst_pw, std::abs(traj.final_state.at(n0) - expect));
    }
    pass = pass && worst_pw <= 1e-6;
    detail += "plane-wave err " + fmt(worst_pw);

    // mass and energy drift on small random data (d = 3, k = 2, dt = 5e-4)
    NLSProblem prob;
    prob.torus = IrrationalTorus::generic(3);
    prob.k = 2;
    prob.initial = scale(make_data(prob.torus, FrequencyRegion::cube(3, {0, 0, 0}, 2),
                                   DataFamily::random_phase, 1212),
                         0.01);
    prob.T = 1.0;
    prob.dt = 5e-4;
    prob.out_every = 200;
    const Trajectory traj = solve(prob);
    double mass_drift = 0.0, energy_drift = 0.0;
    for (const auto& f : traj.frames) {
        mass_drift = std::max(mass_drift, std::abs(f.mass - traj.frames.front().mass));
        energy_drift = std::max(energy_drift,
                                std::abs(f.energy_weighted - traj.frames.front().energy_weighted));
    }
    pass = pass && mass_drift <= 1e-10 && energy_drift <= 1e-6;
    detail += "; mass drift " + fmt(mass_drift) + "; energy drift " + fmt(energy_drift);

    // second order in dt: solution error and energy drift both quarter; the
    // retained band covers the cubic image so truncation cannot mask dt^2
    NLSProblem base;
    base.torus = IrrationalTorus::generic(2);
    base.k = 1;
    base.initial = scale(make_data(base.torus, FrequencyRegion::cube(2, {0, 0, 0}, 2),
                                   DataFamily::random_phase, 77),
                         0.3);
    base.T = 0.5;
    base.grid_per_dim = 64;
    base.out_every = 0;
    auto err_and_drift = [&](double dt) {
        NLSProblem fine = base;
        fine.dt = dt / 16.0;
        const FourierState ref = solve(fine).final_state;
        NLSProblem coarse = base;
        coarse.dt = dt;
        coarse.out_every = 1;  // dense frames so the oscillation peak is caught
        const Trajectory tr = solve(coarse);
        double drift = 0.0;
        for (const auto& f : tr.frames)
            drift = std::max(drift, std::abs(f.energy_weighted - tr.frames.front().energy_weighted));
        return std::make_pair(l2_distance(tr.final_state, ref), drift);
    };
    const auto [e1, d1] = err_and_drift(2e-3);
    const auto [e2, d2] = err_and_drift(1e-3);
    const double err_ratio = e1 / e2;
    const double drift_ratio = d1 / d2;
    pass = pass && err_ratio >= 3.5 && err_ratio <= 4.5 && drift_ratio >= 3.5 &&
           drift_ratio <= 4.5;
    detail += "; dt ratios " + fmt(err_ratio) + ", " + fmt(drift_ratio);

    // reversibility
    NLSProblem fwd = base;
    fwd.dt = 1e-3;
    const Trajectory f_traj = solve(fwd);
    NLSProblem bwd = fwd;
    bwd.initial = f_traj.final_state;
    bwd.dt = -fwd.dt;
    const double rev = l2_distance(solve(bwd).final_state, fwd.initial);
    pass = pass && rev <= 1e-6;
    detail += "; reversibility " + fmt(rev);

    return {pass, detail};
}

// ---- C13: rational vs irrational periodicity -------------------------------
Outcome c13_contrast() {
    const FourierState rat = oracle::random_state(IrrationalTorus::square(2), 40, 20, 1313);
    const double rational_gap = l2_distance(propagate(rat, 1.0), rat) / rat.l2_norm();

    const FourierState irr = oracle::random_state(IrrationalTorus::generic(2), 40, 20, 1414);
    const double irrational_gap = l2_distance(propagate(irr, 1.0), irr) / irr.l2_norm();

    const bool pass = rational_gap <= 1e-12 && irrational_gap >= 1e-3;
    return {pass, "rational gap " + fmt(rational_gap) + ", irrational gap " + fmt(irrational_gap)};
}

// ---- C14: determinism across runs and worker counts ------------------------
Outcome c14_determinism() {
    const fs::path dir = fs::temp_directory_path() / "strichartz_acceptance_c14";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "config.json");
        cfg << R"({
            "seed": 2024,
            "experiments": [
                {"name": "weyl", "type": "weyl", "M_list": [16, 32, 64, 128]},
                {"name": "tri", "type": "trilinear-2d", "p": 3.5, "N": 16,
                 "M_list": [2, 4, 8], "family": "gaussian", "trials": 2, "rtol": 1e-3},
                {"name": "pe", "type": "point-estimate", "trials": 8, "max_set": 64, "rtol": 1e-3},
                {"name": "orth", "type": "orthogonality", "N2_list": [2, 4, 8],
                 "rtol": 1e-2, "family": "random_phase"}
            ]
        })";
    }
    auto run_once = [&](const char* sub, int workers) {
        RunOptions opt;
        opt.config_path = (dir / "config.json").string();
        opt.out_dir_override = (dir / sub).string();
        opt.workers_override = workers;
        std::ostringstream diag;
        return run_config(opt, diag);
    };
    if (run_once("a", 1) != kExitOk) return {false, "run a failed"};
    if (run_once("b", 1) != kExitOk) return {false, "run b failed"};
    if (run_once("c", 4) != kExitOk) return {false, "run c failed"};

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    for (const char* name : {"weyl.csv", "tri.csv", "pe.csv", "orth.csv"}) {
        const std::string a = slurp(dir / "a" / name);
        if (a.empty()) return {false, std::string(name) + " missing"};
        if (a != slurp(dir / "b" / name)) return {false, std::string(name) + " differs run-to-run"};
        if (a != slurp(dir / "c" / name))
            return {false, std::string(name) + " differs across worker counts"};
    }
    return {true, "CSV bodies byte-identical across 2 runs and workers {1, 4}"};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria{
        {1, "unitarity & sampling exactness", c1_unitarity},
        {2, "partition of unity", c2_partition},
        {3, "strip decomposition", c3_strips},
        {4, "point-estimate lemma (200 trials)", c4_point_estimate},
        {5, "Weyl-sum scaling", c5_weyl},
        {6, "2d trilinear lemma", c6_trilinear_2d},
        {7, "2d linear corollary", c7_linear_2d},
        {8, "3d linear lemma", c8_linear_3d},
        {9, "3d trilinear proposition", c9_trilinear_3d},
        {10, "2d multilinear proposition", c10_multilinear_2d},
        {11, "almost-orthogonality deficit", c11_orthogonality},
        {12, "NLS solver", c12_nls},
        {13, "rational/irrational contrast", c13_contrast},
        {14, "determinism", c14_determinism},
    };

    // stated runtime ceilings (seconds); absent means no pinned limit
    const std::map<int, double> time_limit{{1, 5.0}, {4, 120.0}, {5, 180.0},
                                           {6, 300.0}, {8, 600.0}};

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.number)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto limit = time_limit.find(c.number);
        if (limit != time_limit.end() && secs > limit->second) {
            out.pass = false;
            out.detail += " [exceeded " + fmt(limit->second) + " s limit]";
        }
        std::printf("[%s] C%-2d %-36s (%.1f s) %s\n", out.pass ? "PASS" : "FAIL", c.number,
                    c.label, secs, out.detail.c_str());
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    return failures;
}
