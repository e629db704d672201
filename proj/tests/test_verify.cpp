#include <cmath>
#include <complex>

#include "doctest.h"

#include "strichartz/rng.hpp"
#include "strichartz/verify.hpp"

using namespace strichartz;

namespace {

// Independent L^p_t L^2_x oracle for a product of propagated states: product
// coefficients by direct convolution per output frequency, Simpson rule in
// time. No grids, no FFTs, no doubling certificates. phase_signs lets a
// factor evolve backwards (for conjugated factors).
double product_lp_oracle(const std::vector<FourierState>& factors, double p, double t0, double t1,
                         long simpson_n, const std::vector<double>& phase_signs = {}) {
    struct Tuple {
        std::size_t m_index;
        std::complex<double> c;
        double q;
    };
    std::vector<Coord> out_freqs;
    std::vector<Tuple> tuples;

    std::vector<std::size_t> idx(factors.size(), 0);
    const auto& t = factors.front().torus();
    // iterate the cartesian product of supports
    for (;;) {
        Coord m{0, 0, 0};
        std::complex<double> c{1.0, 0.0};
        double q = 0.0;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            const Mode& mode = factors[j].modes()[idx[j]];
            for (int a = 0; a < 3; ++a) m[a] += mode.n[a];
            c *= mode.c;
            const double sign = phase_signs.empty() ? 1.0 : phase_signs[j];
            q += sign * quadratic_form(t, mode.n);
        }
        auto it = std::find(out_freqs.begin(), out_freqs.end(), m);
        std::size_t mi;
        if (it == out_freqs.end()) {
            mi = out_freqs.size();
            out_freqs.push_back(m);
        } else {
            mi = static_cast<std::size_t>(it - out_freqs.begin());
        }
        tuples.push_back({mi, c, q});

        std::size_t j = 0;
        while (j < factors.size() && ++idx[j] == factors[j].modes().size()) {
            idx[j] = 0;
            ++j;
        }
        if (j == factors.size()) break;
    }

    auto g_of = [&](double time) {
        std::vector<std::complex<double>> acc(out_freqs.size(), {0.0, 0.0});
        for (const auto& tp : tuples) {
            const double phase = 2.0 * M_PI * tp.q * time;
            acc[tp.m_index] += tp.c * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        double g = 0.0;
        for (const auto& v : acc) g += std::norm(v);
        return g;  // ||prod||_{L^2_x}^2 by Parseval
    };

    // composite Simpson on g^{p/2}
    const long n = simpson_n % 2 == 0 ? simpson_n : simpson_n + 1;
    const double h = (t1 - t0) / static_cast<double>(n);
    double acc = std::pow(g_of(t0), p / 2.0) + std::pow(g_of(t1), p / 2.0);
    for (long i = 1; i < n; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * std::pow(g_of(t0 + i * h), p / 2.0);
    }
    return std::pow(acc * h / 3.0, 1.0 / p);
}

}  // namespace

TEST_CASE("make_data families") {
    const auto torus = IrrationalTorus::generic(2);
    SUBCASE("dirichlet on a side-(2N+1) cube has norm 2N+1") {
        const long N = 3;
        const auto region = FrequencyRegion::cube(2, {0, 0, 0}, 2 * N);
        const FourierState s = make_data(torus, region, DataFamily::dirichlet, 0);
        CHECK(s.l2_norm() == doctest::Approx(static_cast<double>(2 * N + 1)).epsilon(1e-14));
    }
    SUBCASE("random_phase norm is exactly sqrt(#region)") {
        const auto region = FrequencyRegion::annulus(2, 8);
        const FourierState s = make_data(torus, region, DataFamily::random_phase, 5);
        const double expect = std::sqrt(static_cast<double>(region.lattice_points().size()));
        CHECK(s.l2_norm() == doctest::Approx(expect).epsilon(1e-13));
    }
    SUBCASE("fixed seed reproduces coefficients bit for bit") {
        const auto region = FrequencyRegion::cube(2, {3, -1, 0}, 4);
        const FourierState a = make_data(torus, region, DataFamily::gaussian, 99);
        const FourierState b = make_data(torus, region, DataFamily::gaussian, 99);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.modes()[i].c == b.modes()[i].c);
    }
    SUBCASE("dirichlet on the empty region is a usage error") {
        const auto empty = FrequencyRegion::explicit_set(2, {});
        CHECK_THROWS_AS(make_data(torus, empty, DataFamily::dirichlet, 0), usage_error);
    }
}

TEST_CASE("fit_scaling") {
    SUBCASE("exact power law") {
        std::vector<std::pair<double, double>> pts;
        for (double s : {2.0, 4.0, 8.0, 16.0}) pts.emplace_back(s, std::pow(s, 1.75));
        const FitResult f = fit_scaling(pts);
        CHECK(f.slope == doctest::Approx(1.75).epsilon(1e-12));
        CHECK(f.max_residual <= 1e-12);
    }
    SUBCASE("constant values give slope 0") {
        std::vector<std::pair<double, double>> pts{{2, 5}, {4, 5}, {8, 5}};
        CHECK(fit_scaling(pts).slope == doctest::Approx(0.0));
    }
    SUBCASE("noisy power law recovered within 0.01") {
        Rng rng(7);
        std::vector<std::pair<double, double>> pts;
        for (double s : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
            const double noise = 1.0 + 1e-3 * (2.0 * rng.uniform01() - 1.0);
            pts.emplace_back(s, 3.0 * std::pow(s, 1.5) * noise);
        }
        CHECK(fit_scaling(pts).slope == doctest::Approx(1.5).epsilon(0.01));
    }
    SUBCASE("nonpositive values are a data error") {
        std::vector<std::pair<double, double>> pts{{2, 1}, {4, -1}, {8, 1}};
        CHECK_THROWS_AS(fit_scaling(pts), data_error);
        std::vector<std::pair<double, double>> two{{2, 1}, {4, 1}};
        CHECK_THROWS_AS(fit_scaling(two), data_error);
    }
}

TEST_CASE("hypothesis guards reject out-of-range exponents") {
    SUBCASE("trilinear-2d needs 2 < p <= 4") {
        Trilinear2dConfig cfg;
        cfg.p = 5.0;
        CHECK_THROWS_AS(run_trilinear_2d(cfg), config_error);
        cfg.p = 2.0;
        CHECK_THROWS_AS(run_trilinear_2d(cfg), config_error);
    }
    SUBCASE("linear-2d needs p > 6") {
        Linear2dConfig cfg;
        cfg.p = 5.5;
        CHECK_THROWS_AS(run_linear_2d(cfg), config_error);
    }
    SUBCASE("linear-3d needs p > 16/3 and 4 <= q < 3p/4") {
        Linear3dConfig cfg;
        cfg.p = 5.0;
        CHECK_THROWS_AS(run_linear_3d(cfg), config_error);
        cfg.p = 6.0;
        cfg.mode = LinearMode::rectangles;
        cfg.q_rect = 4.6;  // 3p/4 = 4.5
        CHECK_THROWS_AS(run_linear_3d(cfg), config_error);
    }
    SUBCASE("multilinear-2d needs k >= 3") {
        Multilinear2dConfig cfg;
        cfg.k = 2;
        CHECK_THROWS_AS(run_multilinear_2d(cfg), config_error);
    }
    SUBCASE("trilinear-3d needs eps > 0 and dyadic scales") {
        Trilinear3dConfig cfg;
        cfg.eps = 0.0;
        CHECK_THROWS_AS(run_trilinear_3d(cfg), config_error);
        cfg.eps = 0.1;
        cfg.n_list = {4, 6, 8};
        CHECK_THROWS_AS(run_trilinear_3d(cfg), config_error);
    }
}

TEST_CASE("trilinear-2d driver") {
    SUBCASE("degenerate single-mode cubes: LHS = |tau|^{1/p} prod norms") {
        Trilinear2dConfig cfg;
        cfg.p = 4.0;
        cfg.n_big = 1;
        cfg.m_list = {1};
        cfg.opts.rtol = 1e-9;
        // bypass the >= 3 fit points requirement by evaluating the norm directly
        std::vector<FourierState> f;
        f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {1, 0, 0}, 1),
                              DataFamily::dirichlet, 0));
        f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {0, 0, 0}, 1),
                              DataFamily::dirichlet, 0));
        f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {0, 1, 0}, 1),
                              DataFamily::dirichlet, 0));
        MixedNormSpec spec;
        spec.p = 4.0;
        spec.q = 2.0;
        const double got = mixed_norm(f, spec).value;
        CHECK(got == doctest::Approx(1.0).epsilon(1e-12));  // |tau| = 1, unit norms
    }

    SUBCASE("small instance matches the independent resonance oracle to 1e-4") {
        Trilinear2dConfig cfg;
        cfg.p = 3.0;
        cfg.n_big = 4;
        cfg.m_list = {1, 2, 4};
        cfg.opts.rtol = 1e-6;
        cfg.opts.n_t_cap = 1 << 20;
        const ScalingReport rep = run_trilinear_2d(cfg);
        REQUIRE(rep.rows.size() == 3);

        std::vector<FourierState> f;
        f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {4, 0, 0}, 4),
                              DataFamily::dirichlet, 0));
        f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {0, 0, 0}, 4),
                              DataFamily::dirichlet, 0));
        f.push_back(make_data(cfg.torus, FrequencyRegion::cube(2, {0, 4, 0}, 4),
                              DataFamily::dirichlet, 0));
        const double oracle = product_lp_oracle(f, 3.0, 0.0, 1.0, 4096);
        CHECK(rep.rows[2].lhs == doctest::Approx(oracle).epsilon(1e-4));
    }

    SUBCASE("report-level homogeneity: data_scale leaves every ratio unchanged") {
        Trilinear2dConfig cfg;
        cfg.p = 3.5;
        cfg.n_big = 8;
        cfg.m_list = {2, 4, 8};
        cfg.opts.rtol = 1e-4;
        const ScalingReport a = run_trilinear_2d(cfg);
        cfg.opts.data_scale = 3.7;
        const ScalingReport b = run_trilinear_2d(cfg);
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(b.rows[i].ratio == doctest::Approx(a.rows[i].ratio).epsilon(1e-10));
            CHECK(b.rows[i].lhs ==
                  doctest::Approx(a.rows[i].lhs * 3.7 * 3.7 * 3.7).epsilon(1e-10));
        }
        CHECK(b.slope == doctest::Approx(a.slope).epsilon(1e-9));
    }

    SUBCASE("unimodular constant on a factor leaves the report invariant") {
        Trilinear2dConfig cfg;
        cfg.p = 3.0;
        cfg.n_big = 4;
        cfg.m_list = {1, 2, 4};
        cfg.opts.rtol = 1e-4;
        cfg.opts.family = DataFamily::random_phase;
        cfg.opts.seed = 12;
        const ScalingReport a = run_trilinear_2d(cfg);
        const ScalingReport b = run_trilinear_2d(cfg);  // same seed: identical
        for (std::size_t i = 0; i < a.rows.size(); ++i)
            CHECK(a.rows[i].lhs == b.rows[i].lhs);
    }
}

TEST_CASE("linear drivers") {
    SUBCASE("cardinality sup bound is an exact inequality for every family") {
        for (DataFamily fam :
             {DataFamily::dirichlet, DataFamily::random_phase, DataFamily::gaussian}) {
            Linear2dConfig cfg;
            cfg.p = 7.0;
            cfg.n_list = {2, 4, 8};
            cfg.opts.family = fam;
            cfg.opts.seed = 31;
            cfg.opts.rtol = 1e-3;
            const ScalingReport rep = run_linear_2d(cfg);
            CHECK(rep.extras.at("cardinality_sup_ratio_max") <= 1.0 + 1e-12);
        }
    }
    SUBCASE("3d small instance matches the independent oracle to 1e-4") {
        Linear3dConfig cfg;
        cfg.p = 6.0;
        cfg.n_list = {1, 2, 4};
        cfg.opts.rtol = 1e-6;
        cfg.opts.n_t_cap = 1 << 20;
        const ScalingReport rep = run_linear_3d(cfg);
        // oracle for the N = 4 row: L^6_t L^4_x of a single Dirichlet factor.
        // |u|^2 has coefficients conv(c, conj(c)); its L^2 norm in space is the
        // L^4 norm of u, so the trilinear machinery applies with two factors
        // u and conj(u): here we use the direct product oracle with the state
        // and its reflection (conjugate coefficients at negated frequencies).
        const auto torus = cfg.torus;
        const FourierState u = make_data(torus, FrequencyRegion::cube(3, {0, 0, 0}, 4),
                                         DataFamily::dirichlet, 0);
        std::vector<Mode> reflected;
        for (const auto& m : u.modes())
            reflected.push_back({{-m.n[0], -m.n[1], -m.n[2]}, std::conj(m.c)});
        const FourierState ubar(torus, std::move(reflected));
        // || |u|^2 ||_{L^3_t L^2_x} = (L^6_t L^4_x of u)^2; the conjugate
        // factor evolves backwards in time
        const double oracle_sq = product_lp_oracle({u, ubar}, 3.0, 0.0, 1.0, 2048, {1.0, -1.0});
        CHECK(rep.rows[2].lhs * rep.rows[2].lhs == doctest::Approx(oracle_sq).epsilon(1e-4));
    }
}

TEST_CASE("multilinear-2d balanced: all-single-mode degenerate case") {
    // k+1 single modes: LHS = |tau|^{1/2}, finite and trivially bounded
    const auto torus = IrrationalTorus::generic(2);
    std::vector<FourierState> f;
    f.emplace_back(torus, std::vector<Mode>{{{1, 0, 0}, 1.0}});
    f.emplace_back(torus, std::vector<Mode>{{{0, 1, 0}, 1.0}});
    f.emplace_back(torus, std::vector<Mode>{{{-1, 0, 0}, 1.0}});
    f.emplace_back(torus, std::vector<Mode>{{{0, -1, 0}, 1.0}});
    MixedNormSpec spec;
    spec.p = 2.0;
    spec.q = 2.0;
    CHECK(mixed_norm(f, spec).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strip projections reconstruct inside the product norm") {
    // a factor supported in a single strip: the strip sum collapses to the
    // full norm because every other strip projection is empty
    const auto torus = IrrationalTorus::generic(2);
    const auto cube = FrequencyRegion::cube(2, {16, 0, 0}, 4);
    const auto dec = strip_decompose(cube, 16, 4);
    REQUIRE(dec.strips.size() >= 2);

    const FourierState phi1_full = make_data(torus, cube, DataFamily::random_phase, 3);
    const FourierState piece = project(phi1_full, dec.strips[1].region);
    REQUIRE(!piece.empty());
    const FourierState phi2 = make_data(torus, FrequencyRegion::cube(2, {0, 0, 0}, 4),
                                        DataFamily::random_phase, 4);

    MixedNormSpec spec;
    spec.p = 2.0;
    spec.q = 2.0;
    spec.convergence_rtol = 1e-5;
    const double full = mixed_norm(std::vector<FourierState>{piece, phi2}, spec).value;
    double strip_sum_sq = 0.0;
    for (const auto& s : dec.strips) {
        const FourierState sub = project(piece, s.region);
        if (sub.empty()) continue;
        const double v = mixed_norm(std::vector<FourierState>{sub, phi2}, spec).value;
        strip_sum_sq += v * v;
    }
    CHECK(strip_sum_sq == doctest::Approx(full * full).epsilon(1e-10));
}

TEST_CASE("orthogonality driver (tiny sweep)") {
    OrthogonalityConfig cfg;
    cfg.n2_list = {2, 4, 8};
    cfg.seed = 7;
    cfg.rtol = 1e-3;
    const OrthogonalityReport rep = run_orthogonality_check(cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& r : rep.rows) {
        CHECK(!r.skipped);
        CHECK(r.n_strips >= 1);
        CHECK(r.strip_sum > 0.0);
        // tau_0 is inside tau_1, so the squared norm can only grow
        CHECK(r.lhs_sq_tau0 <= r.lhs_sq_tau1 * (1.0 + 5e-2) + 1e-12);
        // integral identity: cross = lhs_tau1 - strip_sum up to quadrature
        CHECK(r.cross ==
              doctest::Approx(r.lhs_sq_tau1 - r.strip_sum).epsilon(5e-2));
        // the fitted bound covers the deficit
        CHECK(r.deficit <= rep.k_const * std::pow(static_cast<double>(r.n2), -rep.sigma0) *
                                   r.norms_sq +
                               1e-9 * r.norms_sq);
    }
    const ScalingReport as_common = rep.to_report();
    CHECK(as_common.rows.size() == 3);
    CHECK(as_common.extras.count("sigma0") == 1);
}

TEST_CASE("point-estimate trials driver") {
    PointEstimateTrialsConfig cfg;
    cfg.trials = 8;
    cfg.max_set = 64;
    cfg.seed = 5;
    cfg.quad.rtol = 1e-4;
    const auto rep = run_point_estimate_trials(cfg);
    REQUIRE(rep.rows.size() == 8);
    CHECK(rep.all_pass);
    for (const auto& r : rep.rows) {
        CHECK(r.pass);
        CHECK(r.lhs > 0.0);
        CHECK(r.set_size <= 64);
    }
    // determinism
    const auto rep2 = run_point_estimate_trials(cfg);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(rep.rows[i].lhs == rep2.rows[i].lhs);
        CHECK(rep.rows[i].rhs == rep2.rows[i].rhs);
    }
}
