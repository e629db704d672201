#include "strichartz/nls.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "strichartz/mixed_norm.hpp"
#include "strichartz/parallel.hpp"
#include "strichartz/rng.hpp"
#include "strichartz/spectral.hpp"
#include "strichartz/verify.hpp"

#include "json.hpp"

namespace strichartz {

FourierState linear_step(const FourierState& s, double dt) {
    std::vector<Mode> out = s.modes();
    for (auto& m : out) {
        const double phase = 4.0 * M_PI * M_PI * quadratic_form(s.torus(), m.n) * dt;
        m.c *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return FourierState(s.torus(), std::move(out));
}

void nonlinear_step(Grid& field, double dt, int k, int sign) {
    if (k < 1) throw usage_error("nonlinear_step: k must be >= 1");
    for (std::size_t i = 0; i < field.total(); ++i) {
        const double usq = std::norm(field[i]);
        const double phase = -static_cast<double>(sign) * std::pow(usq, k) * dt;
        field[i] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
}

namespace {

// signed frequency of a wrapped grid index component
inline int signed_freq(int idx, int g) { return idx <= g / 2 ? idx : idx - g; }

FourierState state_from_grid(const IrrationalTorus& torus, const Grid& coeffs) {
    std::vector<Mode> modes;
    const int g = coeffs.size();
    const int d = coeffs.dim();
    std::size_t idx = 0;
    Coord n{0, 0, 0};
    const int y_n = d >= 2 ? g : 1;
    const int z_n = d == 3 ? g : 1;
    for (int x = 0; x < g; ++x) {
        for (int y = 0; y < y_n; ++y) {
            for (int z = 0; z < z_n; ++z, ++idx) {
                const std::complex<double> c = coeffs[idx];
                if (c != std::complex<double>(0.0, 0.0)) {
                    n[0] = signed_freq(x, g);
                    n[1] = d >= 2 ? signed_freq(y, g) : 0;
                    n[2] = d == 3 ? signed_freq(z, g) : 0;
                    modes.push_back({n, c});
                }
            }
        }
    }
    return FourierState(torus, std::move(modes));
}

}  // namespace

ConservedQuantities conserved(const FourierState& s, int k, int sign, int grid_per_dim) {
    ConservedQuantities q;
    const double four_pi_sq = 4.0 * M_PI * M_PI;
    double mass = 0, kin_w = 0, kin_u = 0;
    for (const auto& m : s.modes()) {
        const double a2 = std::norm(m.c);
        mass += a2;
        kin_w += four_pi_sq * quadratic_form(s.torus(), m.n) * a2;
        kin_u += four_pi_sq * static_cast<double>(norm_sq(m.n)) * a2;
    }
    q.mass = 0.5 * mass;

    double potential = 0.0, sup = 0.0;
    if (!s.empty()) {
        const int b = s.max_abs_freq();
        const int needed = 2 * (k + 1) * b + 1;
        int g = grid_per_dim > 0 ? grid_per_dim : static_cast<int>(fft::next_pow2(needed));
        if (g < needed)
            throw resolution_error("conserved: grid " + std::to_string(g) +
                                   " cannot integrate |u|^{2k+2} exactly (need >= " +
                                   std::to_string(needed) + ")");
        Grid field = sample_grid(s, g);
        double acc = 0.0, comp = 0.0;
        for (std::size_t i = 0; i < field.total(); ++i) {
            const double u2 = std::norm(field[i]);
            sup = std::max(sup, u2);
            const double term = std::pow(u2, k + 1) - comp;
            const double sum = acc + term;
            comp = (sum - acc) - term;
            acc = sum;
        }
        potential = acc / static_cast<double>(field.total());
        sup = std::sqrt(sup);
    }
    // for i u_t - Delta u = sign |u|^{2k} u the constant of motion pairs the
    // kinetic term with the opposite sign of the nonlinearity
    const double pot_term = potential / static_cast<double>(2 * k + 2);
    q.energy_weighted = 0.5 * kin_w - sign * pot_term;
    q.energy_unweighted = 0.5 * kin_u - sign * pot_term;
    q.h_sc = h_s_norm(s, critical_index(s.dim(), k).value());
    q.sup_norm = sup;
    return q;
}

Trajectory solve(const NLSProblem& problem) {
    if (problem.k < 1) throw usage_error("solve: k must be >= 1");
    if (!(problem.dt != 0.0)) throw usage_error("solve: dt must be nonzero");
    if (problem.initial.dim() != problem.torus.dim)
        throw usage_error("solve: initial data dimension mismatch");

    const int d = problem.torus.dim;
    const int b0 = problem.initial.max_abs_freq();
    // auto grid: oversample by k+1 relative to the data bandwidth; an explicit
    // grid only has to keep the data inside the 2/3 truncation band
    const int g = problem.grid_per_dim > 0
                      ? problem.grid_per_dim
                      : static_cast<int>(
                            fft::next_pow2(std::max(2 * (problem.k + 1) * std::max(b0, 1), 8)));
    if (g < std::max(3 * b0, 4))
        throw resolution_error("solve: grid " + std::to_string(g) +
                               " cannot hold the data inside the 2/3 band (need >= " +
                               std::to_string(std::max(3 * b0, 4)) + ")");
    const int keep = g / 3;  // 2/3-rule band

    // spectral state on the wrapped grid
    Grid coeffs(d, g);
    for (const auto& m : problem.initial.modes()) coeffs[coeffs.wrap_index(m.n.data())] += m.c;

    // per-index linear half-step phase and truncation mask
    const std::size_t cells = coeffs.total();
    std::vector<std::complex<double>> half_phase(cells);
    std::vector<bool> keep_mask(cells);
    {
        const double w = 4.0 * M_PI * M_PI * (problem.dt / 2.0);
        std::size_t idx = 0;
        Coord n{0, 0, 0};
        const int y_n = d >= 2 ? g : 1;
        const int z_n = d == 3 ? g : 1;
        for (int x = 0; x < g; ++x) {
            for (int y = 0; y < y_n; ++y) {
                for (int z = 0; z < z_n; ++z, ++idx) {
                    n[0] = signed_freq(x, g);
                    n[1] = d >= 2 ? signed_freq(y, g) : 0;
                    n[2] = d == 3 ? signed_freq(z, g) : 0;
                    const double phase = w * quadratic_form(problem.torus, n);
                    half_phase[idx] = {std::cos(phase), std::sin(phase)};
                    bool inside = true;
                    for (int j = 0; j < d; ++j)
                        inside = inside && std::abs(n[j]) <= keep;
                    keep_mask[idx] = inside;
                }
            }
        }
    }

    const long steps = std::llround(std::abs(problem.T / problem.dt));
    Trajectory traj;
    traj.actual_T = static_cast<double>(steps) * problem.dt;
    traj.grid_used = g;

    auto record = [&](double t) {
        FourierState s = state_from_grid(problem.torus, coeffs);
        ConservedQuantities q = conserved(s, problem.k, problem.sign);
        q.t = t;
        traj.frames.push_back(q);
    };
    record(0.0);

    for (long step = 0; step < steps; ++step) {
        for (std::size_t i = 0; i < cells; ++i) coeffs[i] *= half_phase[i];
        if (problem.nonlinear) {
            fft::backward(coeffs);
            double sup_sq = 0.0;
            for (std::size_t i = 0; i < cells; ++i) sup_sq = std::max(sup_sq, std::norm(coeffs[i]));
            if (sup_sq > problem.blowup_sup * problem.blowup_sup) {
                throw blowup_error("solve: sup |u| exceeded the blow-up ceiling",
                                   static_cast<double>(step) * problem.dt, std::sqrt(sup_sq));
            }
            nonlinear_step(coeffs, problem.dt, problem.k, problem.sign);
            fft::forward(coeffs);
            for (std::size_t i = 0; i < cells; ++i) {
                if (!keep_mask[i]) coeffs[i] = 0.0;
            }
        }
        for (std::size_t i = 0; i < cells; ++i) coeffs[i] *= half_phase[i];
        const double t = static_cast<double>(step + 1) * problem.dt;
        if ((problem.out_every > 0 && (step + 1) % problem.out_every == 0) || step + 1 == steps)
            record(t);
    }

    traj.final_state = state_from_grid(problem.torus, coeffs);
    return traj;
}

void Trajectory::write_csv(std::ostream& out) const {
    out << "t,mass,energy_weighted,energy_unweighted,h_sc,sup_norm\n";
    for (const auto& f : frames) {
        out << format_double(f.t) << ',' << format_double(f.mass) << ','
            << format_double(f.energy_weighted) << ',' << format_double(f.energy_unweighted)
            << ',' << format_double(f.h_sc) << ',' << format_double(f.sup_norm) << '\n';
    }
}

SmallDataReport small_data_experiment(const SmallDataConfig& cfg) {
    const bool admissible = (cfg.d == 2 && cfg.k >= 3) || (cfg.d == 3 && cfg.k == 2);
    if (!admissible)
        throw config_error("small-data.d_k",
                           "admissible pairs are d=2 with k>=3 and d=3 with k=2");

    SmallDataReport rep;
    rep.d = cfg.d;
    rep.k = cfg.k;
    rep.s_c = critical_index(cfg.d, cfg.k).value();

    const IrrationalTorus torus = IrrationalTorus::generic(cfg.d);
    FourierState base = make_data(
        torus, FrequencyRegion::cube(cfg.d, {0, 0, 0}, cfg.cube_side), DataFamily::random_phase,
        mix_seed(cfg.seed, "small-data"));
    const double base_hsc = h_s_norm(base, rep.s_c);
    base = scale(base, 1.0 / base_hsc);  // unit critical norm

    rep.rows.resize(cfg.deltas.size());
    parallel_for(cfg.deltas.size(), cfg.workers, [&](std::size_t i) {
        const double delta = cfg.deltas[i];
        SmallDataRow row;
        row.delta = delta;
        if (delta == 0.0) {
            row.ratio = 1.0;  // convention
            rep.rows[i] = row;
            return;
        }
        NLSProblem prob;
        prob.torus = torus;
        prob.k = cfg.k;
        prob.sign = cfg.sign;
        prob.initial = scale(base, delta);
        prob.T = cfg.T;
        prob.dt = cfg.dt;
        prob.nonlinear = cfg.nonlinear;
        prob.out_every = std::max<long>(1, std::llround(cfg.T / cfg.dt) / 32);
        const Trajectory traj = solve(prob);
        double sup_hsc = 0.0;
        for (const auto& f : traj.frames) sup_hsc = std::max(sup_hsc, f.h_sc);
        row.ratio = sup_hsc / delta;  // base data has unit critical norm
        rep.rows[i] = row;
    });
    return rep;
}

void SmallDataReport::write_csv(std::ostream& out) const {
    out << "delta,ratio\n";
    for (const auto& r : rows) out << format_double(r.delta) << ',' << format_double(r.ratio) << '\n';
}

std::string SmallDataReport::to_json(int indent) const {
    nlohmann::json j;
    j["experiment"] = "small-data";
    j["d"] = d;
    j["k"] = k;
    j["s_c"] = s_c;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) j["rows"].push_back({{"delta", r.delta}, {"ratio", r.ratio}});
    return j.dump(indent);
}

}  // namespace strichartz
