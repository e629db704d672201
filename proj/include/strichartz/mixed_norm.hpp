#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "strichartz/fft.hpp"
#include "strichartz/fourier_state.hpp"
#include "strichartz/spectral.hpp"

namespace strichartz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// L^p(tau, L^q) evaluation parameters. grid_per_dim = 0 selects the grid
// automatically from the product bandwidth (exact for even q).
struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    double t0 = 0.0;
    double t1 = 1.0;
    long n_t = 64;           // initial time samples
    long n_t_cap = 1 << 20;  // doubling ceiling
    int grid_per_dim = 0;
    double convergence_rtol = 5e-3;
};

struct NormValue {
    double value = 0.0;
    long n_t_used = 0;
    double rel_change = 0.0;  // of the last doubling step
    bool converged = true;
    int grid_used = 0;
    bool exact_space = true;  // space quadrature exact (even q, grid rule met)
};

// (G^{-d} sum |u|^q)^{1/q}; q = inf takes the grid maximum.
double space_norm(const Grid& field, double q);

// (sum_k c_k^p)^{1/p} over an integer sequence, p = inf takes the max.
double seq_lp(std::span<const long long> counts, double p);

// (sum <n>^{2s} |c(n)|^2)^{1/2}.
double h_s_norm(const FourierState& s, double sobolev_s);

// || prod_j e^{itDelta} phi_j ||_{L^p_t L^q_x} over [t0, t1] with a doubling
// certificate in time. Throws convergence_error when the cap is hit.
NormValue mixed_norm(std::span<const FourierState> factors, const MixedNormSpec& spec);

// ----- quadrature engine ------------------------------------------------

struct QuadratureOptions {
    long n_t0 = 64;
    long n_t_cap = 1 << 20;
    double rtol = 5e-3;
};

// L^p norm in time of a nonnegative integrand on a uniform grid, doubling n_t
// until the value stabilizes to rtol. Finite p uses the nested trapezoid rule
// (each doubling reuses every earlier evaluation); p = inf takes the max over
// the same endpoint-inclusive grid (peaks of propagated data sit at t = 0).
template <class F>
NormValue lp_time_norm(F&& f, double t0, double t1, double p, const QuadratureOptions& opt) {
    if (!(t1 > t0)) throw usage_error("time interval must satisfy t0 < t1");
    if (!(p >= 1.0)) throw domain_error("time exponent p must be >= 1");
    const double len = t1 - t0;
    NormValue nv;
    double prev = std::numeric_limits<double>::quiet_NaN();

    double acc = 0.0, comp = 0.0;  // Kahan sum of interior f^p values
    double ends = 0.0;
    double vmax = 0.0;
    long n = opt.n_t0;
    if (p == kInf) {
        vmax = std::max(f(t0), f(t1));
    } else {
        ends = 0.5 * (std::pow(f(t0), p) + std::pow(f(t1), p));
    }
    auto add = [&](double v) {
        if (p == kInf) {
            vmax = std::max(vmax, v);
        } else {
            const double term = std::pow(v, p) - comp;
            const double sum = acc + term;
            comp = (sum - acc) - term;
            acc = sum;
        }
    };
    for (long i = 1; i < n; ++i) add(f(t0 + i * (len / static_cast<double>(n))));

    for (;;) {
        const double value = (p == kInf)
                                 ? vmax
                                 : std::pow((ends + acc) * (len / static_cast<double>(n)), 1.0 / p);
        nv.n_t_used = n;
        nv.value = value;
        if (!std::isnan(prev)) {
            const double scale = std::max(std::abs(value), 1e-300);
            nv.rel_change = std::abs(value - prev) / scale;
            if (nv.rel_change <= opt.rtol) {
                nv.converged = true;
                return nv;
            }
        }
        prev = value;
        if (2 * n > opt.n_t_cap) break;
        // refine: the new points are the midpoints of the current grid
        const double h = len / static_cast<double>(n);
        for (long i = 0; i < n; ++i) add(f(t0 + (static_cast<double>(i) + 0.5) * h));
        n *= 2;
    }
    nv.converged = false;
    throw convergence_error("time quadrature did not converge by n_t cap", prev, nv.value);
}

// Plain integrals of a vector-valued integrand over [t0, t1], all components
// required to stabilize. f(t, out) fills `ncomp` values.
struct VectorQuadResult {
    std::vector<double> integrals;
    long n_t_used = 0;
    double rel_change = 0.0;
    bool converged = false;
};

VectorQuadResult integrate_components(const std::function<void(double, std::span<double>)>& f,
                                      int ncomp, double t0, double t1,
                                      const QuadratureOptions& opt);

// ----- product-field rendering (shared by mixed_norm and the experiment
// drivers) ----------------------------------------------------------------
namespace engine {

// Precomputed scatter data: one state's modes mapped onto a grid, optionally
// recentered by the support-box midpoint. Recentering multiplies the field by
// a unimodular plane wave, which no |.|-based norm can see, and it keeps the
// required grid proportional to support width rather than absolute frequency.
struct FactorField {
    std::vector<std::size_t> index;
    std::vector<double> qval;  // Q(n) of the original (uncentered) frequency
    std::vector<std::complex<double>> coeff;

    static FactorField build(const FourierState& s, const Grid& target, bool recenter);

    // out = field of e^{itDelta} phi on the grid (zero-fills out first).
    void render(double t, Grid& out) const;
};

// Even integer the space exponent is rounded up to for the bandwidth rule
// (q = inf uses 4 so the grid resolves |u|^2 with margin).
int even_exponent(double q);

// Max-axis support-box widths of each factor.
std::vector<int> factor_extents(std::span<const FourierState> factors);

// Smallest power of two G with G > q_even * (sum of extents) / 2, i.e. exact
// spatial quadrature of |prod u_j|^{q_even} after recentering. Throws
// resolution_error past the memory ceiling.
int auto_grid_for_product(std::span<const FourierState> factors, double q);

}  // namespace engine

}  // namespace strichartz
