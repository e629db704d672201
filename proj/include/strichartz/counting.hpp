#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "strichartz/mixed_norm.hpp"
#include "strichartz/scaling.hpp"
#include "strichartz/torus.hpp"

namespace strichartz {

// Counts of S_k = { n : |f(n) - k| <= r }, k in Z, from the multiset of
// f-values. Exact integer enumeration.
struct LevelSetFamily {
    double r = 1.0;
    std::map<long long, long long> counts;  // only nonzero entries

    long long total() const;
    std::vector<long long> count_values() const;  // for seq_lp
};

LevelSetFamily level_set_counts(std::span<const double> fvals, double r);

// Nonnegative window eta = c X_[-a,a] * X_[-a,a] with a = 1/(4r), c = pi^2 r^2,
// chosen so that eta_hat >= 1 on [-r, r] with equality at |tau| = r.
struct Window {
    double r = 1.0;
    double a = 0.25;
    double c = 1.0;
    double lo = -0.5, hi = 0.5;  // I = supp eta = [-2a, 2a]

    double eta(double t) const;
    double eta_hat(double tau) const;
    double sup_eta() const { return 2.0 * c * a; }

    // min of eta_hat over a uniform grid of [-r, r]; the lemma needs >= 1.
    double certificate_min(int grid_points = 10000) const;
};

Window make_window(double r);

// sum_{n in S} e^{2 pi i f(n) t} by compensated direct summation.
std::complex<double> exp_sum(std::span<const double> fvals, double t);

// L^{p_dual}(I) norm of t -> |exp_sum(f, t)| with the doubling certificate.
// Samples are generated by per-frequency phase recurrences (one complex
// multiply per point per sample instead of a sin/cos pair).
NormValue exp_sum_lp_norm(std::span<const double> fvals, double p_dual, double lo, double hi,
                          const QuadratureOptions& opt = {});

// The full proof chain of the point-estimate lemma:
//   ||#S_k||_{l^p} <= ||psi||_{L^{p'}(I)} <= sup(eta) ||E||_{L^{p'}(I)}
// with psi = eta * E and E the exponential sum. `ratio` is lhs/rhs.
struct PointEstimateResult {
    double lhs = 0;
    double intermediate = 0;
    double rhs = 0;
    double sup_eta = 0;
    double ratio = 0;
    bool chain_ok = false;
    LevelSetFamily counts;
    NormValue intermediate_nv, rhs_nv;
};

PointEstimateResult point_estimate_check(std::span<const double> fvals, double r, double p,
                                         const QuadratureOptions& opt = {},
                                         double inequality_tol = 1e-6);

// || sum_{n=0}^{M-1} e^{2 pi i n^2 t} ||_{L^{two_p}([0,1])}. The integrand has
// integer frequencies, so it is evaluated on a uniform grid by binning n^2
// mod T and taking one FFT; for even two_p the quadrature is exact.
struct WeylNorm {
    double value = 0;
    long grid_t = 0;  // FFT length used
    bool exact = false;
};

WeylNorm weyl_lp_norm(long M, double two_p);

// Dyadic sweep of log ||W_M||_{L^{2p}} against log M, compared with the
// predicted exponent 1 - 1/p.
ScalingReport weyl_scaling(double p, std::span<const long> m_list, double slope_tol = 0.08);

}  // namespace strichartz
