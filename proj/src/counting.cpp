#include "strichartz/counting.hpp"

#include <algorithm>
#include <cmath>

namespace strichartz {

long long LevelSetFamily::total() const {
    long long t = 0;
    for (const auto& [k, c] : counts) t += c;
    return t;
}

std::vector<long long> LevelSetFamily::count_values() const {
    std::vector<long long> v;
    v.reserve(counts.size());
    for (const auto& [k, c] : counts) v.push_back(c);
    return v;
}

LevelSetFamily level_set_counts(std::span<const double> fvals, double r) {
    if (!(r > 0.0)) throw domain_error("level_set_counts: r must be positive");
    LevelSetFamily fam;
    fam.r = r;
    for (double f : fvals) {
        const long long k_lo = static_cast<long long>(std::ceil(f - r));
        const long long k_hi = static_cast<long long>(std::floor(f + r));
        for (long long k = k_lo; k <= k_hi; ++k) fam.counts[k]++;
    }
    return fam;
}

double Window::eta(double t) const { return c * std::max(0.0, 2.0 * a - std::fabs(t)); }

double Window::eta_hat(double tau) const {
    if (tau == 0.0) return c * (2.0 * a) * (2.0 * a);
    const double s = std::sin(2.0 * M_PI * a * tau) / (M_PI * tau);
    return c * s * s;
}

double Window::certificate_min(int grid_points) const {
    double m = eta_hat(r);
    for (int i = 0; i < grid_points; ++i) {
        const double tau = -r + 2.0 * r * static_cast<double>(i) / (grid_points - 1);
        m = std::min(m, eta_hat(tau));
    }
    return m;
}

Window make_window(double r) {
    if (!(r > 0.0)) throw domain_error("make_window: r must be positive");
    Window w;
    w.r = r;
    w.a = 1.0 / (4.0 * r);
    w.c = M_PI * M_PI * r * r;
    w.lo = -2.0 * w.a;
    w.hi = 2.0 * w.a;
    return w;
}

std::complex<double> exp_sum(std::span<const double> fvals, double t) {
    double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;  // Kahan per component
    for (double f : fvals) {
        const double phase = 2.0 * M_PI * f * t;
        const double cr = std::cos(phase), ci = std::sin(phase);
        double term = cr - re_c;
        double sum = re + term;
        re_c = (sum - re) - term;
        re = sum;
        term = ci - im_c;
        sum = im + term;
        im_c = (sum - im) - term;
        im = sum;
    }
    return {re, im};
}

namespace {

// |exp_sum| on the n midpoint samples of [lo, hi], via one rotation per
// frequency: e^{2 pi i f (t0 + j h)} = e^{2 pi i f t0} (e^{2 pi i f h})^j.
std::vector<double> exp_sum_moduli(std::span<const double> fvals, double lo, double hi, long n) {
    const double h = (hi - lo) / static_cast<double>(n);
    const double t_first = lo + 0.5 * h;
    std::vector<std::complex<double>> cur(fvals.size()), rot(fvals.size());
    for (std::size_t i = 0; i < fvals.size(); ++i) {
        const double p0 = 2.0 * M_PI * fvals[i] * t_first;
        const double pr = 2.0 * M_PI * fvals[i] * h;
        cur[i] = {std::cos(p0), std::sin(p0)};
        rot[i] = {std::cos(pr), std::sin(pr)};
    }
    std::vector<double> out(n);
    for (long j = 0; j < n; ++j) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < cur.size(); ++i) {
            acc += cur[i];
            cur[i] *= rot[i];
        }
        out[j] = std::abs(acc);
    }
    return out;
}

}  // namespace

NormValue exp_sum_lp_norm(std::span<const double> fvals, double p_dual, double lo, double hi,
                          const QuadratureOptions& opt) {
    if (!(p_dual >= 1.0)) throw domain_error("exp_sum_lp_norm: p_dual must be >= 1");
    if (!(hi > lo)) throw usage_error("exp_sum_lp_norm: empty interval");
    NormValue nv;
    double prev = std::numeric_limits<double>::quiet_NaN();
    const double len = hi - lo;
    for (long n = opt.n_t0; n <= opt.n_t_cap; n *= 2) {
        const auto samples = exp_sum_moduli(fvals, lo, hi, n);
        double value;
        if (p_dual == kInf) {
            value = *std::max_element(samples.begin(), samples.end());
        } else {
            double acc = 0.0, comp = 0.0;
            for (double v : samples) {
                const double term = std::pow(v, p_dual) - comp;
                const double sum = acc + term;
                comp = (sum - acc) - term;
                acc = sum;
            }
            value = std::pow(acc * (len / static_cast<double>(n)), 1.0 / p_dual);
        }
        nv.value = value;
        nv.n_t_used = n;
        if (!std::isnan(prev)) {
            nv.rel_change = std::abs(value - prev) / std::max(std::abs(value), 1e-300);
            if (nv.rel_change <= opt.rtol) {
                nv.converged = true;
                return nv;
            }
        }
        prev = value;
    }
    throw convergence_error("exp_sum_lp_norm did not converge by n_t cap", prev, nv.value);
}

PointEstimateResult point_estimate_check(std::span<const double> fvals, double r, double p,
                                         const QuadratureOptions& opt, double inequality_tol) {
    if (!(p >= 2.0)) throw usage_error("point_estimate_check: p must be >= 2");
    if (!(r >= 1.0)) throw usage_error("point_estimate_check: r must be >= 1");
    const Window w = make_window(r);
    const double p_dual = p / (p - 1.0);

    PointEstimateResult res;
    res.counts = level_set_counts(fvals, r);
    const auto counts = res.counts.count_values();
    res.lhs = seq_lp(std::span<const long long>(counts.data(), counts.size()), p);
    res.sup_eta = w.sup_eta();

    // ||psi||_{L^{p'}(I)} with psi(t) = eta(t) E(t): same sample path as the
    // plain exponential-sum norm, weighted by eta.
    {
        NormValue nv;
        nv.converged = false;
        double prev = std::numeric_limits<double>::quiet_NaN();
        const double len = w.hi - w.lo;
        for (long n = opt.n_t0; n <= opt.n_t_cap; n *= 2) {
            const auto samples = exp_sum_moduli(fvals, w.lo, w.hi, n);
            const double h = len / static_cast<double>(n);
            double acc = 0.0, comp = 0.0;
            for (long j = 0; j < n; ++j) {
                const double t = w.lo + (static_cast<double>(j) + 0.5) * h;
                const double term = std::pow(w.eta(t) * samples[j], p_dual) - comp;
                const double sum = acc + term;
                comp = (sum - acc) - term;
                acc = sum;
            }
            const double value = std::pow(acc * (len / static_cast<double>(n)), 1.0 / p_dual);
            nv.value = value;
            nv.n_t_used = n;
            if (!std::isnan(prev)) {
                nv.rel_change = std::abs(value - prev) / std::max(std::abs(value), 1e-300);
                if (nv.rel_change <= opt.rtol) {
                    nv.converged = true;
                    break;
                }
            }
            prev = value;
        }
        if (!nv.converged)
            throw convergence_error("point_estimate_check: intermediate norm did not converge",
                                    prev, nv.value);
        res.intermediate = nv.value;
        res.intermediate_nv = nv;
    }

    res.rhs_nv = exp_sum_lp_norm(fvals, p_dual, w.lo, w.hi, opt);
    res.rhs = res.rhs_nv.value;
    res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
    const double slack = 1.0 + inequality_tol;
    res.chain_ok = res.lhs <= res.intermediate * slack + inequality_tol &&
                   res.intermediate <= res.sup_eta * res.rhs * slack + inequality_tol;
    return res;
}

WeylNorm weyl_lp_norm(long M, double two_p) {
    if (M < 1) throw usage_error("weyl_lp_norm: M must be >= 1");
    if (!(two_p >= 1.0)) throw domain_error("weyl_lp_norm: exponent must be >= 1");
    const int q_even = engine::even_exponent(two_p);
    // |W|^{q_even} has integer frequencies bounded by (q_even/2) (M-1)^2; a
    // uniform grid longer than that integrates it exactly.
    const unsigned long long span =
        static_cast<unsigned long long>(q_even / 2) * static_cast<unsigned long long>(M - 1) *
            static_cast<unsigned long long>(M - 1) +
        1ULL;
    const long t_len = static_cast<long>(fft::next_pow2(std::max<std::size_t>(span, 8)));

    Grid line(1, static_cast<int>(t_len));
    for (long n = 0; n < M; ++n) {
        const long long freq = (static_cast<long long>(n) * n) % t_len;
        line[static_cast<std::size_t>(freq)] += 1.0;
    }
    fft::backward(line);

    double acc = 0.0, comp = 0.0;
    const double half = 0.5 * two_p;
    for (std::size_t i = 0; i < line.total(); ++i) {
        const double term = std::pow(std::norm(line[i]), half) - comp;
        const double sum = acc + term;
        comp = (sum - acc) - term;
        acc = sum;
    }
    WeylNorm wn;
    wn.value = std::pow(acc / static_cast<double>(t_len), 1.0 / two_p);
    wn.grid_t = t_len;
    wn.exact = (two_p == static_cast<double>(q_even));
    return wn;
}

ScalingReport weyl_scaling(double p, std::span<const long> m_list, double slope_tol) {
    if (!(p > 2.0)) throw config_error("weyl.p", "requires p > 2");
    if (m_list.size() < 3) throw config_error("weyl.M_list", "need at least 3 dyadic scales");
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        if (!is_dyadic(m_list[i])) throw config_error("weyl.M_list", "scales must be dyadic");
        if (i > 0 && m_list[i] <= m_list[i - 1])
            throw config_error("weyl.M_list", "scales must be increasing");
    }
    ScalingReport rep;
    rep.experiment = "weyl";
    rep.dim = 1;
    rep.family = "quadratic";
    rep.p = p;
    rep.scale_axis = "M";
    rep.predicted = 1.0 - 1.0 / p;
    std::vector<std::pair<double, double>> pts;
    for (long M : m_list) {
        const WeylNorm wn = weyl_lp_norm(M, 2.0 * p);
        SweepRow row;
        row.n1 = static_cast<double>(M);
        row.m = static_cast<double>(M);
        row.lhs = wn.value;
        row.rhs_model = std::pow(static_cast<double>(M), rep.predicted);
        row.ratio = row.lhs / row.rhs_model;
        row.n_t_used = wn.grid_t;
        rep.rows.push_back(row);
        pts.emplace_back(static_cast<double>(M), wn.value);
    }
    const FitResult fit = fit_scaling(pts);
    rep.fit_points = pts;
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.max_residual = fit.max_residual;
    rep.slack = rep.slope - rep.predicted;
    rep.pass = rep.slope <= rep.predicted + slope_tol;
    rep.extras["slope_tol"] = slope_tol;
    return rep;
}

}  // namespace strichartz
