#include "strichartz/mixed_norm.hpp"

#include <algorithm>
#include <cmath>

namespace strichartz {

double space_norm(const Grid& field, double q) {
    if (q == kInf) {
        double m = 0.0;
        for (std::size_t i = 0; i < field.total(); ++i) m = std::max(m, std::abs(field[i]));
        return m;
    }
    if (!(q >= 1.0)) throw domain_error("space_norm: q must be >= 1");
    double acc = 0.0, comp = 0.0;
    if (q == 2.0) {
        for (std::size_t i = 0; i < field.total(); ++i) {
            const double term = std::norm(field[i]) - comp;
            const double sum = acc + term;
            comp = (sum - acc) - term;
            acc = sum;
        }
    } else {
        const double half_q = 0.5 * q;
        for (std::size_t i = 0; i < field.total(); ++i) {
            const double term = std::pow(std::norm(field[i]), half_q) - comp;
            const double sum = acc + term;
            comp = (sum - acc) - term;
            acc = sum;
        }
    }
    return std::pow(acc / static_cast<double>(field.total()), 1.0 / q);
}

double seq_lp(std::span<const long long> counts, double p) {
    if (!(p >= 1.0)) throw domain_error("seq_lp: p must be >= 1");
    if (p == kInf) {
        long long m = 0;
        for (long long c : counts) m = std::max(m, c);
        return static_cast<double>(m);
    }
    double acc = 0.0;
    for (long long c : counts) acc += std::pow(static_cast<double>(c), p);
    return std::pow(acc, 1.0 / p);
}

double h_s_norm(const FourierState& s, double sobolev_s) {
    double acc = 0.0;
    for (const auto& m : s.modes()) acc += sobolev_weight(m.n, sobolev_s) * std::norm(m.c);
    return std::sqrt(acc);
}

VectorQuadResult integrate_components(const std::function<void(double, std::span<double>)>& f,
                                      int ncomp, double t0, double t1,
                                      const QuadratureOptions& opt) {
    if (!(t1 > t0)) throw usage_error("time interval must satisfy t0 < t1");
    const double len = t1 - t0;
    VectorQuadResult res;
    std::vector<double> prev;
    std::vector<double> sample(ncomp);

    // nested trapezoid, as in lp_time_norm
    std::vector<double> acc(ncomp, 0.0), comp(ncomp, 0.0), ends(ncomp, 0.0);
    auto add = [&](std::span<double> vals, std::vector<double>& into) {
        for (int c = 0; c < ncomp; ++c) {
            const double term = vals[c] - comp[c];
            const double sum = into[c] + term;
            comp[c] = (sum - into[c]) - term;
            into[c] = sum;
        }
    };
    f(t0, sample);
    for (int c = 0; c < ncomp; ++c) ends[c] = 0.5 * sample[c];
    f(t1, sample);
    for (int c = 0; c < ncomp; ++c) ends[c] += 0.5 * sample[c];
    long n = opt.n_t0;
    for (long i = 1; i < n; ++i) {
        f(t0 + i * (len / static_cast<double>(n)), sample);
        add(sample, acc);
    }

    for (;;) {
        std::vector<double> integrals(ncomp);
        for (int c = 0; c < ncomp; ++c)
            integrals[c] = (ends[c] + acc[c]) * len / static_cast<double>(n);
        res.n_t_used = n;
        res.integrals = integrals;
        if (!prev.empty()) {
            // components much smaller than the dominant one are held to an
            // absolute tolerance instead of a relative one, so near-cancelling
            // quantities cannot stall the certificate
            double global = 0.0;
            for (int c = 0; c < ncomp; ++c) global = std::max(global, std::abs(integrals[c]));
            double worst = 0.0;
            for (int c = 0; c < ncomp; ++c) {
                const double scale = std::max({std::abs(integrals[c]), 1e-6 * global, 1e-300});
                worst = std::max(worst, std::abs(integrals[c] - prev[c]) / scale);
            }
            res.rel_change = worst;
            if (worst <= opt.rtol) {
                res.converged = true;
                return res;
            }
        }
        prev = integrals;
        if (2 * n > opt.n_t_cap) break;
        const double h = len / static_cast<double>(n);
        for (long i = 0; i < n; ++i) {
            f(t0 + (static_cast<double>(i) + 0.5) * h, sample);
            add(sample, acc);
        }
        n *= 2;
    }
    throw convergence_error("vector quadrature did not converge by n_t cap",
                            prev.empty() ? 0.0 : prev[0],
                            res.integrals.empty() ? 0.0 : res.integrals[0]);
}

namespace engine {

int even_exponent(double q) {
    if (q == kInf) return 4;
    const int up = static_cast<int>(std::ceil(q));
    return up + (up % 2);
}

std::vector<int> factor_extents(std::span<const FourierState> factors) {
    std::vector<int> out;
    out.reserve(factors.size());
    for (const auto& s : factors) {
        const auto box = s.support_box();
        int e = 0;
        if (!box.empty) {
            for (int j = 0; j < s.dim(); ++j) e = std::max(e, box.hi[j] - box.lo[j]);
        }
        out.push_back(e);
    }
    return out;
}

int auto_grid_for_product(std::span<const FourierState> factors, double q) {
    const int dim = factors.empty() ? 2 : factors.front().dim();
    long sum_ext = 0;
    for (int e : factor_extents(factors)) sum_ext += e;
    const long required = even_exponent(q) * sum_ext / 2 + 1;
    const long g = static_cast<long>(fft::next_pow2(static_cast<std::size_t>(required)));
    double cells = 1.0;
    for (int j = 0; j < dim; ++j) cells *= static_cast<double>(g);
    // three live buffers (product, scratch, upsample) at 16 bytes per cell
    if (cells * 16.0 * 3.0 > 3.5e9)
        throw resolution_error("product bandwidth needs grid " + std::to_string(g) +
                               "^" + std::to_string(dim) + ", past the memory ceiling");
    return static_cast<int>(g);
}

FactorField FactorField::build(const FourierState& s, const Grid& target, bool recenter) {
    FactorField f;
    f.index.reserve(s.size());
    f.qval.reserve(s.size());
    f.coeff.reserve(s.size());
    Coord shift{0, 0, 0};
    if (recenter) {
        const auto box = s.support_box();
        if (!box.empty) {
            for (int j = 0; j < 3; ++j)
                shift[j] = box.lo[j] + (box.hi[j] - box.lo[j]) / 2;
        }
    }
    const int g = target.size();
    for (const auto& m : s.modes()) {
        Coord rel{m.n[0] - shift[0], m.n[1] - shift[1], m.n[2] - shift[2]};
        for (int j = 0; j < s.dim(); ++j) {
            const int e = rel[j] < 0 ? -rel[j] : rel[j];
            if (2 * e + 1 > g)
                throw resolution_error("factor bandwidth exceeds grid (aliasing collision)");
        }
        f.index.push_back(target.wrap_index(rel.data()));
        f.qval.push_back(quadratic_form(s.torus(), m.n));
        f.coeff.push_back(m.c);
    }
    return f;
}

void FactorField::render(double t, Grid& out) const {
    out.fill_zero();
    const double two_pi_t = 2.0 * M_PI * t;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const double phase = two_pi_t * qval[i];
        out[index[i]] += coeff[i] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    fft::backward(out);
}

}  // namespace engine

NormValue mixed_norm(std::span<const FourierState> factors, const MixedNormSpec& spec) {
    if (factors.empty()) throw usage_error("mixed_norm: need at least one factor");
    const auto& first = factors.front();
    for (const auto& s : factors) {
        if (s.dim() != first.dim() || s.torus().alpha != first.torus().alpha)
            throw usage_error("mixed_norm: factors live on different tori");
    }
    if (!(spec.p >= 1.0)) throw domain_error("mixed_norm: p must be >= 1");
    if (!(spec.q >= 1.0)) throw domain_error("mixed_norm: q must be >= 1");

    NormValue nv;
    for (const auto& s : factors) {
        if (s.empty()) {  // product is identically zero
            nv.value = 0.0;
            nv.n_t_used = 0;
            nv.converged = true;
            return nv;
        }
    }

    const int auto_g = engine::auto_grid_for_product(factors, spec.q);
    int g = spec.grid_per_dim > 0 ? spec.grid_per_dim : auto_g;
    if (spec.grid_per_dim > 0 && spec.grid_per_dim < auto_g)
        throw resolution_error("mixed_norm: grid " + std::to_string(spec.grid_per_dim) +
                               " cannot hold the product bandwidth (need " +
                               std::to_string(auto_g) + ")");

    Grid prod(first.dim(), g), tmp(first.dim(), g);
    std::vector<engine::FactorField> fields;
    fields.reserve(factors.size());
    for (const auto& s : factors) fields.push_back(engine::FactorField::build(s, prod, true));

    auto integrand = [&](double t) -> double {
        fields[0].render(t, prod);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            fields[j].render(t, tmp);
            for (std::size_t i = 0; i < prod.total(); ++i) prod[i] *= tmp[i];
        }
        return space_norm(prod, spec.q);
    };

    QuadratureOptions opt{spec.n_t, spec.n_t_cap, spec.convergence_rtol};
    nv = lp_time_norm(integrand, spec.t0, spec.t1, spec.p, opt);
    nv.grid_used = g;
    nv.exact_space = (spec.q != kInf) && (spec.q == std::floor(spec.q)) &&
                     (static_cast<long>(spec.q) % 2 == 0);
    return nv;
}

}  // namespace strichartz
