#include "strichartz/spectral.hpp"

#include <cmath>

namespace strichartz {

FourierState project(const FourierState& s, const FrequencyRegion& region) {
    if (region.dim() != s.dim()) throw usage_error("project: dimension mismatch");
    std::vector<Mode> kept;
    kept.reserve(s.size());
    for (const auto& m : s.modes()) {
        if (region.contains(m.n)) kept.push_back(m);
    }
    return FourierState(s.torus(), std::move(kept));
}

FourierState project(const FourierState& s, const DyadicCutoff& cutoff) {
    std::vector<Mode> out;
    out.reserve(s.size());
    for (const auto& m : s.modes()) {
        const double w = cutoff.at(m.n);
        if (w != 0.0) out.push_back({m.n, m.c * w});
    }
    return FourierState(s.torus(), std::move(out));
}

FourierState project_le(const FourierState& s, long N) {
    std::vector<Mode> out;
    out.reserve(s.size());
    for (const auto& m : s.modes()) {
        const double w = cutoff_le(std::sqrt(static_cast<double>(norm_sq(m.n))), N);
        if (w != 0.0) out.push_back({m.n, m.c * w});
    }
    return FourierState(s.torus(), std::move(out));
}

FourierState propagate(const FourierState& s, double t) {
    std::vector<Mode> out = s.modes();
    for (auto& m : out) {
        const double phase = 2.0 * M_PI * quadratic_form(s.torus(), m.n) * t;
        m.c *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return FourierState(s.torus(), std::move(out));
}

Grid sample_grid(const FourierState& s, int grid_per_dim) {
    const int needed = 2 * s.max_abs_freq() + 1;
    if (grid_per_dim < needed)
        throw resolution_error("sample_grid: grid " + std::to_string(grid_per_dim) +
                               " undersamples bandwidth (need > " +
                               std::to_string(needed - 1) + ")");
    Grid g(s.dim(), grid_per_dim);
    for (const auto& m : s.modes()) g[g.wrap_index(m.n.data())] += m.c;
    fft::backward(g);
    return g;
}

}  // namespace strichartz
