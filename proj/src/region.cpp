#include "strichartz/region.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "strichartz/cutoff.hpp"

namespace strichartz {

namespace {

bool coord_less(const Coord& a, const Coord& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_dim(int dim) {
    if (dim != 2 && dim != 3) throw usage_error("region dimension must be 2 or 3");
}

}  // namespace

FrequencyRegion FrequencyRegion::annulus(int dim, long N) {
    check_dim(dim);
    if (!is_dyadic(N)) throw usage_error("annulus: N must be dyadic");
    FrequencyRegion r;
    r.kind_ = Kind::annulus;
    r.dim_ = dim;
    r.n_ = N;
    return r;
}

FrequencyRegion FrequencyRegion::cube(int dim, Coord center, long N) {
    check_dim(dim);
    if (N < 1) throw usage_error("cube: N must be >= 1");
    FrequencyRegion r;
    r.kind_ = Kind::cube;
    r.dim_ = dim;
    r.center_ = center;
    r.n_ = N;
    return r;
}

FrequencyRegion FrequencyRegion::rectangle(int dim, Coord center, int thin_axis, long N, long M) {
    check_dim(dim);
    if (thin_axis < 0 || thin_axis >= dim) throw usage_error("rectangle: thin axis out of range");
    if (N < M || M < 1) throw usage_error("rectangle: need N >= M >= 1");
    FrequencyRegion r;
    r.kind_ = Kind::rectangle;
    r.dim_ = dim;
    r.center_ = center;
    r.thin_axis_ = thin_axis;
    r.n_ = N;
    r.m_ = M;
    return r;
}

FrequencyRegion FrequencyRegion::strip(int dim, Coord cube_center, long cube_n, Coord xi0, long M,
                                       long long ell) {
    check_dim(dim);
    if (norm_sq(xi0) == 0) throw usage_error("strip: degenerate center xi0 = 0");
    FrequencyRegion r;
    r.kind_ = Kind::strip;
    r.dim_ = dim;
    r.center_ = cube_center;
    r.n_ = cube_n;
    r.xi0_ = xi0;
    r.m_ = M;
    r.ell_ = ell;
    return r;
}

FrequencyRegion FrequencyRegion::explicit_set(int dim, std::vector<Coord> points) {
    check_dim(dim);
    for (const auto& p : points) {
        for (int j = dim; j < 3; ++j) {
            if (p[j] != 0) throw usage_error("explicit set: coordinate beyond dimension");
        }
    }
    std::sort(points.begin(), points.end(), coord_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    FrequencyRegion r;
    r.kind_ = Kind::explicit_set;
    r.dim_ = dim;
    r.points_ = std::move(points);
    return r;
}

long long strip_index(const Coord& xi, const Coord& xi0, long M) {
    const long long s = dot(xi, xi0);
    if (s == 0) return 0;  // window [0, |xi0| M) regardless of fp rounding
    const double w = static_cast<double>(M) * std::sqrt(static_cast<double>(norm_sq(xi0)));
    return static_cast<long long>(std::floor(static_cast<double>(s) / w));
}

bool FrequencyRegion::contains(const Coord& n) const {
    for (int j = dim_; j < 3; ++j) {
        if (n[j] != 0) return false;
    }
    switch (kind_) {
        case Kind::annulus: {
            const long long ns = norm_sq(n);
            const long long N2 = static_cast<long long>(n_) * n_;
            if (n_ == 1) return ns <= 1;
            return 4 * ns > N2 && ns <= N2;
        }
        case Kind::cube: {
            for (int j = 0; j < dim_; ++j) {
                if (std::abs(2LL * (n[j] - center_[j])) > n_) return false;
            }
            return true;
        }
        case Kind::rectangle: {
            for (int j = 0; j < dim_; ++j) {
                const long bound = (j == thin_axis_) ? m_ : n_;
                if (std::abs(2LL * (n[j] - center_[j])) > bound) return false;
            }
            return true;
        }
        case Kind::strip: {
            for (int j = 0; j < dim_; ++j) {
                if (std::abs(2LL * (n[j] - center_[j])) > n_) return false;
            }
            return strip_index(n, xi0_, m_) == ell_;
        }
        case Kind::explicit_set:
            return std::binary_search(points_.begin(), points_.end(), n, coord_less);
    }
    return false;
}

std::vector<Coord> FrequencyRegion::lattice_points() const {
    if (kind_ == Kind::explicit_set) return points_;
    // scan the bounding box and filter by membership
    Coord lo{0, 0, 0}, hi{0, 0, 0};
    switch (kind_) {
        case Kind::annulus:
            for (int j = 0; j < dim_; ++j) {
                lo[j] = static_cast<int>(-n_);
                hi[j] = static_cast<int>(n_);
            }
            break;
        case Kind::cube:
        case Kind::strip:
            for (int j = 0; j < dim_; ++j) {
                lo[j] = center_[j] - static_cast<int>(n_ / 2);
                hi[j] = center_[j] + static_cast<int>(n_ / 2);
            }
            break;
        case Kind::rectangle:
            for (int j = 0; j < dim_; ++j) {
                const long bound = (j == thin_axis_) ? m_ : n_;
                lo[j] = center_[j] - static_cast<int>(bound / 2);
                hi[j] = center_[j] + static_cast<int>(bound / 2);
            }
            break;
        case Kind::explicit_set:
            break;
    }
    std::vector<Coord> out;
    Coord n{0, 0, 0};
    const int z_lo = (dim_ == 3) ? lo[2] : 0;
    const int z_hi = (dim_ == 3) ? hi[2] : 0;
    for (int x = lo[0]; x <= hi[0]; ++x) {
        n[0] = x;
        for (int y = lo[1]; y <= hi[1]; ++y) {
            n[1] = y;
            for (int z = z_lo; z <= z_hi; ++z) {
                n[2] = z;
                if (contains(n)) out.push_back(n);
            }
        }
    }
    return out;  // scan order is already lexicographic
}

StripDecomposition strip_decompose(const FrequencyRegion& cube, long N1, long N2) {
    if (cube.kind() != FrequencyRegion::Kind::cube)
        throw usage_error("strip_decompose: region must be a cube");
    if (!is_dyadic(N1) || !is_dyadic(N2)) throw usage_error("strip_decompose: N1, N2 must be dyadic");
    if (N1 < N2) throw usage_error("strip_decompose: need N1 >= N2");
    if (cube.n_param() > 2 * N2)
        throw usage_error("strip_decompose: cube does not belong to C_{N2}");
    const Coord xi0 = cube.center();
    if (norm_sq(xi0) == 0)
        throw usage_error("strip_decompose: degenerate center xi0 = 0; use the trivial one-region "
                          "decomposition instead");

    StripDecomposition dec;
    dec.cube_center = xi0;
    dec.cube_n = cube.n_param();
    dec.xi0 = xi0;
    dec.M = std::max(N2 * N2 / N1, 1L);

    std::map<long long, std::size_t> counts;
    for (const auto& p : cube.lattice_points()) counts[strip_index(p, xi0, dec.M)]++;
    for (const auto& [ell, count] : counts) {
        dec.strips.push_back({ell,
                              FrequencyRegion::strip(cube.dim(), dec.cube_center, dec.cube_n, xi0,
                                                     dec.M, ell),
                              count});
    }
    return dec;
}

bool StripDecomposition::strips_in_family() const {
    const double abs_xi0 = std::sqrt(static_cast<double>(norm_sq(xi0)));
    for (const auto& entry : strips) {
        double s_min = 0.0, s_max = 0.0;
        bool first = true;
        for (const auto& p : entry.region.lattice_points()) {
            // inside the parent cube
            for (int j = 0; j < entry.region.dim(); ++j) {
                if (std::abs(2LL * (p[j] - cube_center[j])) > cube_n) return false;
            }
            // same half-open window along xi0 (identical arithmetic as construction)
            if (strip_index(p, xi0, M) != entry.ell) return false;
            const double s = static_cast<double>(dot(p, xi0)) / abs_xi0;
            s_min = first ? s : std::min(s_min, s);
            s_max = first ? s : std::max(s_max, s);
            first = false;
        }
        // thickness along xi0 never exceeds the slab width M
        if (!first && s_max - s_min > static_cast<double>(M) * (1.0 + 1e-9)) return false;
    }
    return true;
}

}  // namespace strichartz
