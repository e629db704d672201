#include "strichartz/cutoff.hpp"

#include <cmath>

namespace strichartz {

bool is_dyadic(long n) { return n >= 1 && (n & (n - 1)) == 0; }

namespace {

double smooth_h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double bump(double s) {
    const double a = std::fabs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double hi = smooth_h(2.0 - a);
    const double lo = smooth_h(a - 1.0);
    return hi / (hi + lo);
}

double DyadicCutoff::operator()(double abs_xi) const {
    if (N == 1) return bump(abs_xi);
    return bump(abs_xi / static_cast<double>(N)) - bump(2.0 * abs_xi / static_cast<double>(N));
}

double DyadicCutoff::at(const Coord& n) const {
    return (*this)(std::sqrt(static_cast<double>(norm_sq(n))));
}

double DyadicCutoff::at(std::span<const int> n) const {
    double ns = 0.0;
    for (int v : n) ns += static_cast<double>(v) * v;
    return (*this)(std::sqrt(ns));
}

DyadicCutoff make_cutoff(long N) {
    if (!is_dyadic(N)) throw usage_error("make_cutoff: N must be dyadic (power of two >= 1)");
    return DyadicCutoff{N};
}

double cutoff_le(double abs_xi, long N) {
    if (!is_dyadic(N)) throw usage_error("cutoff_le: N must be dyadic");
    return bump(abs_xi / static_cast<double>(N));
}

}  // namespace strichartz
