#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "strichartz/errors.hpp"

namespace strichartz {

// Lattice points are fixed 3-int arrays; unused trailing components stay
// zero, the active dimension comes from the torus (or an explicit argument).
using Coord = std::array<int, 3>;

inline long long dot(const Coord& a, const Coord& b) {
    return static_cast<long long>(a[0]) * b[0] + static_cast<long long>(a[1]) * b[1] +
           static_cast<long long>(a[2]) * b[2];
}

inline long long norm_sq(const Coord& a) { return dot(a, a); }

// Flat torus with anisotropic Laplacian symbol -4*pi^2*Q(n),
// Q(n) = sum_j alpha_j n_j^2.  The aspect ratios are stored exactly as given;
// c_bound is metadata only (1/C < alpha_j < C), nothing branches on it.
struct IrrationalTorus {
    int dim = 2;
    std::array<double, 3> alpha{1.0, 1.0, 1.0};
    double c_bound = 2.0;

    IrrationalTorus(int d, std::span<const double> alphas, double c);

    // Rational control case alpha = (1,...,1).
    static IrrationalTorus square(int d);
    // Default generic irrational ratios: (1, sqrt2) in 2d, (1, sqrt2, sqrt3) in 3d.
    static IrrationalTorus generic(int d);

    bool is_rational() const;
};

// Q(n); checked variant validates the dimension of n.
double quadratic_form(const IrrationalTorus& torus, std::span<const int> n);

inline double quadratic_form(const IrrationalTorus& torus, const Coord& n) {
    double q = 0.0;
    for (int j = 0; j < torus.dim; ++j) q += torus.alpha[j] * static_cast<double>(n[j]) * n[j];
    return q;
}

// Exact rational s_c = d/2 - 1/k = (d*k - 2) / (2*k), stored reduced.
struct Fraction {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction critical_index(int d, int k);

// <n>^{2s} = (1 + |n|^2)^s with the unweighted Euclidean length.
double sobolev_weight(std::span<const int> n, double s);
double sobolev_weight(const Coord& n, double s);

}  // namespace strichartz
