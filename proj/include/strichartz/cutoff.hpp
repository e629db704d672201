#pragma once

#include <span>

#include "strichartz/errors.hpp"
#include "strichartz/torus.hpp"

namespace strichartz {

bool is_dyadic(long n);  // power of two >= 1

// Base bump psi: smooth, even, psi = 1 on |s| <= 1, supported in (-2, 2),
// built from the standard smooth step h(x) = e^{-1/x}.
double bump(double s);

// psi_N(xi) = psi(|xi|/N) - psi(2|xi|/N) for N >= 2, psi_1(xi) = psi(|xi|).
// Values in [0,1] with supp psi_N inside {N/2 <= |xi| <= 2N}.
struct DyadicCutoff {
    long N = 1;
    double operator()(double abs_xi) const;
    double at(const Coord& n) const;
    double at(std::span<const int> n) const;
};

DyadicCutoff make_cutoff(long N);  // non-dyadic N -> usage error

// Symbol of P_{<=N} = sum_{M<=N} P_M, which telescopes to psi(|xi|/N).
double cutoff_le(double abs_xi, long N);

}  // namespace strichartz
