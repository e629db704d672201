#include "strichartz/torus.hpp"

#include <cmath>
#include <numeric>

namespace strichartz {

IrrationalTorus::IrrationalTorus(int d, std::span<const double> alphas, double c) {
    if (d != 2 && d != 3) throw usage_error("torus dimension must be 2 or 3");
    if (static_cast<int>(alphas.size()) != d)
        throw usage_error("torus: expected one aspect ratio per dimension");
    if (!(c > 1.0)) throw usage_error("torus: C must exceed 1");
    for (double a : alphas) {
        if (!(a > 1.0 / c && a < c)) throw usage_error("torus: aspect ratio outside (1/C, C)");
    }
    dim = d;
    for (int j = 0; j < d; ++j) alpha[j] = alphas[j];
    c_bound = c;
}

IrrationalTorus IrrationalTorus::square(int d) {
    const std::array<double, 3> ones{1.0, 1.0, 1.0};
    return IrrationalTorus(d, std::span<const double>(ones.data(), d), 2.0);
}

IrrationalTorus IrrationalTorus::generic(int d) {
    const std::array<double, 3> a{1.0, std::sqrt(2.0), std::sqrt(3.0)};
    return IrrationalTorus(d, std::span<const double>(a.data(), d), 2.0);
}

bool IrrationalTorus::is_rational() const {
    for (int j = 0; j < dim; ++j) {
        if (alpha[j] != std::round(alpha[j])) return false;
    }
    return true;
}

double quadratic_form(const IrrationalTorus& torus, std::span<const int> n) {
    if (static_cast<int>(n.size()) != torus.dim)
        throw usage_error("quadratic_form: lattice point dimension mismatch");
    double q = 0.0;
    for (int j = 0; j < torus.dim; ++j) q += torus.alpha[j] * static_cast<double>(n[j]) * n[j];
    return q;
}

Fraction critical_index(int d, int k) {
    if (k < 1) throw domain_error("critical_index: k must be a positive integer");
    if (d < 1) throw domain_error("critical_index: d must be a positive integer");
    long long num = static_cast<long long>(d) * k - 2;
    long long den = 2LL * k;
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return Fraction{num / g, den / g};
}

double sobolev_weight(std::span<const int> n, double s) {
    double nsq = 0.0;
    for (int v : n) nsq += static_cast<double>(v) * v;
    return std::pow(1.0 + nsq, s);
}

double sobolev_weight(const Coord& n, double s) {
    return std::pow(1.0 + static_cast<double>(norm_sq(n)), s);
}

}  // namespace strichartz
