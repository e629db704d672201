#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "strichartz/torus.hpp"

namespace strichartz {

struct Mode {
    Coord n{0, 0, 0};
    std::complex<double> c{0.0, 0.0};
};

// Finitely supported Fourier coefficients on Z^d. Modes are kept sorted
// lexicographically with duplicates merged and exact zeros dropped, so
// iteration order (and therefore every downstream reduction) is canonical.
// Immutable after construction; operations return new states.
class FourierState {
public:
    explicit FourierState(IrrationalTorus torus);
    FourierState(IrrationalTorus torus, std::vector<Mode> modes);

    const IrrationalTorus& torus() const { return torus_; }
    int dim() const { return torus_.dim; }
    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }

    std::complex<double> at(const Coord& n) const;  // 0 if absent

    double l2_norm() const;

    struct Box {
        Coord lo{0, 0, 0};
        Coord hi{0, 0, 0};
        bool empty = true;
    };
    Box support_box() const;
    int max_abs_freq() const;  // max_j max_n |n_j|

private:
    IrrationalTorus torus_;
    std::vector<Mode> modes_;
};

FourierState scale(const FourierState& s, std::complex<double> factor);
double l2_distance(const FourierState& a, const FourierState& b);

// --- serialization -----------------------------------------------------
// CSV records (n1,...,nd,re,im) with %.17g doubles: value-exact round trip.
// The binary container carries a magic/version header plus the torus, and is
// bit-exact by construction.

void save_csv(const FourierState& s, std::ostream& out);
FourierState load_csv(std::istream& in, const IrrationalTorus& torus);

void save_binary(const FourierState& s, std::ostream& out);
FourierState load_binary(std::istream& in);

void save_csv_file(const FourierState& s, const std::string& path);
FourierState load_csv_file(const std::string& path, const IrrationalTorus& torus);
void save_binary_file(const FourierState& s, const std::string& path);
FourierState load_binary_file(const std::string& path);

// Shared float formatting: shortest representation that round-trips.
std::string format_double(double v);

}  // namespace strichartz
