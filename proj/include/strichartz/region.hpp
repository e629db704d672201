#pragma once

#include <cstdint>
#include <vector>

#include "strichartz/torus.hpp"

namespace strichartz {

// Sharp frequency sets: dyadic annuli, cubes from the family C_N, rectangles
// from R_{N,M}, strips of a cube orthogonal to its center, and explicit sets.
//
// Size convention (matches the dyadic families): cube(c, N) is the set of
// lattice points with |xi_j - c_j| <= N/2 for every axis, i.e. side N+1 for
// even N and the single point {c} for N = 1. Every such cube fits in a
// translate of [-N, N]^d, so it is a member of C_N.
class FrequencyRegion {
public:
    enum class Kind { annulus, cube, rectangle, strip, explicit_set };

    // {|xi| <= 1} for N = 1, sharp shell {N/2 < |xi| <= N} for dyadic N >= 2.
    static FrequencyRegion annulus(int dim, long N);
    static FrequencyRegion cube(int dim, Coord center, long N);
    // |xi_a - c_a| <= N/2 on the long axes, <= M/2 on thin_axis.
    static FrequencyRegion rectangle(int dim, Coord center, int thin_axis, long N, long M);
    // {xi in cube(c, N) : xi.xi0 in [|xi0| M l, |xi0| M (l+1))}.
    static FrequencyRegion strip(int dim, Coord cube_center, long cube_n, Coord xi0, long M,
                                 long long ell);
    static FrequencyRegion explicit_set(int dim, std::vector<Coord> points);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool contains(const Coord& n) const;
    std::vector<Coord> lattice_points() const;  // sorted lexicographically
    bool empty() const { return lattice_points().empty(); }

    // parameters (meaning depends on kind)
    Coord center() const { return center_; }
    long n_param() const { return n_; }
    long m_param() const { return m_; }
    int thin_axis() const { return thin_axis_; }
    Coord strip_xi0() const { return xi0_; }
    long long strip_ell() const { return ell_; }

private:
    FrequencyRegion() = default;
    Kind kind_ = Kind::explicit_set;
    int dim_ = 2;
    Coord center_{0, 0, 0};
    long n_ = 0;
    long m_ = 0;
    int thin_axis_ = 0;
    Coord xi0_{0, 0, 0};
    long long ell_ = 0;
    std::vector<Coord> points_;
};

// Strip index of xi relative to center xi0 and width M: floor of
// (xi.xi0) / (|xi0| M). Shared by strip construction and membership tests so
// assignments are consistent.
long long strip_index(const Coord& xi, const Coord& xi0, long M);

struct StripDecomposition {
    Coord cube_center{0, 0, 0};
    long cube_n = 0;
    Coord xi0{0, 0, 0};
    long M = 1;
    struct Entry {
        long long ell;
        FrequencyRegion region;
        std::size_t count;
    };
    std::vector<Entry> strips;  // nonempty strips, ordered by ell

    // slab-condition check: every strip lies in a width-M window along xi0
    // and inside the parent cube (hence in R_{N,M} up to rotation).
    bool strips_in_family() const;
};

// Partition cube (a member of C_{N2} centered at xi0 != 0) into strips of
// width M = max(N2^2/N1, 1) orthogonal to the center direction.
StripDecomposition strip_decompose(const FrequencyRegion& cube, long N1, long N2);

}  // namespace strichartz
