#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "strichartz/fft.hpp"
#include "strichartz/fourier_state.hpp"

namespace strichartz {

// Cauchy problem i u_t - Delta u = sign |u|^{2k} u with the anisotropic
// symbol Delta^ = -4 pi^2 Q(n). Physical clock: the free flow multiplies
// coefficients by e^{4 pi^2 i Q(n) dt} (the section-2 propagator runs the
// same flow at time rescaled by 2 pi).
struct NLSProblem {
    IrrationalTorus torus = IrrationalTorus::generic(2);
    int k = 1;
    int sign = +1;  // the "+-" of the equation; +1 pairs with +potential energy
    FourierState initial = FourierState(IrrationalTorus::generic(2));
    double T = 1.0;
    double dt = 1e-3;
    int grid_per_dim = 0;  // 0 = auto: next pow2 of 2(k+1) * data bandwidth
    double blowup_sup = 1e6;
    long out_every = 100;  // frame cadence in steps
    bool nonlinear = true;
};

struct ConservedQuantities {
    double t = 0;
    double mass = 0;               // (1/2) int |u|^2
    double energy_weighted = 0;    // (1/2) sum 4pi^2 Q(n) |c|^2 - sign/(2k+2) int |u|^{2k+2};
                                   // the sign pairing that this equation conserves
    double energy_unweighted = 0;  // same with |n|^2 in place of Q(n) (diagnostic)
    double h_sc = 0;               // H^{s_c} norm, s_c = d/2 - 1/k
    double sup_norm = 0;
};

// Exact flow of i u_t = Delta u over dt.
FourierState linear_step(const FourierState& s, double dt);

// Exact pointwise flow of i u_t = sign |u|^{2k} u on a sampled field.
void nonlinear_step(Grid& field, double dt, int k, int sign);

// Conserved quantities; the |u|^{2k+2} integral is evaluated on a grid fine
// enough to be exact for the state's bandwidth (grid_per_dim = 0 picks it).
ConservedQuantities conserved(const FourierState& s, int k, int sign, int grid_per_dim = 0);

struct Trajectory {
    std::vector<ConservedQuantities> frames;
    FourierState final_state = FourierState(IrrationalTorus::generic(2));
    double actual_T = 0;
    int grid_used = 0;

    void write_csv(std::ostream& out) const;
};

// Strang splitting (half linear, full nonlinear, half linear) with 2/3-rule
// spectral truncation after each nonlinear substep.
Trajectory solve(const NLSProblem& problem);

// ----- small-data critical-norm experiment ---------------------------------

struct SmallDataConfig {
    int d = 3;
    int k = 2;
    std::vector<double> deltas = {1e-3, 1e-2, 1e-1};
    std::uint64_t seed = 1;
    double T = 1.0;
    double dt = 1e-3;
    long cube_side = 4;
    int sign = +1;
    bool nonlinear = true;
    int workers = 1;
};

struct SmallDataRow {
    double delta = 0;
    double ratio = 1;  // sup_t ||u||_{H^{s_c}} / ||delta phi||_{H^{s_c}}
};

struct SmallDataReport {
    int d = 3, k = 2;
    double s_c = 1;
    std::vector<SmallDataRow> rows;
    void write_csv(std::ostream& out) const;
    std::string to_json(int indent = -1) const;
};

SmallDataReport small_data_experiment(const SmallDataConfig& cfg);

}  // namespace strichartz
