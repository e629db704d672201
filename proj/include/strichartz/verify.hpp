#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "strichartz/counting.hpp"
#include "strichartz/mixed_norm.hpp"
#include "strichartz/region.hpp"
#include "strichartz/scaling.hpp"

namespace strichartz {

// ----- extremizer-candidate data families --------------------------------

enum class DataFamily { dirichlet, random_phase, gaussian };

DataFamily parse_family(const std::string& name);
const char* family_name(DataFamily f);

// dirichlet: coefficient 1 on every lattice point of the region;
// random_phase: i.i.d. unimodular; gaussian: i.i.d. complex standard normal.
// A fixed seed reproduces identical coefficients bit for bit.
FourierState make_data(const IrrationalTorus& torus, const FrequencyRegion& region, DataFamily f,
                       std::uint64_t seed);

// ----- shared experiment knobs --------------------------------------------

struct EstimateOpts {
    double t0 = 0.0, t1 = 1.0;  // tau_0
    long n_t = 64;
    long n_t_cap = 1 << 18;
    double rtol = 5e-3;
    int trials = 1;  // data draws per scale (max ratio reported)
    std::uint64_t seed = 1;
    DataFamily family = DataFamily::dirichlet;
    double data_scale = 1.0;  // multiplies every factor; ratios are invariant
    double slope_tol = 0.1;
    int workers = 1;
};

// ----- estimate drivers ----------------------------------------------------

// ||prod_{j<=3} P_{C_j} e^{itD} phi_j||_{L^p_t L^2_x} <~ M^{2-2/p} prod ||phi_j||,
// C_1 of side N, C_2, C_3 of side M <= N. Sweeps M at fixed N.
struct Trilinear2dConfig {
    IrrationalTorus torus = IrrationalTorus::generic(2);
    double p = 4.0;
    long n_big = 64;
    std::vector<long> m_list = {2, 4, 8, 16, 32};
    EstimateOpts opts;
};
ScalingReport run_trilinear_2d(const Trilinear2dConfig& cfg);

enum class LinearMode { cubes, rectangles };

// 2d: cubes ||P_C e^{itD} phi||_{L^p_t L^6} <~ N^{2/3 - 2/p} ||phi|| (p > 6);
// rectangles in R_{N,M} with exponent N^{1/2+1/q-2/p} M^{1/2-3/q} (6 <= q < p).
// Also runs the two sup-bound ingredients as exact-inequality sub-checks.
struct Linear2dConfig {
    IrrationalTorus torus = IrrationalTorus::generic(2);
    double p = 7.0;
    LinearMode mode = LinearMode::cubes;
    std::vector<long> n_list = {4, 8, 16, 32, 64};
    double q_rect = 6.0;
    long n_rect = 16;
    std::vector<long> m_list = {1, 2, 4, 8};
    EstimateOpts opts;
};
ScalingReport run_linear_2d(const Linear2dConfig& cfg);

// 3d: cubes with L^4_x and N^{3/4 - 2/p} (p > 16/3); rectangles with
// N^{1-2/p-1/q} M^{1/2-2/q} (4 <= q < 3p/4).
struct Linear3dConfig {
    IrrationalTorus torus = IrrationalTorus::generic(3);
    double p = 6.0;
    LinearMode mode = LinearMode::cubes;
    std::vector<long> n_list = {4, 8, 16, 32};
    double q_rect = 4.0;
    long n_rect = 8;
    std::vector<long> m_list = {1, 2, 4, 8};
    EstimateOpts opts;
};
ScalingReport run_linear_3d(const Linear3dConfig& cfg);

enum class SweepMode { balanced, separated, n3_sweep };

// k+1 factors in 2d (k >= 3); balanced mode fits the total slope against
// k s_c, separated mode fits the decay exponent delta_hat of the ratio
// against x = N_{k+1}/N_1 + 1/N_2.
struct Multilinear2dConfig {
    IrrationalTorus torus = IrrationalTorus::generic(2);
    int k = 3;
    SweepMode mode = SweepMode::balanced;
    std::vector<long> n_list = {4, 8, 16, 32};
    long n_small = 2;
    EstimateOpts opts;
};
ScalingReport run_multilinear_2d(const Multilinear2dConfig& cfg);

// 3d trilinear with model N_2^{3/4+eps} N_3^{5/4-eps}.
struct Trilinear3dConfig {
    IrrationalTorus torus = IrrationalTorus::generic(3);
    double eps = 0.1;
    SweepMode mode = SweepMode::balanced;
    std::vector<long> n_list = {4, 8, 16};
    long n_fixed = 16;  // N1 = N2 during the N3 sweep
    long n_small = 2;   // N2 = N3 during the separation sweep
    EstimateOpts opts;
};
ScalingReport run_trilinear_3d(const Trilinear3dConfig& cfg);

// ----- almost-orthogonality check ------------------------------------------

struct OrthogonalityConfig {
    IrrationalTorus torus = IrrationalTorus::generic(2);
    int k = 1;  // 2k+1 factors
    std::vector<long> n2_list = {4, 8, 16, 32};
    long n1_override = 0;  // 0 -> N1 = N2^2
    double t0 = 0.25, t1 = 0.75;
    double margin = 0.05;  // tau_1 = [t0 - margin, t1 + margin] cap [0, 1]
    DataFamily family = DataFamily::random_phase;
    std::uint64_t seed = 1;
    long n_t = 64;
    long n_t_cap = 1 << 18;
    double rtol = 5e-3;
    int workers = 1;
};

struct OrthogonalityRow {
    long n1 = 0, n2 = 0, m = 0;
    int n_strips = 0;
    double lhs_sq_tau0 = 0;   // ||prod||^2 on tau_0
    double lhs_sq_tau1 = 0;   // same on tau_1
    double strip_sum = 0;     // sum_l ||P_{R_l} ... ||^2 on tau_1
    double deficit = 0;       // lhs_sq_tau0 - strip_sum
    double cross = 0;         // lhs_sq_tau1 - strip_sum (integrated directly)
    double norms_sq = 0;      // prod_j ||phi_j||^2
    double bound_rhs = 0;     // strip_sum + K N2^{-sigma0} norms_sq (after fit)
    long n_t_used = 0;
    int grid_used = 0;
    bool skipped = false;
};

struct OrthogonalityReport {
    std::vector<OrthogonalityRow> rows;
    double sigma0 = 0;   // fitted decay rate of |cross| / norms_sq
    double k_const = 0;  // fitted constant
    bool pass = false;
    IrrationalTorus torus = IrrationalTorus::generic(2);
    DataFamily family = DataFamily::random_phase;
    std::uint64_t seed = 1;

    ScalingReport to_report() const;  // common CSV/JSON shape
};

OrthogonalityReport run_orthogonality_check(const OrthogonalityConfig& cfg);

// ----- randomized point-estimate trials -------------------------------------

struct PointEstimateTrialsConfig {
    int trials = 200;
    std::vector<double> r_values = {1, 2, 4};
    std::vector<double> p_values = {2, 3, 4};
    int max_set = 512;
    int box_radius = 16;
    std::uint64_t seed = 1;
    QuadratureOptions quad{64, 1 << 22, 1e-4};
    double tol = 1e-6;
    int workers = 1;
};

struct PointEstimateTrialRow {
    int trial = 0;
    double p = 2, r = 1;
    int set_size = 0;
    double lhs = 0, intermediate = 0, rhs = 0, ratio = 0;
    bool pass = false;
};

struct PointEstimateTrialsReport {
    std::vector<PointEstimateTrialRow> rows;
    bool all_pass = false;
    void write_csv(std::ostream& out) const;
    std::string to_json(int indent = -1) const;
};

PointEstimateTrialsReport run_point_estimate_trials(const PointEstimateTrialsConfig& cfg);

}  // namespace strichartz
