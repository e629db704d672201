#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace strichartz {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Least squares of log2(value) against log2(scale). Needs >= 3 points with
// positive scales and values.
FitResult fit_scaling(std::span<const std::pair<double, double>> points);

struct SweepRow {
    double n1 = 0, n2 = 0, n3 = 0, m = 0;
    double lhs = 0;
    double rhs_model = 0;
    double ratio = 0;
    long n_t_used = 0;
    int grid_used = 0;
};

// Verdict object of every estimate experiment: the per-scale table plus the
// fitted slope stacked against the predicted exponent.
struct ScalingReport {
    std::string experiment;
    int dim = 2;
    std::vector<double> alphas;
    std::string family;
    std::uint64_t seed = 0;
    double p = 0, q = 0, eps = 0;

    std::vector<SweepRow> rows;
    std::vector<std::pair<double, double>> fit_points;  // (scale, value) the fit ran on

    std::string scale_axis;  // which column the fit ran over
    double slope = 0, intercept = 0, max_residual = 0;
    double predicted = 0;
    double slack = 0;  // slope - predicted
    bool pass = false;
    bool rational_torus = false;

    std::map<std::string, double> extras;  // delta_hat, sigma0, sub-check ratios, ...

    void write_csv(std::ostream& out) const;
    std::string to_json(int indent = -1) const;
};

// Fixed column set shared by all experiment CSVs.
extern const char* const kReportCsvHeader;

}  // namespace strichartz
