#include "strichartz/scaling.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "strichartz/errors.hpp"
#include "strichartz/fourier_state.hpp"

#include "json.hpp"

namespace strichartz {

FitResult fit_scaling(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw data_error("fit_scaling: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (const auto& [scale, value] : points) {
        if (!(scale > 0.0) || !(value > 0.0))
            throw data_error("fit_scaling: scales and values must be positive");
        logs.emplace_back(std::log2(scale), std::log2(value));
    }
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw data_error("fit_scaling: degenerate abscissae");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [x, y] : logs)
        fit.max_residual = std::max(fit.max_residual, std::abs(y - (fit.intercept + fit.slope * x)));
    return fit;
}

const char* const kReportCsvHeader =
    "experiment,d,alphas,family,seed,N1,N2,N3,M,p,q,eps,lhs,rhs_model,ratio,n_t_used,grid_used";

namespace {

std::string join_alphas(const std::vector<double>& alphas) {
    std::string out;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (i) out += ';';
        out += format_double(alphas[i]);
    }
    return out;
}

}  // namespace

void ScalingReport::write_csv(std::ostream& out) const {
    out << kReportCsvHeader << '\n';
    const std::string alpha_str = join_alphas(alphas);
    for (const auto& r : rows) {
        out << experiment << ',' << dim << ',' << alpha_str << ',' << family << ',' << seed << ','
            << format_double(r.n1) << ',' << format_double(r.n2) << ',' << format_double(r.n3)
            << ',' << format_double(r.m) << ',' << format_double(p) << ',' << format_double(q)
            << ',' << format_double(eps) << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs_model) << ',' << format_double(r.ratio) << ',' << r.n_t_used
            << ',' << r.grid_used << '\n';
    }
}

std::string ScalingReport::to_json(int indent) const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["d"] = dim;
    j["alphas"] = alphas;
    j["family"] = family;
    j["seed"] = seed;
    j["p"] = p;
    j["q"] = q;
    j["eps"] = eps;
    j["scale_axis"] = scale_axis;
    j["slope"] = slope;
    j["intercept"] = intercept;
    j["max_residual"] = max_residual;
    j["predicted"] = predicted;
    j["slack"] = slack;
    j["pass"] = pass;
    j["rational_torus"] = rational_torus;
    for (const auto& [k, v] : extras) j["extras"][k] = v;
    j["fit_points"] = nlohmann::json::array();
    for (const auto& [scale, value] : fit_points) j["fit_points"].push_back({scale, value});
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"N1", r.n1},
                             {"N2", r.n2},
                             {"N3", r.n3},
                             {"M", r.m},
                             {"lhs", r.lhs},
                             {"rhs_model", r.rhs_model},
                             {"ratio", r.ratio},
                             {"n_t_used", r.n_t_used},
                             {"grid_used", r.grid_used}});
    }
    return j.dump(indent);
}

}  // namespace strichartz
