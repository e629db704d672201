#include <algorithm>
#include <ostream>
#include <set>

#include "strichartz/parallel.hpp"
#include "strichartz/rng.hpp"
#include "strichartz/verify.hpp"

#include "json.hpp"

namespace strichartz {

PointEstimateTrialsReport run_point_estimate_trials(const PointEstimateTrialsConfig& cfg) {
    if (cfg.trials < 1) throw config_error("point-estimate.trials", "need at least one trial");
    for (double p : cfg.p_values)
        if (!(p >= 2.0)) throw config_error("point-estimate.p_values", "lemma requires p >= 2");
    for (double r : cfg.r_values)
        if (!(r >= 1.0)) throw config_error("point-estimate.r_values", "lemma requires r >= 1");

    PointEstimateTrialsReport rep;
    rep.rows.resize(cfg.trials);

    parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
        Rng rng(mix_seed(cfg.seed, "point-estimate", i));
        const int d = static_cast<int>(rng.uniform_int(2, 3));
        const IrrationalTorus torus = IrrationalTorus::generic(d);
        const double r = cfg.r_values[rng.uniform_int(0, cfg.r_values.size() - 1)];
        const double p = cfg.p_values[rng.uniform_int(0, cfg.p_values.size() - 1)];
        const int target = static_cast<int>(rng.uniform_int(1, cfg.max_set));

        std::set<Coord> pts;
        while (static_cast<int>(pts.size()) < target) {
            Coord n{0, 0, 0};
            for (int j = 0; j < d; ++j)
                n[j] = static_cast<int>(rng.uniform_int(-cfg.box_radius, cfg.box_radius));
            pts.insert(n);
        }
        std::vector<double> fvals;
        fvals.reserve(pts.size());
        for (const auto& n : pts) fvals.push_back(quadratic_form(torus, n));

        const PointEstimateResult res = point_estimate_check(fvals, r, p, cfg.quad, cfg.tol);
        PointEstimateTrialRow row;
        row.trial = static_cast<int>(i);
        row.p = p;
        row.r = r;
        row.set_size = target;
        row.lhs = res.lhs;
        row.intermediate = res.intermediate;
        row.rhs = res.rhs;
        row.ratio = res.ratio;
        row.pass = res.chain_ok;
        rep.rows[i] = row;
    });

    rep.all_pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                               [](const PointEstimateTrialRow& r) { return r.pass; });
    return rep;
}

void PointEstimateTrialsReport::write_csv(std::ostream& out) const {
    out << "trial,p,r,set_size,lhs,intermediate,rhs,ratio,pass\n";
    for (const auto& r : rows) {
        out << r.trial << ',' << format_double(r.p) << ',' << format_double(r.r) << ','
            << r.set_size << ',' << format_double(r.lhs) << ',' << format_double(r.intermediate)
            << ',' << format_double(r.rhs) << ',' << format_double(r.ratio) << ','
            << (r.pass ? 1 : 0) << '\n';
    }
}

std::string PointEstimateTrialsReport::to_json(int indent) const {
    nlohmann::json j;
    j["experiment"] = "point-estimate";
    j["trials"] = rows.size();
    j["all_pass"] = all_pass;
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.ratio);
    j["max_ratio"] = worst;
    return j.dump(indent);
}

}  // namespace strichartz
