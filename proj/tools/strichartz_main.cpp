#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "strichartz/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Strichartz-estimate verification harness for anisotropic tori"};
    app.require_subcommand(1);

    std::string config_path, report_path, out_dir;
    std::uint64_t seed = 0;
    int workers = 0;

    auto* run = app.add_subcommand("run", "execute the experiments in a config file");
    run->add_option("config", config_path, "JSON config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the master seed");
    auto* workers_opt =
        run->add_option("--workers", workers, "worker threads (default: config, then $" +
                                                  std::string(strichartz::kWorkersEnvVar) + ")");
    run->add_option("--out-dir", out_dir, "override the output directory");

    auto* plots = app.add_subcommand("export-plots", "emit plot tables from a summary.json");
    plots->add_option("report", report_path, "summary.json produced by run")->required();
    plots->add_option("--out-dir", out_dir, "output directory (default: alongside the report)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        strichartz::RunOptions opt;
        opt.config_path = config_path;
        opt.out_dir_override = out_dir;
        if (!seed_opt->empty()) opt.seed_override = seed;
        if (!workers_opt->empty()) opt.workers_override = workers;
        return strichartz::run_config(opt, std::cout);
    }
    return strichartz::export_plots(report_path, out_dir, std::cout);
}
