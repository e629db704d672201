#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace strichartz {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kWorkersEnvVar = "STRICHARTZ_WORKERS";

// Exit codes: 0 = all configured assertions passed, 1 = a scientific
// assertion failed, 2 = the config is invalid.
enum ExitCode { kExitOk = 0, kExitAssertFailed = 1, kExitConfigError = 2 };

struct RunOptions {
    std::string config_path;
    std::string out_dir_override;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> workers_override;
};

// Executes the experiments listed in the config file, writing per-experiment
// CSVs plus summary.json and manifest.json into the output directory.
int run_config(const RunOptions& opt, std::ostream& diag);

// Emits per-experiment (log2 scale, log2 value, fitted line) tables from a
// summary.json produced by run_config.
int export_plots(const std::string& report_path, const std::string& out_dir, std::ostream& diag);

}  // namespace strichartz
