#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbsqaoa/beta_fit.hpp"
#include "gibbsqaoa/qaoa.hpp"
#include "gibbsqaoa/sweep.hpp"

namespace gibbsqaoa {

inline constexpr const char *kToolkitVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitConfigError = 2, kExitComputeError = 3 };

/// Everything needed to reproduce a sweep. Exactly one of model_path or
/// (n, seed) identifies the instance.
struct RunConfig {
    std::optional<std::filesystem::path> model_path;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
    MixerKind mixer = MixerKind::TransverseX;
    GridSpec grid = GridSpec::defaults_for(MixerKind::TransverseX);
    FitConfig fit{};
    bool fit_enabled = true;
    std::filesystem::path output_dir = ".";
    /// 0 = auto.
    unsigned threads = 0;

    /// Throws std::invalid_argument on inconsistent fields.
    void validate() const;
};

nlohmann::ordered_json to_json(const FitConfig &fit);
FitConfig fit_config_from_json(const nlohmann::json &j);
nlohmann::ordered_json to_json(const RunConfig &config);
/// Accepts a bare RunConfig object or a meta.json whose "config" key holds one.
/// Missing keys keep their defaults; a missing grid.beta_range follows the mixer.
RunConfig run_config_from_json(const nlohmann::json &j);

void cmd_gen(int n, std::uint64_t seed, const std::filesystem::path &out_path);

struct SweepOutputs {
    std::filesystem::path sweep_csv;
    std::filesystem::path meta_json;
    std::size_t rows = 0;
};
/// Writes sweep.csv and meta.json into config.output_dir.
SweepOutputs cmd_sweep(const RunConfig &config);

struct AnalyzeOutputs {
    std::filesystem::path thresholds_csv;
    std::filesystem::path tradeoff_csv;
    std::vector<ThresholdPoint> thresholds;
};
/// Writes thresholds.csv and tradeoff.csv into out_dir and prints a summary
/// table to `report`. Throws ParseError if the sweep has no fit columns.
AnalyzeOutputs cmd_analyze(const std::filesystem::path &sweep_csv,
                           const std::vector<double> &thresholds, double t_eff_max,
                           const std::filesystem::path &out_dir, std::ostream &report);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace gibbsqaoa
