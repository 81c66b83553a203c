#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gibbsqaoa/beta_fit.hpp"
#include "gibbsqaoa/ising_model.hpp"
#include "gibbsqaoa/qaoa.hpp"

namespace gibbsqaoa {

struct AngleRange {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const AngleRange &, const AngleRange &) = default;
};

/// Depth-one angle grid with inclusive endpoints on both axes.
struct GridSpec {
    AngleRange gamma_range{};
    AngleRange beta_range{};
    std::size_t n_gamma = 200;
    std::size_t n_beta = 200;

    /// gamma in [0, pi/4]; mixer angle in [0, pi] for X and [0, 2 pi] for Grover.
    static GridSpec defaults_for(MixerKind mixer);

    [[nodiscard]] std::vector<double> gammas() const;
    [[nodiscard]] std::vector<double> betas() const;
    [[nodiscard]] std::size_t cell_count() const noexcept { return n_gamma * n_beta; }
    void validate() const;

    friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

struct SweepRecord {
    double gamma = 0.0;
    double beta_angle = 0.0;
    double energy_expectation = 0.0;
    double entropy = 0.0;
    /// Absent when the sweep ran without fitting.
    std::optional<double> beta_eff;
    std::optional<double> tvd_min;
};

struct SweepOptions {
    bool fit_enabled = true;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One record per cell, gamma-major (gamma outer, mixer angle inner). Output
/// is identical for any thread count. The first failing cell's exception is
/// rethrown after all workers stop.
std::vector<SweepRecord> sweep(const EnergyTable &energies, const GridSpec &grid,
                               MixerKind mixer, const FitConfig &fit,
                               const SweepOptions &options = {});

/// Convenience overload that enumerates the model's spectrum first.
std::vector<SweepRecord> sweep(const IsingModel &model, const GridSpec &grid,
                               MixerKind mixer, const FitConfig &fit,
                               const SweepOptions &options = {});

struct ThresholdPoint {
    double threshold = 0.0;
    std::optional<double> best_beta_eff;
    /// Index of the first record attaining best_beta_eff.
    std::optional<std::size_t> record_index;
};

/// For each threshold t: the largest beta_eff among records with tvd_min <= t.
/// Records without fit values are ignored.
std::vector<ThresholdPoint> threshold_analysis(std::span<const SweepRecord> records,
                                               std::span<const double> thresholds);

struct TradeoffPoint {
    double t_eff = 0.0;
    double tvd_min = 0.0;
    std::size_t record_index = 0;
};

/// (1 / beta_eff, tvd_min) for fitted records with beta_eff > 0 and
/// 1 / beta_eff <= t_eff_max, in record order.
std::vector<TradeoffPoint> tradeoff_extract(std::span<const SweepRecord> records,
                                            double t_eff_max);

/// Resolve a requested worker count (0 = hardware concurrency, at least 1).
unsigned resolve_threads(unsigned requested) noexcept;

} // namespace gibbsqaoa
