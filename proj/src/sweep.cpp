#include "gibbsqaoa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "gibbsqaoa/errors.hpp"
#include "gibbsqaoa/numeric.hpp"
#include "gibbsqaoa/thermal.hpp"

namespace gibbsqaoa {

GridSpec GridSpec::defaults_for(MixerKind mixer) {
    GridSpec g;
    g.gamma_range = {0.0, std::numbers::pi / 4.0};
    g.beta_range = {0.0, mixer == MixerKind::Grover ? 2.0 * std::numbers::pi : std::numbers::pi};
    return g;
}

std::vector<double> GridSpec::gammas() const {
    return linspace(gamma_range.lo, gamma_range.hi, n_gamma);
}

std::vector<double> GridSpec::betas() const {
    return linspace(beta_range.lo, beta_range.hi, n_beta);
}

void GridSpec::validate() const {
    if (n_gamma < 2 || n_beta < 2)
        throw std::invalid_argument("grid resolution must be >= 2 on each axis");
    for (const auto &[name, r] : {std::pair{"gamma_range", gamma_range},
                                  std::pair{"beta_range", beta_range}}) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi))
            throw std::invalid_argument(std::string("grid ") + name +
                                        " must be a finite interval with lo < hi");
    }
}

unsigned resolve_threads(unsigned requested) noexcept {
    if (requested > 0)
        return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

SweepRecord evaluate_cell(const EnergyTable &energies, double gamma, double beta_angle,
                          MixerKind mixer, const FitConfig &fit, bool fit_enabled) {
    const QaoaParams params{{gamma}, {beta_angle}, mixer};
    const ProbabilityDistribution dist = simulate(energies, params);

    SweepRecord rec;
    rec.gamma = gamma;
    rec.beta_angle = beta_angle;
    rec.energy_expectation = expectation_energy(dist, energies);
    rec.entropy = shannon_entropy_normalized(dist, energies.num_spins());
    if (fit_enabled) {
        const FitResult r = fit_beta(dist, energies, fit);
        rec.beta_eff = r.beta_eff;
        rec.tvd_min = r.tvd_min;
    }

    // Rounding can push the mean a hair past the spectrum edges.
    const double slack = 1e-9 * std::max(1.0, energies.e_max() - energies.e_min());
    if (!std::isfinite(rec.energy_expectation) ||
        rec.energy_expectation < energies.e_min() - slack ||
        rec.energy_expectation > energies.e_max() + slack)
        throw ComputeError("cell (gamma=" + std::to_string(gamma) +
                           ", beta=" + std::to_string(beta_angle) +
                           "): energy expectation outside spectrum");
    if (!std::isfinite(rec.entropy) || rec.entropy < -1e-12 || rec.entropy > 1.0 + 1e-12)
        throw ComputeError("cell (gamma=" + std::to_string(gamma) +
                           ", beta=" + std::to_string(beta_angle) +
                           "): entropy outside [0, 1]");
    return rec;
}

} // namespace

std::vector<SweepRecord> sweep(const EnergyTable &energies, const GridSpec &grid,
                               MixerKind mixer, const FitConfig &fit,
                               const SweepOptions &options) {
    grid.validate();
    if (options.fit_enabled)
        fit.validate();

    const std::vector<double> gammas = grid.gammas();
    const std::vector<double> betas = grid.betas();
    const std::size_t cells = grid.cell_count();
    std::vector<SweepRecord> records(cells);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::size_t first_error_cell = cells;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed))
                return;
            const std::size_t cell = next.fetch_add(1, std::memory_order_relaxed);
            if (cell >= cells)
                return;
            try {
                records[cell] = evaluate_cell(energies, gammas[cell / grid.n_beta],
                                              betas[cell % grid.n_beta], mixer, fit,
                                              options.fit_enabled);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (cell < first_error_cell) {
                    first_error_cell = cell;
                    first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), cells));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    if (first_error)
        std::rethrow_exception(first_error);
    return records;
}

std::vector<SweepRecord> sweep(const IsingModel &model, const GridSpec &grid,
                               MixerKind mixer, const FitConfig &fit,
                               const SweepOptions &options) {
    return sweep(enumerate_energies(model), grid, mixer, fit, options);
}

std::vector<ThresholdPoint> threshold_analysis(std::span<const SweepRecord> records,
                                               std::span<const double> thresholds) {
    if (records.empty())
        throw std::invalid_argument("threshold_analysis: no records");
    std::vector<ThresholdPoint> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        ThresholdPoint pt{t, std::nullopt, std::nullopt};
        for (std::size_t k = 0; k < records.size(); ++k) {
            const auto &r = records[k];
            if (!r.beta_eff || !r.tvd_min || *r.tvd_min > t)
                continue;
            if (!pt.best_beta_eff || *r.beta_eff > *pt.best_beta_eff) {
                pt.best_beta_eff = *r.beta_eff;
                pt.record_index = k;
            }
        }
        out.push_back(pt);
    }
    return out;
}

std::vector<TradeoffPoint> tradeoff_extract(std::span<const SweepRecord> records,
                                            double t_eff_max) {
    if (!(t_eff_max > 0.0))
        throw std::invalid_argument("tradeoff_extract: t_eff_max must be positive");
    std::vector<TradeoffPoint> out;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto &r = records[k];
        if (!r.beta_eff || !r.tvd_min || !(*r.beta_eff > 0.0))
            continue;
        const double t_eff = 1.0 / *r.beta_eff;
        if (t_eff <= t_eff_max)
            out.push_back({t_eff, *r.tvd_min, k});
    }
    return out;
}

} // namespace gibbsqaoa
