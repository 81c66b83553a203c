#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gibbsqaoa/ising_model.hpp"
#include "gibbsqaoa/thermal.hpp"

namespace gibbsqaoa {

/// Log-spaced grid from 10^first_exp to 10^last_exp.
struct LogGrid {
    std::size_t count = 100;
    double first = 1e-3;
    double last = 1e-15;
};

/// start, start + step, start + 2 step, ... while <= beta_max.
struct LinearGrid {
    double start = 1e-4;
    double step = 1e-4;
    double beta_max = 1e2;
};

struct FitConfig {
    std::vector<double> initial_guesses = default_initial_guesses();
    LogGrid log_grid{};
    LinearGrid linear_grid{};
    int rounding_decimals = 15;
    int minimizer_max_iters = 500;
    double minimizer_tolerance = 1e-12;

    /// 28 values log-uniform from 1e5 down to 1e-8.
    static std::vector<double> default_initial_guesses();
    /// Throws std::invalid_argument on nonpositive bounds or guesses.
    void validate() const;
};

enum class FitSource { Minimizer, LogGrid, LinearGrid };
std::string_view to_string(FitSource source) noexcept;

struct FitCandidate {
    double beta = 0.0;
    double tvd = 1.0;
};

struct FitResult {
    double beta_eff = 0.0;
    double tvd_min = 1.0;
    std::size_t evaluations = 0;
    FitSource source = FitSource::LogGrid;
    /// Best candidate of each stage, indexed by FitSource.
    std::array<FitCandidate, 3> stage_best{};
    /// Minimizer restarts that hit the iteration cap.
    std::size_t unconverged_starts = 0;
};

struct ScalarMinimum {
    double x = 0.0;
    double f = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// tvd(P, boltzmann(E, beta)).
double objective(const ProbabilityDistribution &p, const EnergyTable &energies, double beta);

/// Evaluates beta -> tvd(P, boltzmann(E, beta)) in O(levels * log degeneracy)
/// per call. Within each energy level the Boltzmann weight is constant, so the
/// level's P values are sorted once and |P - q| is summed from prefix sums.
class TvdObjective {
  public:
    TvdObjective(const ProbabilityDistribution &p, const EnergyTable &energies);

    double operator()(double beta) const;

    /// Upper bound on |d tvd / d beta|: half the mean absolute deviation of
    /// the energy under any distribution on [e_min, e_max], i.e. (e_max - e_min) / 4.
    [[nodiscard]] double lipschitz_bound() const noexcept { return lipschitz_; }

  private:
    std::vector<double> level_shift_;       // E_l - e_min
    std::vector<double> level_count_;       // degeneracy as double
    std::vector<std::size_t> level_offset_; // segment start in sorted_/prefix_
    std::vector<double> sorted_;            // P values, ascending within each level
    std::vector<double> prefix_;            // prefix_[k] = sum of sorted_[0..k)
    double lipschitz_ = 0.0;
};

/// Derivative-free Nelder-Mead minimisation of f over x > 0, carried out in
/// t = ln x. The best point returned is never worse than x0.
ScalarMinimum minimize_scalar(const std::function<double(double)> &f, double x0,
                              const FitConfig &config);

/// Multi-start minimiser, then log grid (plus beta = 0), then the linear grid.
/// Every candidate (beta, tvd) is rounded to config.rounding_decimals; the
/// lowest rounded tvd wins and ties go to the larger beta.
FitResult fit_beta(const ProbabilityDistribution &p, const EnergyTable &energies,
                   const FitConfig &config);

} // namespace gibbsqaoa
