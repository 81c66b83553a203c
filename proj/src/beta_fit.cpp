#include "gibbsqaoa/beta_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gibbsqaoa/errors.hpp"
#include "gibbsqaoa/numeric.hpp"

namespace gibbsqaoa {

namespace {

// Search window in t = ln(beta). exp() stays finite and nonzero on it.
constexpr double kLogMin = -690.0;
constexpr double kLogMax = 690.0;
constexpr double kInitialLogStep = 0.1;

// Slack used when ruling out linear-grid points by the Lipschitz bound; it
// dwarfs both floating-point error and the 1e-15 rounding quantum.
constexpr double kPruneMargin = 1e-12;

} // namespace

std::vector<double> FitConfig::default_initial_guesses() { return logspace(5.0, -8.0, 28); }

void FitConfig::validate() const {
    if (initial_guesses.empty())
        throw std::invalid_argument("fit.initial_guesses must not be empty");
    for (double g : initial_guesses)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("fit.initial_guesses must be positive and finite");
    if (log_grid.count < 1)
        throw std::invalid_argument("fit.log_grid.count must be >= 1");
    if (!(log_grid.first > 0.0) || !(log_grid.last > 0.0))
        throw std::invalid_argument("fit.log_grid bounds must be positive");
    if (!(linear_grid.start > 0.0) || !(linear_grid.step > 0.0) ||
        !(linear_grid.beta_max > 0.0))
        throw std::invalid_argument("fit.linear_grid start, step and beta_max must be positive");
    if (rounding_decimals < 1)
        throw std::invalid_argument("fit.rounding_decimals must be >= 1");
    if (minimizer_max_iters < 1)
        throw std::invalid_argument("fit.minimizer_max_iters must be >= 1");
    if (!(minimizer_tolerance > 0.0))
        throw std::invalid_argument("fit.minimizer_tolerance must be positive");
}

std::string_view to_string(FitSource source) noexcept {
    switch (source) {
    case FitSource::Minimizer:
        return "minimizer";
    case FitSource::LogGrid:
        return "log_grid";
    case FitSource::LinearGrid:
        return "linear_grid";
    }
    return "minimizer";
}

double objective(const ProbabilityDistribution &p, const EnergyTable &energies, double beta) {
    return tvd(p, boltzmann(energies, InverseTemperature(beta)));
}

TvdObjective::TvdObjective(const ProbabilityDistribution &p, const EnergyTable &energies) {
    if (p.size() != energies.size())
        throw std::invalid_argument("objective: distribution has " + std::to_string(p.size()) +
                                    " entries, energy table has " +
                                    std::to_string(energies.size()));
    const auto levels = energies.levels();
    const auto level_of = energies.level_of();
    const std::size_t num_levels = levels.size();

    level_shift_.resize(num_levels);
    level_count_.resize(num_levels);
    level_offset_.resize(num_levels + 1);
    std::size_t offset = 0;
    for (std::size_t l = 0; l < num_levels; ++l) {
        level_shift_[l] = levels[l].energy - energies.e_min();
        level_count_[l] = static_cast<double>(levels[l].degeneracy);
        level_offset_[l] = offset;
        offset += levels[l].degeneracy;
    }
    level_offset_[num_levels] = offset;

    sorted_.resize(p.size());
    std::vector<std::size_t> cursor(level_offset_.begin(), level_offset_.end() - 1);
    for (std::size_t x = 0; x < p.size(); ++x)
        sorted_[cursor[level_of[x]]++] = p[x];

    // Segment l of prefix_ starts at level_offset_[l] + l and holds degeneracy + 1 sums.
    prefix_.resize(p.size() + num_levels);
    for (std::size_t l = 0; l < num_levels; ++l) {
        const auto begin = sorted_.begin() + static_cast<std::ptrdiff_t>(level_offset_[l]);
        const auto end = sorted_.begin() + static_cast<std::ptrdiff_t>(level_offset_[l + 1]);
        std::sort(begin, end);
        double *pre = &prefix_[level_offset_[l] + l];
        pre[0] = 0.0;
        for (std::size_t k = 0; k < levels[l].degeneracy; ++k)
            pre[k + 1] = pre[k] + sorted_[level_offset_[l] + k];
    }

    lipschitz_ = (energies.e_max() - energies.e_min()) / 4.0;
}

double TvdObjective::operator()(double beta) const {
    const std::size_t num_levels = level_shift_.size();
    double z = 0.0;
    for (std::size_t l = 0; l < num_levels; ++l)
        z += level_count_[l] * std::exp(-beta * level_shift_[l]);

    double total = 0.0;
    for (std::size_t l = 0; l < num_levels; ++l) {
        const double q = std::exp(-beta * level_shift_[l]) / z;
        const std::size_t a = level_offset_[l];
        const std::size_t b = level_offset_[l + 1];
        const auto first = sorted_.begin() + static_cast<std::ptrdiff_t>(a);
        const auto last = sorted_.begin() + static_cast<std::ptrdiff_t>(b);
        const std::size_t below = static_cast<std::size_t>(std::lower_bound(first, last, q) - first);
        const double *pre = &prefix_[a + l];
        const double sum_below = pre[below];
        const double sum_above = pre[b - a] - pre[below];
        total += (q * static_cast<double>(below) - sum_below) +
                 (sum_above - q * static_cast<double>(b - a - below));
    }
    return std::clamp(0.5 * total, 0.0, 1.0);
}

ScalarMinimum minimize_scalar(const std::function<double(double)> &f, double x0,
                              const FitConfig &config) {
    if (!(x0 > 0.0) || !std::isfinite(x0))
        throw std::invalid_argument("minimize_scalar: x0 must be positive and finite");

    ScalarMinimum out;
    auto g = [&](double t) {
        ++out.evaluations;
        const double v = f(std::exp(t));
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    auto clamp_t = [](double t) { return std::clamp(t, kLogMin, kLogMax); };

    const double tol = config.minimizer_tolerance;
    double t_best = clamp_t(std::log(x0));
    double f_best = g(t_best);
    double t_worst = clamp_t(t_best + kInitialLogStep);
    if (t_worst == t_best)
        t_worst = clamp_t(t_best - kInitialLogStep);
    double f_worst = g(t_worst);

    for (int iter = 0; iter < config.minimizer_max_iters; ++iter) {
        if (f_worst < f_best) {
            std::swap(t_best, t_worst);
            std::swap(f_best, f_worst);
        }
        if (std::fabs(t_worst - t_best) <= tol && std::fabs(f_worst - f_best) <= tol) {
            out.converged = true;
            break;
        }
        if (t_worst == t_best) {
            out.converged = true;
            break;
        }

        // In one dimension the centroid of all but the worst vertex is the best vertex.
        const double tr = clamp_t(t_best + (t_best - t_worst));
        const double fr = g(tr);
        if (fr < f_best) {
            const double te = clamp_t(t_best + 2.0 * (t_best - t_worst));
            const double fe = g(te);
            if (fe < fr) {
                t_worst = te;
                f_worst = fe;
            } else {
                t_worst = tr;
                f_worst = fr;
            }
            continue;
        }

        const bool outside = fr < f_worst;
        const double tc = outside ? t_best + 0.5 * (tr - t_best) : t_best + 0.5 * (t_worst - t_best);
        const double fc = g(tc);
        if ((outside && fc <= fr) || (!outside && fc < f_worst)) {
            t_worst = tc;
            f_worst = fc;
            continue;
        }

        // shrink toward the best vertex
        t_worst = t_best + 0.5 * (t_worst - t_best);
        f_worst = g(t_worst);
    }

    if (f_worst < f_best) {
        std::swap(t_best, t_worst);
        std::swap(f_best, f_worst);
    }
    out.x = std::exp(t_best);
    out.f = f_best;
    return out;
}

namespace {

class BestTracker {
  public:
    explicit BestTracker(int decimals) : decimals_{decimals} {}

    void consider(double beta, double tvd_value, FitSource source) {
        const FitCandidate c{round_decimals(beta, decimals_), round_decimals(tvd_value, decimals_)};
        auto &stage = stage_best_[static_cast<std::size_t>(source)];
        if (!stage_seen_[static_cast<std::size_t>(source)] || better(c, stage)) {
            stage = c;
            stage_seen_[static_cast<std::size_t>(source)] = true;
        }
        if (!any_ || better(c, best_)) {
            best_ = c;
            source_ = source;
            any_ = true;
        }
    }

    [[nodiscard]] double best_tvd() const noexcept { return best_.tvd; }
    [[nodiscard]] bool any() const noexcept { return any_; }

    void finish(FitResult &result) const {
        result.beta_eff = best_.beta;
        result.tvd_min = best_.tvd;
        result.source = source_;
        result.stage_best = stage_best_;
    }

  private:
    static bool better(const FitCandidate &a, const FitCandidate &b) {
        return a.tvd < b.tvd || (a.tvd == b.tvd && a.beta > b.beta);
    }

    int decimals_;
    FitCandidate best_{};
    FitSource source_ = FitSource::LogGrid;
    bool any_ = false;
    std::array<FitCandidate, 3> stage_best_{};
    std::array<bool, 3> stage_seen_{};
};

} // namespace

FitResult fit_beta(const ProbabilityDistribution &p, const EnergyTable &energies,
                   const FitConfig &config) {
    config.validate();
    const TvdObjective obj(p, energies);
    BestTracker best(config.rounding_decimals);
    FitResult result;

    const std::function<double(double)> f = [&obj](double beta) { return obj(beta); };
    for (double guess : config.initial_guesses) {
        const ScalarMinimum m = minimize_scalar(f, guess, config);
        result.evaluations += m.evaluations;
        if (!m.converged)
            ++result.unconverged_starts;
        best.consider(m.x, m.f, FitSource::Minimizer);
    }

    // beta = 0 is unreachable in log coordinates; it joins the log grid explicitly.
    best.consider(0.0, obj(0.0), FitSource::LogGrid);
    ++result.evaluations;
    for (double beta : logspace(std::log10(config.log_grid.first),
                                std::log10(config.log_grid.last), config.log_grid.count)) {
        best.consider(beta, obj(beta), FitSource::LogGrid);
        ++result.evaluations;
    }

    // Linear grid. A probe at beta_k with value f_k bounds every later point by
    // f_k - L (beta - beta_k); points whose bound exceeds the incumbent cannot
    // win or tie once rounded, so they are skipped without evaluation.
    const auto &lin = config.linear_grid;
    const double lipschitz = obj.lipschitz_bound();
    for (std::uint64_t k = 0;;) {
        const double beta = lin.start + static_cast<double>(k) * lin.step;
        if (beta > lin.beta_max)
            break;
        const double value = obj(beta);
        ++result.evaluations;
        best.consider(beta, value, FitSource::LinearGrid);

        const double slack = value - best.best_tvd() - kPruneMargin;
        std::uint64_t advance = 1;
        if (slack > 0.0) {
            if (lipschitz <= 0.0)
                break;
            const double skip = std::floor(slack / (lipschitz * lin.step));
            if (skip > 1.0)
                advance = skip >= 1e18 ? std::uint64_t{1} << 60 : static_cast<std::uint64_t>(skip);
        }
        k += advance;
    }

    best.finish(result);
    if (!std::isfinite(result.tvd_min) || result.tvd_min < 0.0 || result.tvd_min > 1.0 ||
        !std::isfinite(result.beta_eff) || result.beta_eff < 0.0)
        throw ComputeError("fit_beta produced an invalid result (beta=" +
                           std::to_string(result.beta_eff) +
                           ", tvd=" + std::to_string(result.tvd_min) + ")");
    return result;
}

} // namespace gibbsqaoa
