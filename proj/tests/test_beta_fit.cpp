#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gibbsqaoa/beta_fit.hpp"
#include "gibbsqaoa/ising_model.hpp"
#include "gibbsqaoa/numeric.hpp"
#include "gibbsqaoa/qaoa.hpp"

using namespace gibbsqaoa;

TEST_CASE("default fit configuration") {
    const FitConfig cfg;
    REQUIRE(cfg.initial_guesses.size() == 28);
    CHECK(cfg.initial_guesses.front() == doctest::Approx(1e5));
    CHECK(cfg.initial_guesses.back() == doctest::Approx(1e-8));
    for (std::size_t k = 1; k < cfg.initial_guesses.size(); ++k)
        CHECK(std::log10(cfg.initial_guesses[k - 1] / cfg.initial_guesses[k]) ==
              doctest::Approx(13.0 / 27.0));
    CHECK(cfg.log_grid.count == 100);
    CHECK(cfg.log_grid.first == 1e-3);
    CHECK(cfg.log_grid.last == 1e-15);
    CHECK(cfg.linear_grid.start == 1e-4);
    CHECK(cfg.linear_grid.step == 1e-4);
    CHECK(cfg.linear_grid.beta_max == 100.0);
    CHECK(cfg.rounding_decimals == 15);
    CHECK_NOTHROW(cfg.validate());

    FitConfig bad = cfg;
    bad.rounding_decimals = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.linear_grid.step = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("objective on hand examples") {
    const auto table = enumerate_energies(generate_sk(6, 1));
    const auto u = ProbabilityDistribution::uniform(64);
    CHECK(objective(u, table, 0.0) == 0.0);

    const auto planted = boltzmann(table, InverseTemperature(0.5));
    CHECK(objective(planted, table, 0.5) == 0.0);
}

TEST_CASE("objective against a direct summation oracle") {
    const int n = 4;
    const auto model = generate_sk(n, 404);
    const auto table = enumerate_energies(model);

    // Oracle: energies straight from the couplings, naive Boltzmann weights.
    std::vector<double> w(16);
    double z = 0.0;
    for (std::uint64_t x = 0; x < 16; ++x) {
        double e = 0.0;
        for (const auto &c : model.couplings())
            e += c.value * (((x >> c.i) & 1U) ? -1.0 : 1.0) * (((x >> c.j) & 1U) ? -1.0 : 1.0);
        for (int i = 0; i < n; ++i)
            e += model.fields()[i] * (((x >> i) & 1U) ? -1.0 : 1.0);
        w[x] = std::exp(-e);
        z += w[x];
    }
    double expected = 0.0;
    for (double v : w)
        expected += std::fabs(1.0 / 16.0 - v / z);
    expected *= 0.5;

    CHECK(objective(ProbabilityDistribution::uniform(16), table, 1.0) ==
          doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("level-sorted evaluator agrees with the direct objective") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    for (int n : {3, 6, 9}) {
        const auto table = enumerate_energies(generate_sk(n, 7 * n));
        for (auto mixer : {MixerKind::TransverseX, MixerKind::Grover}) {
            const auto p = simulate(table, {{angle(rng) / 4.0}, {angle(rng)}, mixer});
            const TvdObjective fast(p, table);
            for (double beta : {0.0, 1e-12, 1e-4, 0.013, 0.2, 1.0, 3.7, 40.0, 1e4, 1e300})
                CHECK(std::fabs(fast(beta) - objective(p, table, beta)) <= 1e-13);
        }
    }
}

TEST_CASE("Lipschitz bound holds along dense beta grids") {
    std::mt19937_64 rng(72);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    const auto table = enumerate_energies(generate_sk(8, 5));
    for (int trial = 0; trial < 4; ++trial) {
        const auto p = simulate(table, {{angle(rng) / 4.0}, {angle(rng)}, MixerKind::TransverseX});
        const TvdObjective f(p, table);
        const double lip = f.lipschitz_bound();
        double prev = f(0.0);
        for (int k = 1; k <= 4000; ++k) {
            const double beta = k * 1e-3;
            const double cur = f(beta);
            REQUIRE(std::fabs(cur - prev) <= lip * 1e-3 + 1e-14);
            REQUIRE(std::isfinite(cur));
            prev = cur;
        }
    }
}

TEST_CASE("objective is finite on a dense grid up to 1e6") {
    const auto table = enumerate_energies(generate_sk(7, 8));
    const auto p = simulate(table, {{0.2}, {1.1}, MixerKind::TransverseX});
    for (double beta : logspace(-15.0, 6.0, 400))
        CHECK(std::isfinite(objective(p, table, beta)));
}

TEST_CASE("minimize_scalar finds a known minimum") {
    const FitConfig cfg;
    const auto r = minimize_scalar([](double x) { return (x - 2.0) * (x - 2.0); }, 10.0, cfg);
    CHECK(std::fabs(r.x - 2.0) <= 1e-6);
    CHECK(r.converged);
}

TEST_CASE("minimize_scalar never returns worse than its start") {
    const FitConfig cfg;
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-8.0, 5.0);
    auto wiggly = [](double x) { return std::sin(7.0 * std::log(x)) + 0.01 * std::log(x) * std::log(x); };
    for (int k = 0; k < 50; ++k) {
        const double x0 = std::pow(10.0, u(rng));
        const auto r = minimize_scalar(wiggly, x0, cfg);
        CHECK(r.f <= wiggly(x0));
    }
}

TEST_CASE("minimize_scalar on monotone objectives returns a boundary-adjacent point") {
    FitConfig cfg;
    const auto down = minimize_scalar([](double x) { return -x / (1.0 + x); }, 1.0, cfg);
    CHECK(down.x > 1e6);
    CHECK(std::isfinite(down.x));
    const auto up = minimize_scalar([](double x) { return x; }, 1.0, cfg);
    CHECK(up.x < 1e-6);
    CHECK(up.x >= 0.0);
}

TEST_CASE("minimize_scalar recovers a planted inverse temperature") {
    const auto table = enumerate_energies(generate_sk(8, 31));
    const auto target = boltzmann(table, InverseTemperature(0.1));
    const TvdObjective f(target, table);
    const auto r = minimize_scalar([&](double b) { return f(b); }, 1.0, FitConfig{});
    CHECK(std::fabs(r.x - 0.1) / 0.1 <= 1e-3);
    CHECK(r.f <= 1e-9);
}

TEST_CASE("fit_beta on a uniform distribution") {
    const auto table = enumerate_energies(generate_sk(7, 2));
    const auto r = fit_beta(ProbabilityDistribution::uniform(128), table, FitConfig{});
    CHECK(r.tvd_min <= 1e-12);
    CHECK(r.beta_eff >= 0.0);
    CHECK(objective(ProbabilityDistribution::uniform(128), table, r.beta_eff) <= 1e-12);
}

TEST_CASE("fit_beta planted recovery on random n <= 10 instances") {
    for (double beta_star : {0.01, 0.1, 1.0}) {
        for (int n : {6, 10}) {
            const auto table = enumerate_energies(generate_sk(n, 500 + n));
            const auto target = boltzmann(table, InverseTemperature(beta_star));
            const auto r = fit_beta(target, table, FitConfig{});
            CAPTURE(beta_star);
            CAPTURE(n);
            CHECK(r.tvd_min <= 1e-9);
            CHECK(std::fabs(r.beta_eff - beta_star) / beta_star <= 1e-3);
        }
    }
}

TEST_CASE("fit_beta planted recovery away from the grids") {
    for (double beta_star : {0.0123456789, 0.31415926, 2.7182818}) {
        const auto table = enumerate_energies(generate_sk(9, 77));
        const auto r = fit_beta(boltzmann(table, InverseTemperature(beta_star)), table, FitConfig{});
        CAPTURE(beta_star);
        CHECK(r.tvd_min <= 1e-9);
        CHECK(std::fabs(r.beta_eff - beta_star) / beta_star <= 1e-3);
        CHECK(r.source == FitSource::Minimizer);
    }
}

TEST_CASE("fit_beta bookkeeping: recomputation and dominance") {
    std::mt19937_64 rng(90);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    const auto table = enumerate_energies(generate_sk(8, 90));
    const FitConfig cfg;
    for (auto mixer : {MixerKind::TransverseX, MixerKind::Grover}) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto p = simulate(table, {{angle(rng) / 4.0}, {angle(rng)}, mixer});
            const auto r = fit_beta(p, table, cfg);
            CHECK(std::fabs(objective(p, table, r.beta_eff) - r.tvd_min) <= 1e-12);
            CHECK(r.tvd_min >= 0.0);
            CHECK(r.tvd_min <= 1.0);
            CHECK(r.evaluations > 0);

            // Every probed grid point and every start is no better than the result.
            const TvdObjective f(p, table);
            auto dominated = [&](double beta) {
                return r.tvd_min <= round_decimals(f(beta), cfg.rounding_decimals) + 1e-15;
            };
            for (double g : cfg.initial_guesses)
                CHECK(dominated(g));
            for (double b : logspace(-3.0, -15.0, 100))
                CHECK(dominated(b));
            CHECK(dominated(0.0));
            // Every 97th linear grid point, including the pruned ones.
            for (std::uint64_t k = 0; k < 1000000; k += 97)
                REQUIRE(dominated(cfg.linear_grid.start + static_cast<double>(k) * cfg.linear_grid.step));

            for (const auto &stage : r.stage_best)
                CHECK(r.tvd_min <= stage.tvd);
        }
    }
}

TEST_CASE("fit_beta breaks ties toward larger beta") {
    // Constant spectrum: every beta gives the same Boltzmann distribution.
    const EnergyTable flat(std::vector<double>(8, 3.0));
    FitConfig cfg;
    cfg.linear_grid.beta_max = 0.5;
    const auto r = fit_beta(ProbabilityDistribution::uniform(8), flat, cfg);
    CHECK(r.tvd_min == 0.0);
    // The largest candidate is the biggest minimiser end point or the grid end.
    CHECK(r.beta_eff >= 0.5);
}
