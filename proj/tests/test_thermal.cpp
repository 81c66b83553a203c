#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gibbsqaoa/ising_model.hpp"
#include "gibbsqaoa/thermal.hpp"

using namespace gibbsqaoa;

namespace {

ProbabilityDistribution random_distribution(std::size_t size, std::mt19937_64 &rng,
                                            double sparsity = 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(size);
    double total = 0.0;
    for (auto &v : p) {
        v = u(rng) < sparsity ? 0.0 : -std::log(u(rng) + 1e-300);
        total += v;
    }
    if (total == 0.0) {
        p[0] = 1.0;
        total = 1.0;
    }
    for (auto &v : p)
        v /= total;
    return ProbabilityDistribution(p);
}

} // namespace

TEST_CASE("ProbabilityDistribution validates its contents") {
    CHECK_THROWS_AS(ProbabilityDistribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityDistribution({1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityDistribution({NAN, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(ProbabilityDistribution({0.25, 0.75}));
}

TEST_CASE("InverseTemperature rejects negative and non-finite values") {
    CHECK_THROWS_AS(InverseTemperature{-1e-9}, std::invalid_argument);
    CHECK_THROWS_AS(InverseTemperature{INFINITY}, std::invalid_argument);
    CHECK_NOTHROW(InverseTemperature{0.0});
}

TEST_CASE("boltzmann closed forms") {
    const EnergyTable two_level({1.0, -1.0});
    const auto p = boltzmann(two_level, InverseTemperature(1.0));
    // e / (e + 1/e)
    CHECK(p[1] == doctest::Approx(0.8807970779778824).epsilon(1e-14));
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));

    const auto table = enumerate_energies(generate_sk(8, 3));
    const auto uniform = boltzmann(table, InverseTemperature(0.0));
    for (double v : uniform.probs())
        CHECK(v == 1.0 / 256.0);
}

TEST_CASE("boltzmann at very low temperature concentrates on a unique ground state") {
    // Find a seed whose ground state is unique.
    for (std::uint64_t seed = 1;; ++seed) {
        const auto table = enumerate_energies(generate_sk(9, seed));
        if (table.levels()[0].degeneracy != 1)
            continue;
        const auto p = boltzmann(table, InverseTemperature(1e4));
        std::size_t argmin = 0;
        for (std::size_t x = 0; x < table.size(); ++x)
            if (table[x] == table.e_min())
                argmin = x;
        CHECK(p[argmin] >= 1.0 - 1e-12);
        break;
    }
}

TEST_CASE("boltzmann is shift invariant and level-uniform") {
    const auto model = generate_sk(10, 77);
    const auto table = enumerate_energies(model);
    std::vector<double> shifted(table.energies().begin(), table.energies().end());
    for (auto &e : shifted)
        e += 123.5;
    const EnergyTable shifted_table(shifted);
    for (double beta : {0.0, 0.01, 0.3, 2.0, 50.0}) {
        const auto a = boltzmann(table, InverseTemperature(beta));
        const auto b = boltzmann(shifted_table, InverseTemperature(beta));
        for (std::size_t x = 0; x < a.size(); ++x)
            REQUIRE(std::fabs(a[x] - b[x]) <= 1e-12);
        // degenerate configurations carry identical weight
        std::vector<double> first_in_level(table.levels().size(), -1.0);
        for (std::size_t x = 0; x < a.size(); ++x) {
            auto &slot = first_in_level[table.level_of()[x]];
            if (slot < 0.0)
                slot = a[x];
            else
                REQUIRE(a[x] == slot);
        }
    }
}

TEST_CASE("boltzmann stays finite for huge beta") {
    const auto table = enumerate_energies(generate_sk(6, 2));
    for (double beta : {1e3, 1e6, 1e12, 1e300}) {
        const auto p = boltzmann(table, InverseTemperature(beta));
        for (double v : p.probs())
            CHECK(std::isfinite(v));
    }
}

TEST_CASE("tvd on hand examples") {
    const auto u = ProbabilityDistribution::uniform(16);
    CHECK(tvd(u, u) == 0.0);
    CHECK(tvd(ProbabilityDistribution({1.0, 0.0}), ProbabilityDistribution({0.0, 1.0})) == 1.0);
    CHECK(tvd(u, ProbabilityDistribution::point_mass(16, 5)) ==
          doctest::Approx(0.9375).epsilon(1e-15));
    CHECK_THROWS_AS(tvd(u, ProbabilityDistribution::uniform(8)), std::invalid_argument);
}

TEST_CASE("tvd is a metric on random distributions") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t size = std::size_t{1} << (1 + trial % 8);
        const double sparsity = (trial % 3) * 0.3;
        const auto p = random_distribution(size, rng, sparsity);
        const auto q = random_distribution(size, rng, sparsity);
        const auto r = random_distribution(size, rng, sparsity);
        const double pq = tvd(p, q);
        CHECK(pq == tvd(q, p));
        CHECK(pq >= 0.0);
        CHECK(pq <= 1.0);
        CHECK(tvd(p, p) == 0.0);
        CHECK(tvd(p, r) <= pq + tvd(q, r) + 1e-15);
    }
}

TEST_CASE("normalized entropy") {
    CHECK(shannon_entropy_normalized(ProbabilityDistribution::uniform(1024), 10) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(shannon_entropy_normalized(ProbabilityDistribution::point_mass(32, 3), 5) == 0.0);
    CHECK(shannon_entropy_normalized(ProbabilityDistribution({0.25, 0.75}), 1) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-14));

    const auto table = enumerate_energies(generate_sk(11, 8));
    const double s0 = shannon_entropy_normalized(boltzmann(table, InverseTemperature(0.0)), 11);
    CHECK(std::fabs(s0 - 1.0) <= 1e-15);

    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const auto p = random_distribution(64, rng, 0.5);
        const double s = shannon_entropy_normalized(p, 6);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0 + 1e-15);
    }
    CHECK_THROWS_AS(shannon_entropy_normalized(ProbabilityDistribution::uniform(8), 4),
                    std::invalid_argument);
}
