#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gibbsqaoa/ising_model.hpp"

namespace gibbsqaoa {

/// Nonnegative weights over the 2^n computational basis states summing to 1
/// within 1e-9. Construction validates; std::invalid_argument otherwise.
class ProbabilityDistribution {
  public:
    explicit ProbabilityDistribution(std::vector<double> probs);

    static ProbabilityDistribution uniform(std::size_t size);
    static ProbabilityDistribution point_mass(std::size_t size, std::size_t at);

    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
    [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
    [[nodiscard]] double operator[](std::size_t x) const { return probs_[x]; }

  private:
    std::vector<double> probs_;
};

/// Inverse temperature 1/T with k_B = 1. Finite and nonnegative.
class InverseTemperature {
  public:
    explicit InverseTemperature(double beta);
    [[nodiscard]] double value() const noexcept { return beta_; }

  private:
    double beta_;
};

/// Gibbs weights exp(-beta E) / Z, evaluated as exp(-beta (E - e_min)) so that
/// no finite beta overflows.
ProbabilityDistribution boltzmann(const EnergyTable &energies, InverseTemperature beta);

/// Total variation distance, (1/2) sum |P - Q|, in [0, 1].
double tvd(const ProbabilityDistribution &p, const ProbabilityDistribution &q);

/// Shannon entropy in base 2^n: 1 for uniform, 0 for a point mass.
double shannon_entropy_normalized(const ProbabilityDistribution &p, int num_spins);

} // namespace gibbsqaoa
