#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace gibbsqaoa {

/// Largest spin count for which full 2^n tables and state vectors are built.
inline constexpr int kDefaultMaxSpins = 24;

struct Coupling {
    int i = 0;
    int j = 0;
    double value = 0.0;

    friend bool operator==(const Coupling &, const Coupling &) = default;
};

/// Classical Ising Hamiltonian  H(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.
///
/// Couplings are stored sorted by (i, j) with i < j < n and no duplicate
/// pairs; the constructor enforces this and throws std::invalid_argument
/// otherwise.
class IsingModel {
  public:
    IsingModel(int n, std::vector<Coupling> couplings, std::vector<double> fields);

    [[nodiscard]] int num_spins() const noexcept { return n_; }
    [[nodiscard]] std::span<const Coupling> couplings() const noexcept { return couplings_; }
    [[nodiscard]] std::span<const double> fields() const noexcept { return fields_; }

    friend bool operator==(const IsingModel &, const IsingModel &) = default;

  private:
    int n_;
    std::vector<Coupling> couplings_;
    std::vector<double> fields_;
};

/// Computational-basis index. Bit i clear means s_i = +1, bit i set means s_i = -1.
struct SpinConfiguration {
    std::uint64_t bits = 0;

    [[nodiscard]] int spin(int site) const noexcept {
        return ((bits >> site) & 1U) ? -1 : +1;
    }
    [[nodiscard]] SpinConfiguration flipped(int n) const noexcept {
        return {bits ^ ((std::uint64_t{1} << n) - 1)};
    }
};

struct EnergyLevel {
    double energy = 0.0;
    std::size_t degeneracy = 0;

    friend bool operator==(const EnergyLevel &, const EnergyLevel &) = default;
};

/// Energies of all 2^n configurations, indexed by SpinConfiguration::bits.
class EnergyTable {
  public:
    explicit EnergyTable(std::vector<double> energies);

    [[nodiscard]] int num_spins() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return energies_.size(); }
    [[nodiscard]] std::span<const double> energies() const noexcept { return energies_; }
    [[nodiscard]] double operator[](std::size_t x) const { return energies_[x]; }
    [[nodiscard]] double e_min() const noexcept { return e_min_; }
    [[nodiscard]] double e_max() const noexcept { return e_max_; }
    /// Distinct energies ascending, with their multiplicities.
    [[nodiscard]] std::span<const EnergyLevel> levels() const noexcept { return levels_; }
    /// Index into levels() for configuration x.
    [[nodiscard]] std::span<const std::uint32_t> level_of() const noexcept { return level_of_; }
    /// Arithmetic mean over all configurations.
    [[nodiscard]] double mean() const;

  private:
    int n_ = 0;
    std::vector<double> energies_;
    double e_min_ = 0.0;
    double e_max_ = 0.0;
    std::vector<EnergyLevel> levels_;
    std::vector<std::uint32_t> level_of_;
};

/// Fully connected SK instance with every J_ij and h_i drawn uniformly from
/// {-1, +1}. Draws come from std::mt19937_64 (output sequence fixed by the
/// standard) in the order J_01, J_02, ..., J_{n-2,n-1}, h_0, ..., h_{n-1}.
IsingModel generate_sk(int n, std::uint64_t seed);

double energy(const IsingModel &model, SpinConfiguration config);

EnergyTable enumerate_energies(const IsingModel &model, int max_spins = kDefaultMaxSpins);

void save_model(const IsingModel &model, const std::filesystem::path &path);
IsingModel load_model(const std::filesystem::path &path);

} // namespace gibbsqaoa
