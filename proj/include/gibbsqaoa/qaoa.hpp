#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gibbsqaoa/ising_model.hpp"
#include "gibbsqaoa/thermal.hpp"

namespace gibbsqaoa {

enum class MixerKind { TransverseX, Grover };

/// "x" or "grover".
std::string_view to_string(MixerKind kind) noexcept;
std::optional<MixerKind> parse_mixer(std::string_view name) noexcept;

/// Angles for p alternating layers. gammas[k] drives the phase separator and
/// betas[k] the mixer of layer k. Both in radians.
struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;
    MixerKind mixer = MixerKind::TransverseX;

    [[nodiscard]] std::size_t depth() const noexcept { return gammas.size(); }
    /// Throws std::invalid_argument unless gammas.size() == betas.size() >= 1.
    void validate() const;
};

class StateVector {
  public:
    using complex_t = std::complex<double>;

    explicit StateVector(std::vector<complex_t> amplitudes);

    [[nodiscard]] int num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amps_; }

    [[nodiscard]] double norm_squared() const;
    [[nodiscard]] ProbabilityDistribution probabilities() const;

  private:
    int n_ = 0;
    std::vector<complex_t> amps_;
};

/// |+>^n: every amplitude 2^{-n/2}.
StateVector initial_plus_state(int n, int max_spins = kDefaultMaxSpins);

/// c_x <- exp(-i gamma E(x)) c_x.
void apply_phase_separator(StateVector &state, const EnergyTable &energies, double gamma);

/// exp(-i beta sum_k X_k), applied as n independent single-qubit rotations
/// [[cos b, -i sin b], [-i sin b, cos b]].
void apply_x_mixer(StateVector &state, double beta);

/// exp(-i beta |+><+|) with |+> the uniform superposition:
/// c <- c - (1 - exp(-i beta)) <+|c> |+>.
void apply_grover_mixer(StateVector &state, double beta);

void apply_mixer(StateVector &state, MixerKind kind, double beta);

/// Final state of the alternating evolution starting from |+>^n.
StateVector evolve(const EnergyTable &energies, const QaoaParams &params);

/// Output distribution |<x|gamma,beta>|^2 of the alternating evolution.
ProbabilityDistribution simulate(const EnergyTable &energies, const QaoaParams &params);

/// sum_x P(x) E(x).
double expectation_energy(const ProbabilityDistribution &dist, const EnergyTable &energies);

} // namespace gibbsqaoa
