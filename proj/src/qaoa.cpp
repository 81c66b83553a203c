#include "gibbsqaoa/qaoa.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gibbsqaoa/errors.hpp"
#include "gibbsqaoa/numeric.hpp"

namespace gibbsqaoa {

std::string_view to_string(MixerKind kind) noexcept {
    switch (kind) {
    case MixerKind::TransverseX:
        return "x";
    case MixerKind::Grover:
        return "grover";
    }
    return "x";
}

std::optional<MixerKind> parse_mixer(std::string_view name) noexcept {
    if (name == "x" || name == "X" || name == "transverse-x")
        return MixerKind::TransverseX;
    if (name == "grover" || name == "gm" || name == "GM")
        return MixerKind::Grover;
    return std::nullopt;
}

void QaoaParams::validate() const {
    if (gammas.empty())
        throw std::invalid_argument("QAOA depth must be >= 1");
    if (gammas.size() != betas.size())
        throw std::invalid_argument("gammas and betas must have equal length (" +
                                    std::to_string(gammas.size()) + " vs " +
                                    std::to_string(betas.size()) + ")");
}

StateVector::StateVector(std::vector<complex_t> amplitudes) : amps_{std::move(amplitudes)} {
    if (amps_.size() < 2 || !std::has_single_bit(amps_.size()))
        throw std::invalid_argument("state vector length must be 2^n with n >= 1");
    n_ = std::countr_zero(amps_.size());
}

double StateVector::norm_squared() const {
    std::vector<double> p(amps_.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        p[x] = std::norm(amps_[x]);
    return pairwise_sum(std::span<const double>(p));
}

ProbabilityDistribution StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        p[x] = std::norm(amps_[x]);
    return ProbabilityDistribution(std::move(p));
}

StateVector initial_plus_state(int n, int max_spins) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
    if (n > max_spins)
        throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the spin cap of " +
                                 std::to_string(max_spins));
    const std::size_t dim = std::size_t{1} << n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return StateVector(std::vector<StateVector::complex_t>(dim, {amp, 0.0}));
}

void apply_phase_separator(StateVector &state, const EnergyTable &energies, double gamma) {
    if (energies.size() != state.size())
        throw std::invalid_argument("phase separator: energy table has " +
                                    std::to_string(energies.size()) +
                                    " entries, state has " + std::to_string(state.size()));
    if (gamma == 0.0)
        return;

    // One complex exponential per distinct level instead of per basis state.
    const auto levels = energies.levels();
    std::vector<StateVector::complex_t> phase(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l)
        phase[l] = std::polar(1.0, -gamma * levels[l].energy);

    const auto level_of = energies.level_of();
    auto amps = state.amplitudes();
    for (std::size_t x = 0; x < amps.size(); ++x)
        amps[x] *= phase[level_of[x]];
}

void apply_x_mixer(StateVector &state, double beta) {
    if (beta == 0.0)
        return;
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    auto amps = state.amplitudes();
    const std::size_t dim = amps.size();

    for (int q = 0; q < state.num_qubits(); ++q) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                auto &a0 = amps[base + off];
                auto &a1 = amps[base + off + stride];
                const auto v0 = a0;
                const auto v1 = a1;
                // -i s v = (s v.imag, -s v.real)
                a0 = {c * v0.real() + s * v1.imag(), c * v0.imag() - s * v1.real()};
                a1 = {c * v1.real() + s * v0.imag(), c * v1.imag() - s * v0.real()};
            }
        }
    }
}

void apply_grover_mixer(StateVector &state, double beta) {
    if (beta == 0.0)
        return;
    auto amps = state.amplitudes();
    const double dim = static_cast<double>(amps.size());
    const auto total = pairwise_sum(std::span<const StateVector::complex_t>(amps));
    const auto shift = (1.0 - std::polar(1.0, -beta)) * (total / dim);
    for (auto &a : amps)
        a -= shift;
}

void apply_mixer(StateVector &state, MixerKind kind, double beta) {
    switch (kind) {
    case MixerKind::TransverseX:
        apply_x_mixer(state, beta);
        return;
    case MixerKind::Grover:
        apply_grover_mixer(state, beta);
        return;
    }
}

StateVector evolve(const EnergyTable &energies, const QaoaParams &params) {
    params.validate();
    StateVector state = initial_plus_state(energies.num_spins());
    for (std::size_t k = 0; k < params.depth(); ++k) {
        apply_phase_separator(state, energies, params.gammas[k]);
        apply_mixer(state, params.mixer, params.betas[k]);
    }
    return state;
}

ProbabilityDistribution simulate(const EnergyTable &energies, const QaoaParams &params) {
    return evolve(energies, params).probabilities();
}

double expectation_energy(const ProbabilityDistribution &dist, const EnergyTable &energies) {
    if (dist.size() != energies.size())
        throw std::invalid_argument("expectation_energy: length mismatch (" +
                                    std::to_string(dist.size()) + " vs " +
                                    std::to_string(energies.size()) + ")");
    std::vector<double> terms(dist.size());
    for (std::size_t x = 0; x < terms.size(); ++x)
        terms[x] = dist[x] * energies[x];
    return pairwise_sum(std::span<const double>(terms));
}

} // namespace gibbsqaoa
