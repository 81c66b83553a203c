#include "gibbsqaoa/thermal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gibbsqaoa/numeric.hpp"

namespace gibbsqaoa {

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probs)
    : probs_{std::move(probs)} {
    if (probs_.empty())
        throw std::invalid_argument("probability distribution is empty");
    for (std::size_t x = 0; x < probs_.size(); ++x) {
        if (!(probs_[x] >= 0.0) || !std::isfinite(probs_[x]))
            throw std::invalid_argument("probability at index " + std::to_string(x) +
                                        " is negative or not finite");
    }
    const double total = pairwise_sum(std::span<const double>(probs_));
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::invalid_argument("probabilities sum to " + std::to_string(total) +
                                    ", expected 1");
}

ProbabilityDistribution ProbabilityDistribution::uniform(std::size_t size) {
    return ProbabilityDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

ProbabilityDistribution ProbabilityDistribution::point_mass(std::size_t size, std::size_t at) {
    if (at >= size)
        throw std::out_of_range("point mass index out of range");
    std::vector<double> p(size, 0.0);
    p[at] = 1.0;
    return ProbabilityDistribution(std::move(p));
}

InverseTemperature::InverseTemperature(double beta) : beta_{beta} {
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("inverse temperature must be finite and >= 0, got " +
                                    std::to_string(beta));
}

ProbabilityDistribution boltzmann(const EnergyTable &energies, InverseTemperature beta) {
    const double b = beta.value();
    const double e0 = energies.e_min();
    std::vector<double> w(energies.size());
    for (std::size_t x = 0; x < w.size(); ++x)
        w[x] = std::exp(-b * (energies[x] - e0));
    // The ground state contributes weight 1, so z >= 1.
    const double z = pairwise_sum(std::span<const double>(w));
    for (auto &v : w)
        v /= z;
    return ProbabilityDistribution(std::move(w));
}

double tvd(const ProbabilityDistribution &p, const ProbabilityDistribution &q) {
    if (p.size() != q.size())
        throw std::invalid_argument("tvd: length mismatch (" + std::to_string(p.size()) +
                                    " vs " + std::to_string(q.size()) + ")");
    std::vector<double> diff(p.size());
    for (std::size_t x = 0; x < diff.size(); ++x)
        diff[x] = std::fabs(p[x] - q[x]);
    return 0.5 * pairwise_sum(std::span<const double>(diff));
}

double shannon_entropy_normalized(const ProbabilityDistribution &p, int num_spins) {
    const std::size_t expected = std::size_t{1} << num_spins;
    if (num_spins < 1 || p.size() != expected)
        throw std::invalid_argument("entropy: distribution length does not match 2^n");
    std::vector<double> terms(p.size(), 0.0);
    for (std::size_t x = 0; x < terms.size(); ++x)
        if (p[x] > 0.0)
            terms[x] = -p[x] * std::log(p[x]);
    return pairwise_sum(std::span<const double>(terms)) /
           std::log(static_cast<double>(expected));
}

} // namespace gibbsqaoa
