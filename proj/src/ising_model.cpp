#include "gibbsqaoa/ising_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gibbsqaoa/errors.hpp"
#include "gibbsqaoa/numeric.hpp"

namespace gibbsqaoa {

namespace {

std::string pair_str(const Coupling &c) {
    return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

} // namespace

IsingModel::IsingModel(int n, std::vector<Coupling> couplings, std::vector<double> fields)
    : n_{n}, couplings_{std::move(couplings)}, fields_{std::move(fields)} {
    if (n_ < 1)
        throw std::invalid_argument("n must be >= 1, got " + std::to_string(n_));
    if (n_ > 63)
        throw std::invalid_argument("n must be <= 63, got " + std::to_string(n_));
    if (fields_.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("h has length " + std::to_string(fields_.size()) +
                                    ", expected n=" + std::to_string(n_));
    for (const auto &c : couplings_) {
        if (c.i < 0 || c.j < 0 || c.i >= n_ || c.j >= n_)
            throw std::invalid_argument("coupling " + pair_str(c) +
                                        " index out of range for n=" + std::to_string(n_));
        if (c.i >= c.j)
            throw std::invalid_argument("coupling " + pair_str(c) + " must satisfy i < j");
    }
    std::sort(couplings_.begin(), couplings_.end(), [](const Coupling &a, const Coupling &b) {
        return std::pair{a.i, a.j} < std::pair{b.i, b.j};
    });
    auto dup = std::adjacent_find(couplings_.begin(), couplings_.end(),
                                  [](const Coupling &a, const Coupling &b) {
                                      return a.i == b.i && a.j == b.j;
                                  });
    if (dup != couplings_.end())
        throw std::invalid_argument("duplicate coupling " + pair_str(*dup));
}

EnergyTable::EnergyTable(std::vector<double> energies) : energies_{std::move(energies)} {
    const std::size_t len = energies_.size();
    if (len < 2 || !std::has_single_bit(len))
        throw std::invalid_argument("energy table length must be 2^n with n >= 1, got " +
                                    std::to_string(len));
    n_ = std::countr_zero(len);

    std::vector<double> sorted = energies_;
    std::sort(sorted.begin(), sorted.end());
    e_min_ = sorted.front();
    e_max_ = sorted.back();
    if (!std::isfinite(e_min_) || !std::isfinite(e_max_))
        throw std::invalid_argument("energy table contains non-finite values");

    for (std::size_t k = 0; k < sorted.size();) {
        std::size_t end = k;
        while (end < sorted.size() && sorted[end] == sorted[k])
            ++end;
        levels_.push_back({sorted[k], end - k});
        k = end;
    }

    level_of_.resize(len);
    for (std::size_t x = 0; x < len; ++x) {
        auto it = std::lower_bound(levels_.begin(), levels_.end(), energies_[x],
                                   [](const EnergyLevel &l, double e) { return l.energy < e; });
        level_of_[x] = static_cast<std::uint32_t>(it - levels_.begin());
    }
}

double EnergyTable::mean() const {
    return pairwise_sum(energies()) / static_cast<double>(energies_.size());
}

IsingModel generate_sk(int n, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
    std::mt19937_64 rng(seed);
    auto draw_sign = [&rng] { return (rng() >> 63) ? -1.0 : 1.0; };

    std::vector<Coupling> couplings;
    couplings.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            couplings.push_back({i, j, draw_sign()});
    std::vector<double> fields(n);
    for (auto &h : fields)
        h = draw_sign();
    return IsingModel(n, std::move(couplings), std::move(fields));
}

double energy(const IsingModel &model, SpinConfiguration config) {
    const int n = model.num_spins();
    if (n < 64 && config.bits >> n)
        throw std::out_of_range("configuration " + std::to_string(config.bits) +
                                " out of range for n=" + std::to_string(n));
    double e = 0.0;
    for (const auto &c : model.couplings())
        e += c.value * config.spin(c.i) * config.spin(c.j);
    const auto h = model.fields();
    for (int i = 0; i < n; ++i)
        e += h[i] * config.spin(i);
    return e;
}

EnergyTable enumerate_energies(const IsingModel &model, int max_spins) {
    const int n = model.num_spins();
    if (n > max_spins)
        throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the spin cap of " +
                                 std::to_string(max_spins));
    const std::size_t dim = std::size_t{1} << n;

    // Row-major upper-triangular coupling matrix for a tight inner loop.
    std::vector<double> jmat(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto &c : model.couplings())
        jmat[static_cast<std::size_t>(c.i) * n + c.j] = c.value;
    const auto h = model.fields();

    std::vector<double> energies(dim);
    std::vector<double> s(n);
    for (std::size_t x = 0; x < dim; ++x) {
        for (int i = 0; i < n; ++i)
            s[i] = ((x >> i) & 1U) ? -1.0 : 1.0;
        double pair = 0.0;
        for (int i = 0; i < n; ++i) {
            const double *row = &jmat[static_cast<std::size_t>(i) * n];
            double acc = 0.0;
            for (int j = i + 1; j < n; ++j)
                acc += row[j] * s[j];
            pair += s[i] * acc;
        }
        double local = 0.0;
        for (int i = 0; i < n; ++i)
            local += h[i] * s[i];
        energies[x] = pair + local;
    }
    return EnergyTable(std::move(energies));
}

void save_model(const IsingModel &model, const std::filesystem::path &path) {
    nlohmann::ordered_json doc;
    doc["n"] = model.num_spins();
    doc["h"] = std::vector<double>(model.fields().begin(), model.fields().end());
    auto arr = nlohmann::ordered_json::array();
    for (const auto &c : model.couplings())
        arr.push_back({{"i", c.i}, {"j", c.j}, {"value", c.value}});
    doc["couplings"] = std::move(arr);

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << doc.dump(1) << '\n';
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

IsingModel load_model(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open model file " + path.string());

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }

    auto fail = [&](const std::string &field, const std::string &what) -> ParseError {
        return ParseError(path.string() + ": " + field + ": " + what);
    };

    if (!doc.is_object())
        throw fail("<root>", "expected an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw fail("n", "missing or not an integer");
    const auto n64 = doc["n"].get<std::int64_t>();
    if (n64 < 1 || n64 > 63)
        throw fail("n", "must be in [1, 63], got " + std::to_string(n64));
    const int n = static_cast<int>(n64);

    if (!doc.contains("h") || !doc["h"].is_array())
        throw fail("h", "missing or not an array");
    if (doc["h"].size() != static_cast<std::size_t>(n))
        throw fail("h", "length " + std::to_string(doc["h"].size()) + " != n=" +
                            std::to_string(n));
    std::vector<double> fields;
    for (std::size_t k = 0; k < doc["h"].size(); ++k) {
        const auto &v = doc["h"][k];
        if (!v.is_number())
            throw fail("h[" + std::to_string(k) + "]", "not a number");
        fields.push_back(v.get<double>());
    }

    if (!doc.contains("couplings") || !doc["couplings"].is_array())
        throw fail("couplings", "missing or not an array");
    std::vector<Coupling> couplings;
    std::vector<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < doc["couplings"].size(); ++k) {
        const auto &c = doc["couplings"][k];
        const std::string where = "couplings[" + std::to_string(k) + "]";
        if (!c.is_object())
            throw fail(where, "not an object");
        for (const char *key : {"i", "j"}) {
            if (!c.contains(key) || !c[key].is_number_integer())
                throw fail(where + "." + key, "missing or not an integer");
            const auto idx = c[key].get<std::int64_t>();
            if (idx < 0 || idx >= n)
                throw fail(where + "." + key,
                           "index " + std::to_string(idx) + " out of range for n=" +
                               std::to_string(n));
        }
        if (!c.contains("value") || !c["value"].is_number())
            throw fail(where + ".value", "missing or not a number");
        const int i = c["i"].get<int>();
        const int j = c["j"].get<int>();
        if (i >= j)
            throw fail(where, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") must satisfy i < j");
        seen.emplace_back(i, j);
        couplings.push_back({i, j, c["value"].get<double>()});
    }
    std::sort(seen.begin(), seen.end());
    auto dup = std::adjacent_find(seen.begin(), seen.end());
    if (dup != seen.end())
        throw fail("couplings", "duplicate pair (" + std::to_string(dup->first) + "," +
                                    std::to_string(dup->second) + ")");

    return IsingModel(n, std::move(couplings), std::move(fields));
}

} // namespace gibbsqaoa
