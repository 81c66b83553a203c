#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gibbsqaoa {

/// Recursive pairwise summation. Sums of 2^k equal terms come out exact,
/// which keeps uniform-distribution identities (entropy 1, mean energy) tight.
template <class T> T pairwise_sum(std::span<const T> values) {
    constexpr std::size_t kBlock = 32;
    if (values.size() <= kBlock) {
        T acc{};
        for (const T &v : values)
            acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Round to a fixed number of decimal places. Values whose scaled magnitude
/// exceeds the double mantissa are already coarser than requested and pass through.
inline double round_decimals(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double scaled = x * scale;
    if (!std::isfinite(scaled) || std::fabs(scaled) >= 4503599627370496.0)
        return x;
    return std::nearbyint(scaled) / scale;
}

/// Inclusive linspace; the last point is exactly `hi`.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double denom = static_cast<double>(count - 1);
    for (std::size_t k = 0; k + 1 < count; ++k)
        out[k] = lo + (hi - lo) * (static_cast<double>(k) / denom);
    out[count - 1] = hi;
    return out;
}

/// `count` points equispaced in log10 from 10^first_exp to 10^last_exp, in that order.
inline std::vector<double> logspace(double first_exp, double last_exp,
                                    std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (double e : linspace(first_exp, last_exp, count))
        out.push_back(std::pow(10.0, e));
    return out;
}

} // namespace gibbsqaoa
