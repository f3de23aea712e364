#include "snb/rng.hpp"

#include <cassert>
#include <cmath>

namespace snb::rng {

double Stream::uniform() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

std::uint64_t Stream::below(std::uint64_t n) {
    assert(n > 0);
    // Multiply-shift rejection-free mapping; bias is < 2^-53 for desk-scale n.
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
}

std::int64_t Stream::range(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

double Stream::gaussian() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

int Stream::truncated_geometric(double p, int maxValue) {
    assert(p > 0.0 && p < 1.0 && maxValue >= 1);
    const double q = 1.0 - p;
    const double total = 1.0 - std::pow(q, maxValue);
    const double u = uniform() * total;
    // Inverse CDF: smallest k with 1 - q^k > u.
    const int k = 1 + static_cast<int>(std::floor(std::log1p(-u) / std::log(q)));
    if (k < 1) return 1;
    if (k > maxValue) return maxValue;
    return k;
}

double truncated_geometric_pmf(double p, int maxValue, int k) {
    if (k < 1 || k > maxValue) return 0.0;
    const double q = 1.0 - p;
    return std::pow(q, k - 1) * p / (1.0 - std::pow(q, maxValue));
}

}  // namespace snb::rng
