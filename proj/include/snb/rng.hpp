#pragma once

#include <cstdint>

namespace snb::rng {

/// SplitMix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Draw domains. Every random decision the generator makes is keyed by
/// (seed, domain, entity id, draw counter), so the value of any draw is
/// independent of evaluation order and of how work is split across workers.
enum class Domain : std::uint64_t {
    PersonAttr = 1,
    PersonDegree = 2,
    KnowsStudy = 3,
    KnowsInterest = 4,
    KnowsRandom = 5,
    ActivityPlan = 6,
    ForumGen = 7,
    PostGen = 8,
    CommentGen = 9,
    LikeGen = 10,
    MembershipGen = 11,
    Flashmob = 12,
    CurationDates = 13,
    DriverChain = 14,
    TestShuffle = 15,
};

/// Counter-based random stream for one (seed, domain, entity) key.
/// Stateless apart from the draw counter; cheap to construct.
class Stream {
  public:
    Stream(std::uint64_t seed, Domain domain, std::uint64_t entity)
        : k0_(mix64(seed ^ 0x243f6a8885a308d3ULL)),
          k1_(mix64((static_cast<std::uint64_t>(domain) << 32) ^ entity)) {}

    std::uint64_t bits() {
        std::uint64_t x = mix64(ctr_++ + 0x9e3779b97f4a7c15ULL);
        x = mix64(x ^ k0_);
        return mix64(x ^ k1_);
    }

    /// Uniform in [0, 1).
    double uniform();

    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi);

    /// Standard normal via Box-Muller (two fresh uniforms per call).
    double gaussian();

    /// Geometric on {1, ..., maxValue}: P(k) proportional to (1-p)^(k-1) * p.
    int truncated_geometric(double p, int maxValue);

    /// True with probability p.
    bool chance(double p) { return uniform() < p; }

  private:
    std::uint64_t k0_, k1_;
    std::uint64_t ctr_ = 0;
};

/// Probability mass of the truncated geometric used by Stream.
double truncated_geometric_pmf(double p, int maxValue, int k);

}  // namespace snb::rng
