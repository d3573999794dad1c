#pragma once

#include <cstdint>
#include <limits>

namespace teloinv {

/// splitmix64: a tiny, splittable URBG. Used everywhere randomness is
/// needed so that (seed, lineage index) fully determines a substream,
/// independent of how many draws other lineages consume.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Derive an independent substream for the given index.
    SplitMix64 split(std::uint64_t index) const {
        SplitMix64 child(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        child();  // burn one output to decorrelate
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace teloinv
