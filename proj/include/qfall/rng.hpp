#pragma once

#include <cstdint>

namespace qfall {

/// splitmix64 step; the basis of all sampling here.  Chosen over the
/// standard-library engines so that streams are identical across platforms
/// and standard libraries.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic per-(seed, index) substream: sample i of a run draws from
/// SampleStream(seed, i) regardless of evaluation order, so Monte Carlo
/// results do not depend on how samples are scheduled.
class SampleStream {
  public:
    SampleStream(std::uint64_t seed, std::uint64_t index) : state_(seed) {
        // decorrelate the per-sample lane from the run seed
        state_ ^= 0xd1b54a32d192ed03ull * (index + 1);
        splitmix64_next(state_);
        splitmix64_next(state_);
    }

    double uniform01() {
        // 53-bit mantissa in (0, 1]
        return (static_cast<double>(splitmix64_next(state_) >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal();

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace qfall
