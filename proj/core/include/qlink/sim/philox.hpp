#pragma once

#include <array>
#include <cstdint>

namespace qlink::sim {

// Philox4x32-10 block function: four output words from a 128-bit counter and
// a 64-bit key. Counter-based, so any block can be computed independently.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// One logical stream of random values addressed by a 64-bit index. Reads are
// pure: values at distinct indices are independent and may be queried in any
// order, which keeps simulations reproducible under code-path changes.
class RandomLane {
public:
    RandomLane(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t bits(std::uint64_t index) const;
    double uniform(std::uint64_t index) const; // [0, 1)
    double normal(std::uint64_t index) const;  // standard normal

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
};

// Auto-incrementing view of a lane for genuinely sequential processes
// (emission gaps, dark counts, drift steps).
class SequenceRng {
public:
    SequenceRng(std::uint64_t seed, std::uint64_t stream) : lane_(seed, stream) {}

    std::uint64_t bits() { return lane_.bits(next_++); }
    double uniform() { return lane_.uniform(next_++); }
    double normal() { return lane_.normal(next_++); }

private:
    RandomLane lane_;
    std::uint64_t next_ = 0;
};

} // namespace qlink::sim
