#pragma once

#include <cstdint>
#include <vector>

#include "qlink/error.hpp"
#include "qlink/timetag.hpp"

namespace qlink::coinc {

QLINK_DEFINE_ERROR(InvalidWindow);

// One matched detection pair across the two parties.
struct Coincidence {
    TimePs time_a = 0;
    TimePs time_b = 0;
    std::uint8_t channel_a = 0;
    std::uint8_t channel_b = 0;
};

// Greedy nearest-neighbor matching: candidate pairs satisfy
// |time_b - time_a - offset| <= window / 2, closest residual first,
// each tag used at most once. Inputs must be time-sorted.
std::vector<Coincidence> pair_coincidences(const TagStream& a, const TagStream& b,
                                           TimePs offset_ps, TimePs window_ps);

enum class Regime { Symmetric, Asymmetric };

// Arm-length split classification. Links with |len_a - len_b| >= 2 km put
// the mode-delay satellite peaks outside any usable coincidence window and
// behave asymmetrically.
Regime classify_regime(double length_a_km, double length_b_km);

} // namespace qlink::coinc
