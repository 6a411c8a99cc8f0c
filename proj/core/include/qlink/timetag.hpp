#pragma once

#include <cstdint>
#include <vector>

namespace qlink {

// All event times are integer picoseconds on a shared run clock.
using TimePs = std::int64_t;

// Detector channels, one per analyzer output:
//   0 -> 0 deg, 1 -> 90 deg (rectilinear basis)
//   2 -> +45 deg, 3 -> -45 deg (diagonal basis)
inline constexpr std::uint8_t kChannelCount = 4;

struct TimeTag {
    TimePs time = 0;
    std::uint8_t channel = 0;

    friend bool operator==(const TimeTag&, const TimeTag&) = default;
};

using TagStream = std::vector<TimeTag>;

} // namespace qlink
