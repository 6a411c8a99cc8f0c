#pragma once

#include <cstdint>
#include <vector>

#include "qlink/error.hpp"
#include "qlink/timetag.hpp"

namespace qlink::coinc {

QLINK_DEFINE_ERROR(BadBinning);

// Histogram of pairwise detection-time differences d = time_b - time_a.
// Bin k covers [origin + k w, origin + (k+1) w).
struct Histogram {
    TimePs origin_ps = 0;
    TimePs bin_width_ps = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const;
    double bin_center(std::size_t k) const {
        return static_cast<double>(origin_ps) +
               (static_cast<double>(k) + 0.5) * static_cast<double>(bin_width_ps);
    }
};

// Counts every tag pair with d - offset in [-half_range, +half_range).
// bin_width must divide 2 * half_range. Inputs must be time-sorted.
Histogram build_histogram(const TagStream& a, const TagStream& b, TimePs offset_ps,
                          TimePs half_range_ps, TimePs bin_width_ps);

} // namespace qlink::coinc
