#include "qlink/coinc/histogram.hpp"

#include <numeric>

namespace qlink::coinc {

std::uint64_t Histogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram build_histogram(const TagStream& a, const TagStream& b, TimePs offset_ps,
                          TimePs half_range_ps, TimePs bin_width_ps) {
    if (bin_width_ps <= 0 || half_range_ps <= 0)
        throw BadBinning("bin width and half range must be positive");
    if ((2 * half_range_ps) % bin_width_ps != 0)
        throw BadBinning("bin width must divide the histogram span");

    Histogram h;
    h.origin_ps = offset_ps - half_range_ps;
    h.bin_width_ps = bin_width_ps;
    h.counts.assign(static_cast<std::size_t>(2 * half_range_ps / bin_width_ps), 0);

    std::size_t lo = 0, hi = 0;
    for (const TimeTag& ta : a) {
        const TimePs window_lo = ta.time + offset_ps - half_range_ps;
        const TimePs window_hi = ta.time + offset_ps + half_range_ps;
        while (lo < b.size() && b[lo].time < window_lo)
            ++lo;
        if (hi < lo)
            hi = lo;
        while (hi < b.size() && b[hi].time < window_hi)
            ++hi;
        for (std::size_t j = lo; j < hi; ++j) {
            const TimePs d = b[j].time - ta.time;
            ++h.counts[static_cast<std::size_t>((d - h.origin_ps) / bin_width_ps)];
        }
    }
    return h;
}

} // namespace qlink::coinc
