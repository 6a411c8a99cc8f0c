#include "qlink/coinc/offset.hpp"

#include "qlink/coinc/histogram.hpp"

#include <cmath>
#include <cstdlib>
#include <unordered_map>

namespace qlink::coinc {
namespace {

inline TimePs floor_div(TimePs num, TimePs den) {
    TimePs q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0)))
        --q;
    return q;
}

// (bin, multiplicity) pairs, ascending by bin.
std::vector<std::pair<TimePs, std::uint32_t>> binned(const TagStream& tags, TimePs width) {
    std::vector<std::pair<TimePs, std::uint32_t>> out;
    out.reserve(tags.size());
    for (const TimeTag& t : tags) {
        const TimePs bin = floor_div(t.time, width);
        if (!out.empty() && out.back().first == bin)
            ++out.back().second;
        else
            out.emplace_back(bin, 1);
    }
    return out;
}

} // namespace

TimePs find_offset(const TagStream& a, const TagStream& b, TimePs search_range_ps,
                   TimePs bin_width_ps) {
    if (bin_width_ps <= 0)
        throw BadBinning("bin width must be positive");
    if (search_range_ps < bin_width_ps)
        throw BadBinning("search range must cover at least one bin");
    if (a.empty() || b.empty())
        throw NoPeak("cannot correlate an empty stream");

    const auto bins_a = binned(a, bin_width_ps);
    const auto bins_b = binned(b, bin_width_ps);
    const TimePs max_shift = search_range_ps / bin_width_ps;

    std::unordered_map<TimePs, std::uint64_t> corr;
    std::size_t lo = 0, hi = 0;
    for (const auto& [bin_a, count_a] : bins_a) {
        while (lo < bins_b.size() && bins_b[lo].first < bin_a - max_shift)
            ++lo;
        if (hi < lo)
            hi = lo;
        while (hi < bins_b.size() && bins_b[hi].first <= bin_a + max_shift)
            ++hi;
        for (std::size_t j = lo; j < hi; ++j)
            corr[bins_b[j].first - bin_a] += static_cast<std::uint64_t>(count_a) * bins_b[j].second;
    }

    std::uint64_t total = 0;
    bool found = false;
    TimePs best_shift = 0;
    std::uint64_t best = 0;
    for (const auto& [shift, count] : corr) {
        total += count;
        const bool better =
            !found || count > best ||
            (count == best && (std::llabs(shift) < std::llabs(best_shift) ||
                               (std::llabs(shift) == std::llabs(best_shift) && shift < best_shift)));
        if (better) {
            found = true;
            best_shift = shift;
            best = count;
        }
    }

    const double background =
        static_cast<double>(total) / static_cast<double>(2 * max_shift + 1);
    if (!found ||
        static_cast<double>(best) < background + 5.0 * std::sqrt(std::max(background, 1.0)))
        throw NoPeak("no correlation bin clears the accidental background");
    return best_shift * bin_width_ps;
}

} // namespace qlink::coinc
