#include "qlink/coinc/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qlink::coinc {
namespace {

struct Candidate {
    TimePs residual;
    std::uint32_t index_a;
    std::uint32_t index_b;
};

} // namespace

std::vector<Coincidence> pair_coincidences(const TagStream& a, const TagStream& b,
                                           TimePs offset_ps, TimePs window_ps) {
    if (window_ps <= 0)
        throw InvalidWindow("coincidence window must be positive");

    std::vector<Candidate> candidates;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const TimePs center = a[i].time + offset_ps;
        while (lo < b.size() && 2 * (center - b[lo].time) > window_ps)
            ++lo;
        if (hi < lo)
            hi = lo;
        while (hi < b.size() && 2 * (b[hi].time - center) <= window_ps)
            ++hi;
        for (std::size_t j = lo; j < hi; ++j)
            candidates.push_back({b[j].time - center, static_cast<std::uint32_t>(i),
                                  static_cast<std::uint32_t>(j)});
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        const TimePs ax = std::llabs(x.residual), ay = std::llabs(y.residual);
        if (ax != ay)
            return ax < ay;
        if (x.index_a != y.index_a)
            return x.index_a < y.index_a;
        return x.index_b < y.index_b;
    });

    std::vector<bool> used_a(a.size()), used_b(b.size());
    std::vector<Coincidence> out;
    for (const Candidate& c : candidates) {
        if (used_a[c.index_a] || used_b[c.index_b])
            continue;
        used_a[c.index_a] = true;
        used_b[c.index_b] = true;
        out.push_back({a[c.index_a].time, b[c.index_b].time, a[c.index_a].channel,
                       b[c.index_b].channel});
    }
    std::sort(out.begin(), out.end(), [](const Coincidence& x, const Coincidence& y) {
        return x.time_a != y.time_a ? x.time_a < y.time_a : x.time_b < y.time_b;
    });
    return out;
}

Regime classify_regime(double length_a_km, double length_b_km) {
    return std::abs(length_a_km - length_b_km) >= 2.0 ? Regime::Asymmetric : Regime::Symmetric;
}

} // namespace qlink::coinc
