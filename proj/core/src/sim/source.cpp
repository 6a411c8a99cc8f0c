#include "qlink/sim/source.hpp"

#include <cmath>

namespace qlink::sim {

void validate(const SourceParams& p) {
    if (!(p.pair_rate_hz > 0.0))
        throw InvalidSource("pair rate must be positive");
    if (!(std::abs(p.visibility) <= 1.0))
        throw InvalidSource("source visibility must lie in [-1, 1]");
}

std::vector<TimePs> emission_times(const SourceParams& p, TimePs duration_ps,
                                   SequenceRng& rng) {
    validate(p);
    std::vector<TimePs> times;
    if (duration_ps <= 0)
        return times;
    const double mean_gap_ps = 1e12 / p.pair_rate_hz;
    times.reserve(static_cast<std::size_t>(static_cast<double>(duration_ps) / mean_gap_ps * 1.1) + 16);
    TimePs t = 0;
    for (;;) {
        const double gap = -std::log(1.0 - rng.uniform()) * mean_gap_ps;
        t += static_cast<TimePs>(std::llround(gap));
        if (t >= duration_ps)
            break;
        times.push_back(t);
    }
    return times;
}

} // namespace qlink::sim
