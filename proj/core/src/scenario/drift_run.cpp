#include "qlink/scenario/drift_run.hpp"

#include "qlink/coinc/offset.hpp"
#include "qlink/coinc/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qlink::scenario {
namespace {

TagStream slice(const TagStream& tags, TimePs begin, TimePs end) {
    const auto lo = std::lower_bound(tags.begin(), tags.end(), begin,
                                     [](const TimeTag& t, TimePs v) { return t.time < v; });
    const auto hi = std::lower_bound(lo, tags.end(), end,
                                     [](const TimeTag& t, TimePs v) { return t.time < v; });
    return TagStream(lo, hi);
}

} // namespace

std::vector<DriftPoint> run_drift(const Scenario& s, double segment_s) {
    if (!(segment_s > 0.0))
        throw ConfigError("segment must be positive");
    if (s.duration_s < 2.0 * segment_s)
        throw ConfigError("duration must cover at least two segments");

    const sim::LinkResult sim = sim::simulate_link(build_link(s));
    const TimePs offset = coinc::find_offset(sim.alice, sim.bob, s.analysis.offset_search_ps,
                                             s.analysis.bin_width_ps);
    const TimePs window = applied_window_ps(s);
    const TimePs segment_ps = static_cast<TimePs>(std::llround(segment_s * 1e12));
    const auto segments = static_cast<std::size_t>(
        std::llround(s.duration_s * 1e12) / segment_ps);

    std::vector<DriftPoint> points;
    points.reserve(segments);
    for (std::size_t k = 0; k < segments; ++k) {
        const TimePs begin = static_cast<TimePs>(k) * segment_ps;
        const TimePs end = begin + segment_ps;
        // Pad one window so boundary pairs cannot straddle two segments
        // inconsistently; partners are matched inside the slice only.
        const TagStream a = slice(sim.alice, begin, end);
        const TagStream b = slice(sim.bob, begin - window, end + window);

        const auto pairs = coinc::pair_coincidences(a, b, offset, window);
        const auto sifted = qkd::sift(pairs);
        const auto vis = qkd::estimate_visibility(sifted, 10);
        const auto rate = qkd::secure_key_rate(
            static_cast<double>(pairs.size()) / segment_s, vis.visibility);

        DriftPoint p;
        p.t_s = (static_cast<double>(k) + 0.5) * segment_s;
        p.coincidences = pairs.size();
        p.qber = vis.qber;
        p.visibility = vis.visibility;
        p.secure_rate_hz = rate.secure_rate;
        points.push_back(p);
    }
    return points;
}

std::string format_drift(const std::vector<DriftPoint>& points) {
    std::string out = "t_s\tcoincidences\tqber\tvisibility\tsecure_rate_hz\n";
    char buf[192];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.10g\t%llu\t%.10g\t%.10g\t%.10g\n", p.t_s,
                      static_cast<unsigned long long>(p.coincidences), p.qber, p.visibility,
                      p.secure_rate_hz);
        out += buf;
    }
    return out;
}

} // namespace qlink::scenario
