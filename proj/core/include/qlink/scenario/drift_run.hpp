#pragma once

#include "qlink/scenario/runner.hpp"

namespace qlink::scenario {

struct DriftPoint {
    double t_s = 0.0; // segment midpoint
    std::uint64_t coincidences = 0;
    double qber = 0.0;
    double visibility = 0.0;
    double secure_rate_hz = 0.0;
};

// One simulation of the full duration, analyzed per time segment. The
// offset search runs once on the whole streams; polarization drift moves
// error rates, not arrival times.
std::vector<DriftPoint> run_drift(const Scenario& s, double segment_s);

std::string format_drift(const std::vector<DriftPoint>& points);

} // namespace qlink::scenario
