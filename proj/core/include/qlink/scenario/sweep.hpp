#pragma once

#include "qlink/scenario/runner.hpp"

namespace qlink::scenario {

struct SweepPoint {
    double length_km = 0.0;
    double visibility = 0.0;
    double qber = 0.0;
    double coincidence_rate_hz = 0.0;
    double secure_rate_hz = 0.0;
};

// One run per length, with arm A's fiber length swapped in and arm B left at
// zero; the base scenario supplies everything else.
std::vector<SweepPoint> run_sweep(const Scenario& base, const std::vector<double>& lengths_km);

std::string format_sweep(const std::vector<SweepPoint>& points);

} // namespace qlink::scenario
