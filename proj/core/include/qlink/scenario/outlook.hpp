#pragma once

#include "qlink/qkd/key_rate.hpp"
#include "qlink/scenario/config.hpp"

#include <filesystem>
#include <string>

namespace qlink::scenario {

// Analytic projection: take a measured local coincidence rate and ask what a
// bright source would deliver over deployed fiber once the filtering stages
// are in line. Fiber attenuation can be folded in or left out; leaving it
// out gives the budget of the filters alone.
struct OutlookParams {
    double local_coincidence_rate_hz = 0.0;
    double qber = 0.0;
    double length_a_km = 0.0;
    double length_b_km = 0.0;
    double attenuation_db_per_km = 0.0;
    double arm_filter_db = 0.0; // per-arm filtering budget, applied to both arms
    bool include_fiber_attenuation = false;
    qkd::SecurityParams security;
};

struct OutlookResult {
    double budget_db = 0.0; // total loss applied to the local rate
    double coincidence_rate_hz = 0.0;
    double secure_fraction = 0.0; // per sifted bit, after error correction
    double secure_rate_hz = 0.0;
};

OutlookResult project_outlook(const OutlookParams& p);

OutlookParams outlook_from_config(const ConfigNode& root);
OutlookParams load_outlook(const std::filesystem::path& config_path);

std::string format_outlook(const OutlookParams& p, const OutlookResult& r);

} // namespace qlink::scenario
