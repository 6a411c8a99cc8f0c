#pragma once

#include "qlink/scenario/config.hpp"
#include "qlink/sim/link.hpp"
#include "qlink/timetag.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qlink::scenario {

// Per-arm description kept in per-km form so a sweep can rebuild the arm at
// a different length without reloading the config.
struct ArmBuild {
    std::string fiber_label; // empty: no fiber, photon goes straight to the analyzer
    double length_km = 0.0;
    double attenuation_db_per_km = 0.0;
    double delay_fundamental_ns_per_km = 0.0;
    double delay_higher_ns_per_km = 0.0;
    bool two_mode = false;
    double launch_fundamental = 1.0;
    double launch_higher = 0.0;
    double rotation_fundamental_rad = 0.0;
    double rotation_higher_rad = 0.0;
    double insertion_db = 0.0;
    // Mode-stripping stage, applied only when the scenario's spatial filter
    // is switched on.
    bool has_spatial_stage = false;
    double spatial_fundamental = 1.0;
    double spatial_higher = 1.0;
    double spatial_insertion_db = 0.0;
};

struct FilterSpec {
    std::optional<TimePs> temporal_window_ps;
    bool spatial = false;
};

struct AnalysisParams {
    TimePs bin_width_ps = 100;
    TimePs half_range_ps = 20'000;
    TimePs offset_search_ps = 1'000'000;
    double peak_threshold_sigma = 8.0;
    TimePs wide_window_ps = 30'000; // acceptance window when no temporal filter is set
    double segment_s = 20.0;
};

struct Scenario {
    std::string name;
    sim::SourceParams source;
    ArmBuild arm_a, arm_b;
    sim::DetectorParams detectors;
    double drift_rate_rad_per_sqrt_s = 0.0;
    double duration_s = 0.0;
    std::uint64_t seed = 0;
    FilterSpec filters;
    AnalysisParams analysis;
    std::vector<std::string> outputs; // empty: write every artifact
};

// The coincidence window the analysis applies, honouring the temporal filter.
TimePs applied_window_ps(const Scenario& s);

sim::ArmParams build_arm(const ArmBuild& arm, bool spatial_on);
sim::LinkParams build_link(const Scenario& s);

// Loss bookkeeping for table reports: attenuation and static insertions of
// one arm in dB, plus the spatial stage when it is active. Launch coupling
// and temporal-filter loss are not listed; the latter is measured from data.
double arm_budget_db(const ArmBuild& arm, bool spatial_on);

Scenario load_scenario(const std::filesystem::path& config_path);
Scenario scenario_from_config(const ConfigNode& root);

} // namespace qlink::scenario
