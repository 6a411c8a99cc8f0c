#pragma once

#include "qlink/coinc/histogram.hpp"
#include "qlink/coinc/peaks.hpp"
#include "qlink/qkd/key_rate.hpp"
#include "qlink/qkd/sift.hpp"
#include "qlink/scenario/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qlink::scenario {

struct ScenarioResult {
    TimePs offset_ps = 0; // refined to the dominant peak
    coinc::Histogram histogram;
    std::vector<coinc::Peak> peaks;
    std::uint64_t coincidences = 0;      // inside the applied window
    std::uint64_t coincidences_wide = 0; // inside the wide acceptance window
    double duration_s = 0.0;
    double singles_a_hz = 0.0;
    double singles_b_hz = 0.0;
    double temporal_loss_db = 0.0; // measured cost of the temporal filter
    qkd::VisibilityEstimate visibility;
    qkd::KeyRateResult key_rate;
};

// Offset search, histogram, peak finding, pairing with the configured
// window, sifting and key-rate evaluation on two tag streams.
ScenarioResult analyze_tags(const Scenario& s, const TagStream& a, const TagStream& b);

// Simulate the link and run the analysis above. Same config and seed give
// identical results, byte for byte in the written bundle.
ScenarioResult run_scenario(const Scenario& s);

// Artifact writing: summary.tsv, histogram.tsv, peaks.tsv under dir,
// restricted to the scenario's outputs list when one is set.
void write_bundle(const std::filesystem::path& dir, const Scenario& s, const ScenarioResult& r);

std::string format_summary(const Scenario& s, const ScenarioResult& r);

} // namespace qlink::scenario
