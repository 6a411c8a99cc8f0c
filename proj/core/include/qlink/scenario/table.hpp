#pragma once

#include "qlink/scenario/runner.hpp"

#include <filesystem>

namespace qlink::scenario {

struct TableRow {
    std::string scheme;
    double length_a_km = 0.0;
    double length_b_km = 0.0;
    double loss_db = 0.0;
    std::string filtering;
    double visibility_pct = 0.0;
    double coincidence_rate_hz = 0.0;
    double secure_rate_hz = 0.0;
};

TableRow table_row(const Scenario& s, const ScenarioResult& r);

// Runs the six bundled distribution scenarios found under scenario_dir and
// assembles the comparison table. The loss column is fiber attenuation plus
// filtering losses; the temporal part is measured from the run itself.
std::vector<TableRow> report_table(const std::filesystem::path& scenario_dir);

// The scenario files the table expects, in row order.
const std::vector<std::string>& table_scenario_files();

std::string format_table(const std::vector<TableRow>& rows);

} // namespace qlink::scenario
