#include "qlink/scenario/table.hpp"

#include "qlink/coinc/pairing.hpp"

#include <cstdio>

namespace qlink::scenario {

namespace {

std::string scheme_label(const Scenario& s) {
    if (s.arm_a.fiber_label.empty() && s.arm_b.fiber_label.empty()) return "Local";
    switch (coinc::classify_regime(s.arm_a.length_km, s.arm_b.length_km)) {
    case coinc::Regime::Asymmetric: return "Asymmetric";
    case coinc::Regime::Symmetric: return "Symmetric";
    }
    return "Unknown";
}

std::string filtering_label(const FilterSpec& f) {
    if (f.temporal_window_ps && f.spatial) return "Temporal+spatial";
    if (f.temporal_window_ps) return "Temporal";
    if (f.spatial) return "Spatial";
    return "None";
}

} // namespace

TableRow table_row(const Scenario& s, const ScenarioResult& r) {
    TableRow row;
    row.scheme = scheme_label(s);
    row.length_a_km = s.arm_a.length_km;
    row.length_b_km = s.arm_b.length_km;
    row.loss_db = arm_budget_db(s.arm_a, s.filters.spatial) +
                  arm_budget_db(s.arm_b, s.filters.spatial) + r.temporal_loss_db;
    row.filtering = filtering_label(s.filters);
    row.visibility_pct = 100.0 * r.visibility.visibility;
    row.coincidence_rate_hz =
        static_cast<double>(r.coincidences) / r.duration_s;
    row.secure_rate_hz = r.key_rate.secure_rate;
    return row;
}

const std::vector<std::string>& table_scenario_files() {
    static const std::vector<std::string> files = {
        "asym-2km.scn",          "asym-2km-temporal.scn", "asym-5km-temporal.scn",
        "sym-2-2.scn",           "sym-2-2-temporal.scn",  "sym-2-2-tempspat.scn",
    };
    return files;
}

std::vector<TableRow> report_table(const std::filesystem::path& scenario_dir) {
    std::vector<TableRow> rows;
    for (const auto& name : table_scenario_files()) {
        Scenario s = load_scenario(scenario_dir / name);
        ScenarioResult r = run_scenario(s);
        rows.push_back(table_row(s, r));
    }
    return rows;
}

std::string format_table(const std::vector<TableRow>& rows) {
    std::string out = "scheme\td_a_km\td_b_km\tloss_db\tfiltering\t"
                      "visibility_pct\tcoincidences_per_s\tsecure_bits_per_s\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s\t%.3g\t%.3g\t%.2f\t%s\t%.1f\t%.0f\t%.0f\n",
                      r.scheme.c_str(), r.length_a_km, r.length_b_km, r.loss_db,
                      r.filtering.c_str(), r.visibility_pct, r.coincidence_rate_hz,
                      r.secure_rate_hz);
        out += buf;
    }
    return out;
}

} // namespace qlink::scenario
