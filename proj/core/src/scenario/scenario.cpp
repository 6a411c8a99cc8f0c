#include "qlink/scenario/scenario.hpp"

#include "qlink/fiber/calibrate.hpp"
#include "qlink/fiber/mode_solver.hpp"

#include <cmath>
#include <map>

namespace qlink::scenario {
namespace {

// Splice-quality presets: power coupled into (LP01, LP11). A deliberately
// offset splice excites the higher-order mode strongly; a normal one leaks
// only a few percent into it.
constexpr double kExcitedLaunch[2] = {0.80, 0.18};
constexpr double kNormalLaunch[2] = {0.95, 0.03};

struct FiberInfo {
    fiber::FiberSpec spec;
    std::vector<fiber::ModeSolution> modes;
    double attenuation_db_per_km = 0.0;
};

fiber::FiberSpec fiber_from_block(const ConfigNode& node) {
    if (node.has("calibrated")) {
        const std::string which = node.word("calibrated");
        fiber::FiberSpec spec;
        if (which == "telecom")
            spec = fiber::calibrated_telecom();
        else if (which == "sm800")
            spec = fiber::calibrated_sm800();
        else
            node.fail(node.entry("calibrated").line,
                      "'calibrated' must be telecom or sm800");
        spec.name = node.label();
        return spec;
    }
    fiber::FiberSpec spec;
    spec.name = node.label();
    spec.core_radius_um = node.quantity("core_radius", Dim::LengthUm);
    spec.core_index = node.number("core_index");
    spec.cladding_index = node.number("cladding_index");
    if (const ConfigNode* att = node.find_block("attenuation")) {
        for (const auto& e : att->entries()) {
            double nm = 0.0;
            char* end = nullptr;
            nm = std::strtod(e.key.c_str(), &end);
            if (end != e.key.c_str() + e.key.size() || e.key_unit != "nm")
                att->fail(e.line, "attenuation entries must look like '<wavelength> nm = <x> dB/km'");
            if (e.value_tokens.size() != 2 || e.value_tokens[1] != "dB/km")
                att->fail(e.line, "attenuation values must carry dB/km");
            spec.attenuation_db_per_km[nm] = std::strtod(e.value_tokens[0].c_str(), nullptr);
        }
    }
    return spec;
}

std::map<std::string, FiberInfo> resolve_fibers(const ConfigNode& root, double wavelength_nm) {
    std::map<std::string, FiberInfo> out;
    for (const ConfigNode* node : root.blocks("fiber")) {
        if (node->label().empty())
            node->fail(node->line(), "fiber block needs a label");
        if (out.count(node->label()))
            node->fail(node->line(), "duplicate fiber label '" + node->label() + "'");
        FiberInfo info;
        info.spec = fiber_from_block(*node);
        try {
            info.spec.validate();
            info.modes = fiber::solve_modes(info.spec, wavelength_nm);
            info.attenuation_db_per_km =
                fiber::attenuation_db_per_km(info.spec, wavelength_nm);
        } catch (const Error& e) {
            node->fail(node->line(), std::string("fiber '") + node->label() + "': " + e.what());
        }
        out.emplace(node->label(), std::move(info));
    }
    return out;
}

ArmBuild load_arm(const ConfigNode& node, const std::map<std::string, FiberInfo>& fibers,
                  bool spatial_requested) {
    ArmBuild arm;
    const std::string fiber_label = node.maybe_word("fiber").value_or("none");
    if (fiber_label != "none") {
        const auto it = fibers.find(fiber_label);
        if (it == fibers.end())
            node.fail(node.entry("fiber").line, "unknown fiber '" + fiber_label + "'");
        const FiberInfo& info = it->second;
        arm.fiber_label = fiber_label;
        arm.length_km = node.quantity("length", Dim::LengthKm);
        arm.attenuation_db_per_km = info.attenuation_db_per_km;
        arm.two_mode = info.modes.size() >= 2;
        arm.delay_fundamental_ns_per_km = info.modes[0].group_delay_ns_per_km;
        arm.delay_higher_ns_per_km =
            arm.two_mode ? info.modes[1].group_delay_ns_per_km : 0.0;

        if (const ConfigNode* lb = node.find_block("launch")) {
            arm.launch_fundamental = lb->number("fundamental");
            arm.launch_higher = lb->number("higher");
        } else {
            const std::string launch = node.maybe_word("launch").value_or("normal");
            if (launch == "excited") {
                arm.launch_fundamental = kExcitedLaunch[0];
                arm.launch_higher = kExcitedLaunch[1];
            } else if (launch == "normal") {
                arm.launch_fundamental = kNormalLaunch[0];
                arm.launch_higher = kNormalLaunch[1];
            } else {
                node.fail(node.entry("launch").line, "'launch' must be excited or normal");
            }
        }
        if (arm.launch_fundamental < 0.0 || arm.launch_higher < 0.0 ||
            arm.launch_fundamental + arm.launch_higher > 1.0)
            node.fail(node.line(), "launch fractions must be non-negative and sum to at most 1");
    } else if (node.has("length")) {
        node.fail(node.entry("length").line, "length given but no fiber set");
    }

    arm.rotation_fundamental_rad =
        node.maybe_quantity("rotation_fundamental", Dim::AngleRad).value_or(0.0);
    arm.rotation_higher_rad = node.maybe_quantity("rotation_higher", Dim::AngleRad).value_or(0.0);
    arm.insertion_db = node.maybe_quantity("insertion", Dim::LossDb).value_or(0.0);

    if (const ConfigNode* st = node.find_block("spatial_filter")) {
        arm.has_spatial_stage = true;
        arm.spatial_fundamental = st->number("fundamental");
        arm.spatial_higher = st->number("higher");
        arm.spatial_insertion_db = st->maybe_quantity("insertion", Dim::LossDb).value_or(0.0);
        if (arm.spatial_fundamental < 0.0 || arm.spatial_fundamental > 1.0 ||
            arm.spatial_higher < 0.0 || arm.spatial_higher > 1.0)
            st->fail(st->line(), "spatial filter transmissions must lie in [0, 1]");
    } else if (spatial_requested && arm.two_mode) {
        node.fail(node.line(),
                  "spatial filter enabled but this two-mode arm has no spatial_filter stage");
    }
    return arm;
}

} // namespace

TimePs applied_window_ps(const Scenario& s) {
    return s.filters.temporal_window_ps.value_or(s.analysis.wide_window_ps);
}

sim::ArmParams build_arm(const ArmBuild& arm, bool spatial_on) {
    sim::ArmParams p;
    p.length_km = arm.length_km;
    p.attenuation_db_per_km = arm.attenuation_db_per_km;
    p.insertion_db = arm.insertion_db;
    p.launch_fundamental = arm.launch_fundamental;
    p.launch_higher = arm.two_mode ? arm.launch_higher : 0.0;
    p.delay_fundamental_ns_per_km = arm.delay_fundamental_ns_per_km;
    p.delay_higher_ns_per_km = arm.delay_higher_ns_per_km;
    p.rotation_fundamental = sim::Jones::rotation(arm.rotation_fundamental_rad);
    p.rotation_higher = sim::Jones::rotation(arm.rotation_higher_rad);
    if (spatial_on && arm.has_spatial_stage) {
        p.insertion_db += arm.spatial_insertion_db;
        p.filter_fundamental = arm.spatial_fundamental;
        p.filter_higher = arm.spatial_higher;
    }
    return p;
}

sim::LinkParams build_link(const Scenario& s) {
    sim::LinkParams link;
    link.source = s.source;
    link.arm_alice = build_arm(s.arm_a, s.filters.spatial);
    link.arm_bob = build_arm(s.arm_b, s.filters.spatial);
    link.detector_alice = s.detectors;
    link.detector_bob = s.detectors;
    link.drift_alice.rate_rad_per_sqrt_s = s.drift_rate_rad_per_sqrt_s;
    link.drift_bob.rate_rad_per_sqrt_s = s.drift_rate_rad_per_sqrt_s;
    link.duration_s = s.duration_s;
    link.seed = s.seed;
    return link;
}

double arm_budget_db(const ArmBuild& arm, bool spatial_on) {
    double db = arm.attenuation_db_per_km * arm.length_km + arm.insertion_db;
    if (spatial_on && arm.has_spatial_stage) {
        // The stage's rate loss on this arm: coupled power is reweighted by
        // the per-mode transmissions, plus its own insertion loss.
        const double coupled = arm.launch_fundamental + (arm.two_mode ? arm.launch_higher : 0.0);
        const double through = arm.launch_fundamental * arm.spatial_fundamental +
                               (arm.two_mode ? arm.launch_higher * arm.spatial_higher : 0.0);
        if (coupled > 0.0 && through > 0.0)
            db += -10.0 * std::log10(through / coupled);
        db += arm.spatial_insertion_db;
    }
    return db;
}

Scenario scenario_from_config(const ConfigNode& root) {
    Scenario s;
    s.name = root.word("name");
    s.seed = root.integer("seed");
    s.duration_s = root.quantity("duration", Dim::TimeS);
    if (!(s.duration_s > 0.0))
        root.fail(root.entry("duration").line, "duration must be positive");

    const double wavelength_nm =
        root.maybe_quantity("wavelength", Dim::LengthNm).value_or(810.0);

    const ConfigNode& source = root.block("source");
    s.source.pair_rate_hz = source.quantity("pair_rate", Dim::RateHz);
    s.source.visibility = source.number("visibility");
    if (!(s.source.pair_rate_hz > 0.0))
        source.fail(source.entry("pair_rate").line, "pair_rate must be positive");
    if (std::abs(s.source.visibility) > 1.0)
        source.fail(source.entry("visibility").line, "visibility must lie in [-1, 1]");

    if (const ConfigNode* filters = root.find_block("filters")) {
        s.filters.temporal_window_ps = filters->maybe_time_ps("temporal");
        if (s.filters.temporal_window_ps && *s.filters.temporal_window_ps <= 0)
            filters->fail(filters->entry("temporal").line, "temporal window must be positive");
        if (filters->has("spatial"))
            s.filters.spatial = filters->flag("spatial");
    }

    const auto fibers = resolve_fibers(root, wavelength_nm);
    s.arm_a = load_arm(root.block("arm_a"), fibers, s.filters.spatial);
    s.arm_b = load_arm(root.block("arm_b"), fibers, s.filters.spatial);

    if (const ConfigNode* det = root.find_block("detectors")) {
        s.detectors.efficiency = det->maybe_number("efficiency").value_or(0.70);
        s.detectors.jitter_sigma_ps =
            static_cast<double>(det->maybe_time_ps("jitter").value_or(250));
        s.detectors.dead_time_ps =
            static_cast<double>(det->maybe_time_ps("dead_time").value_or(50'000));
        s.detectors.dark_rate_hz = det->maybe_quantity("dark_rate", Dim::RateHz).value_or(0.0);
        if (s.detectors.efficiency < 0.0 || s.detectors.efficiency > 1.0)
            det->fail(det->entry("efficiency").line, "efficiency must lie in [0, 1]");
    }

    if (const ConfigNode* drift = root.find_block("drift"))
        s.drift_rate_rad_per_sqrt_s = drift->quantity("rate", Dim::DriftRate);

    if (const ConfigNode* an = root.find_block("analysis")) {
        s.analysis.bin_width_ps = an->maybe_time_ps("bin_width").value_or(s.analysis.bin_width_ps);
        s.analysis.half_range_ps =
            an->maybe_time_ps("half_range").value_or(s.analysis.half_range_ps);
        s.analysis.offset_search_ps =
            an->maybe_time_ps("offset_search").value_or(s.analysis.offset_search_ps);
        s.analysis.peak_threshold_sigma =
            an->maybe_number("peak_threshold").value_or(s.analysis.peak_threshold_sigma);
        s.analysis.wide_window_ps =
            an->maybe_time_ps("wide_window").value_or(s.analysis.wide_window_ps);
        s.analysis.segment_s =
            an->maybe_quantity("segment", Dim::TimeS).value_or(s.analysis.segment_s);
    }

    if (root.has("outputs"))
        s.outputs = root.words("outputs");
    return s;
}

Scenario load_scenario(const std::filesystem::path& config_path) {
    return scenario_from_config(parse_config_file(config_path));
}

} // namespace qlink::scenario
