#include "qlink/scenario/sweep.hpp"

#include <cstdio>

namespace qlink::scenario {

std::vector<SweepPoint> run_sweep(const Scenario& base, const std::vector<double>& lengths_km) {
    if (lengths_km.size() < 2)
        throw ConfigError("sweep needs at least two lengths");
    if (base.arm_a.fiber_label.empty())
        throw ConfigError("sweep base scenario must give arm_a a fiber");
    for (const double km : lengths_km)
        if (!(km > 0.0))
            throw ConfigError("sweep lengths must be positive");

    std::vector<SweepPoint> points;
    points.reserve(lengths_km.size());
    for (const double km : lengths_km) {
        Scenario s = base;
        s.name = base.name + "@" + std::to_string(km) + "km";
        s.arm_a.length_km = km;
        s.arm_b.length_km = 0.0;
        const ScenarioResult r = run_scenario(s);
        points.push_back({km, r.visibility.visibility, r.visibility.qber,
                          r.key_rate.coincidence_rate, r.key_rate.secure_rate});
    }
    return points;
}

std::string format_sweep(const std::vector<SweepPoint>& points) {
    std::string out = "length_km\tvisibility\tqber\tcoincidence_rate_hz\tsecure_rate_hz\n";
    char buf[192];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.10g\t%.10g\t%.10g\t%.10g\t%.10g\n", p.length_km,
                      p.visibility, p.qber, p.coincidence_rate_hz, p.secure_rate_hz);
        out += buf;
    }
    return out;
}

} // namespace qlink::scenario
