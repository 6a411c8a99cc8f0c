#include "qlink/scenario/outlook.hpp"

#include <cmath>
#include <cstdio>

namespace qlink::scenario {

OutlookResult project_outlook(const OutlookParams& p) {
    if (!(p.local_coincidence_rate_hz > 0.0))
        throw ConfigError("outlook: local coincidence rate must be positive");
    if (!(p.qber >= 0.0 && p.qber < 0.5))
        throw ConfigError("outlook: qber must lie in [0, 0.5)");
    if (p.length_a_km < 0.0 || p.length_b_km < 0.0 || p.attenuation_db_per_km < 0.0 ||
        p.arm_filter_db < 0.0)
        throw ConfigError("outlook: lengths and losses must be non-negative");

    OutlookResult r;
    r.budget_db = 2.0 * p.arm_filter_db;
    if (p.include_fiber_attenuation)
        r.budget_db += p.attenuation_db_per_km * (p.length_a_km + p.length_b_km);
    r.coincidence_rate_hz =
        p.local_coincidence_rate_hz * std::pow(10.0, -r.budget_db / 10.0);
    const double h = qkd::binary_entropy(p.qber);
    r.secure_fraction = std::max(0.0, 1.0 - (1.0 + p.security.ec_inefficiency) * h);
    r.secure_rate_hz =
        p.security.sifting_factor * r.coincidence_rate_hz * r.secure_fraction;
    return r;
}

OutlookParams outlook_from_config(const ConfigNode& root) {
    const ConfigNode& b = root.block("projection");
    OutlookParams p;
    p.local_coincidence_rate_hz = b.quantity("local_coincidence_rate", Dim::RateHz);
    p.qber = b.number("qber");
    p.length_a_km = b.quantity("length_a", Dim::LengthKm);
    p.length_b_km = b.quantity("length_b", Dim::LengthKm);
    p.attenuation_db_per_km = b.quantity("attenuation", Dim::LossDbPerKm);
    p.arm_filter_db = b.quantity("arm_filter_loss", Dim::LossDb);
    if (b.has("include_fiber_attenuation"))
        p.include_fiber_attenuation = b.flag("include_fiber_attenuation");
    return p;
}

OutlookParams load_outlook(const std::filesystem::path& config_path) {
    return outlook_from_config(parse_config_file(config_path));
}

std::string format_outlook(const OutlookParams& p, const OutlookResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "local_rate_hz\tqber\tbudget_db\tfiber_included\t"
                  "projected_coincidence_hz\tsecure_fraction\tsecure_rate_hz\n"
                  "%.10g\t%.10g\t%.4f\t%s\t%.10g\t%.6f\t%.10g\n",
                  p.local_coincidence_rate_hz, p.qber, r.budget_db,
                  p.include_fiber_attenuation ? "yes" : "no",
                  r.coincidence_rate_hz, r.secure_fraction, r.secure_rate_hz);
    return buf;
}

} // namespace qlink::scenario
