#include "qlink/sim/arm.hpp"

#include <cmath>

namespace qlink::sim {

ArmModel::ArmModel(const ArmParams& p) : params_(p) {
    if (!(p.length_km >= 0.0) || !(p.attenuation_db_per_km >= 0.0) || !(p.insertion_db >= 0.0))
        throw InvalidArm("lengths and losses must be non-negative");
    if (p.launch_fundamental < 0.0 || p.launch_higher < 0.0 ||
        p.launch_fundamental + p.launch_higher > 1.0 + 1e-12)
        throw InvalidArm("launch fractions must be non-negative and sum to at most 1");
    for (double f : {p.filter_fundamental, p.filter_higher})
        if (f < 0.0 || f > 1.0)
            throw InvalidArm("filter transmission must lie in [0, 1]");

    const double path_db = p.attenuation_db_per_km * p.length_km + p.insertion_db;
    const double path = std::pow(10.0, -path_db / 10.0);
    survival_[0] = path * p.filter_fundamental;
    survival_[1] = path * p.filter_higher;
    delay_[0] = static_cast<TimePs>(std::llround(p.delay_fundamental_ns_per_km * p.length_km * 1e3));
    delay_[1] = static_cast<TimePs>(std::llround(p.delay_higher_ns_per_km * p.length_km * 1e3));
}

ArmOutcome ArmModel::propagate(double u_mode, double u_survival) const {
    ArmOutcome out;
    if (u_mode < params_.launch_fundamental) {
        out.mode = 0;
    } else if (u_mode < params_.launch_fundamental + params_.launch_higher) {
        out.mode = 1;
    } else {
        return out; // failed to couple
    }
    if (u_survival >= survival_[out.mode])
        return ArmOutcome{false, out.mode, 0};
    out.survived = true;
    out.delay_ps = delay_[out.mode];
    return out;
}

} // namespace qlink::sim
