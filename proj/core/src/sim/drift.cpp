#include "qlink/sim/drift.hpp"

#include <cmath>

namespace qlink::sim {

DriftWalk::DriftWalk(const DriftParams& p, std::uint64_t seed, std::uint64_t stream)
    : params_(p), rng_(seed, stream) {
    if (!(p.rate_rad_per_sqrt_s >= 0.0))
        throw InvalidDrift("drift rate must be non-negative");
    if (!(p.step_s > 0.0))
        throw InvalidDrift("drift step must be positive");
    step_ps_ = static_cast<TimePs>(std::llround(p.step_s * 1e12));
    table_.push_back(Quaternion{});
}

void DriftWalk::extend(std::size_t steps) {
    // Each grid step composes a small rotation whose axis components are
    // independent Gaussians; the per-axis variance rate^2 * dt / 3 makes the
    // total squared angle per step rate^2 * dt.
    const double sigma = params_.rate_rad_per_sqrt_s * std::sqrt(params_.step_s / 3.0);
    while (table_.size() <= steps) {
        const double ex = rng_.normal() * sigma;
        const double ey = rng_.normal() * sigma;
        const double ez = rng_.normal() * sigma;
        const Quaternion dq = Quaternion{1.0, 0.5 * ex, 0.5 * ey, 0.5 * ez}.normalized();
        table_.push_back((table_.back() * dq).normalized());
    }
}

Quaternion DriftWalk::state_at_step(std::size_t step) {
    if (params_.rate_rad_per_sqrt_s == 0.0)
        return Quaternion{};
    extend(step);
    return table_[step];
}

Jones DriftWalk::at(TimePs t) {
    if (params_.rate_rad_per_sqrt_s == 0.0)
        return Jones::identity();
    if (t < 0)
        t = 0;
    return state_at_step(static_cast<std::size_t>(t / step_ps_)).to_jones();
}

} // namespace qlink::sim
