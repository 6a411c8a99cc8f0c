#pragma once

#include "qlink/error.hpp"
#include "qlink/sim/philox.hpp"
#include "qlink/sim/polarization.hpp"
#include "qlink/timetag.hpp"

#include <vector>

namespace qlink::sim {

QLINK_DEFINE_ERROR(InvalidDrift);

// Slow polarization wander of an installed fiber, modelled as a random walk
// on SU(2). The walk advances on a fixed time grid; the expected squared
// rotation angle accumulated over time T is rate^2 * T.
struct DriftParams {
    double rate_rad_per_sqrt_s = 0.0;
    double step_s = 0.1;
};

class DriftWalk {
public:
    DriftWalk(const DriftParams& p, std::uint64_t seed, std::uint64_t stream);

    // Unitary in effect at time t >= 0 (piecewise constant per grid step).
    Jones at(TimePs t);

    Quaternion state_at_step(std::size_t step);

private:
    void extend(std::size_t steps);

    DriftParams params_;
    SequenceRng rng_;
    TimePs step_ps_;
    std::vector<Quaternion> table_;
};

} // namespace qlink::sim
