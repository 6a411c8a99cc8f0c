#pragma once

#include "qlink/error.hpp"
#include "qlink/sim/philox.hpp"
#include "qlink/timetag.hpp"

#include <vector>

namespace qlink::sim {

QLINK_DEFINE_ERROR(InvalidSource);

// Photon-pair source emitting a Werner state: visibility weights the
// maximally entangled component against white noise.
struct SourceParams {
    double pair_rate_hz = 0.0;
    double visibility = 1.0;
};

void validate(const SourceParams& p);

// Poisson emission times on [0, duration_ps), strictly from the given
// sequential stream so the emission record is independent of what happens
// downstream.
std::vector<TimePs> emission_times(const SourceParams& p, TimePs duration_ps,
                                   SequenceRng& rng);

} // namespace qlink::sim
