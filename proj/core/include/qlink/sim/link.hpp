#pragma once

#include "qlink/error.hpp"
#include "qlink/sim/arm.hpp"
#include "qlink/sim/detector.hpp"
#include "qlink/sim/drift.hpp"
#include "qlink/sim/source.hpp"
#include "qlink/timetag.hpp"

#include <cstdint>

namespace qlink::sim {

QLINK_DEFINE_ERROR(InvalidLink);

struct LinkParams {
    SourceParams source;
    ArmParams arm_alice;
    ArmParams arm_bob;
    DetectorParams detector_alice;
    DetectorParams detector_bob;
    DriftParams drift_alice;
    DriftParams drift_bob;
    double duration_s = 1.0;
    std::uint64_t seed = 0;
};

struct LinkResult {
    TagStream alice;
    TagStream bob;
    std::uint64_t pairs_emitted = 0;
    std::uint64_t pairs_detected_both = 0; // before dead time
};

// Runs the full chain: Poisson pair emission, per-arm mode split / loss /
// delay / rotation, joint Born-rule detection, timing jitter, dark counts
// and per-channel dead time. Identical parameters and seed give identical
// tag streams.
LinkResult simulate_link(const LinkParams& params);

} // namespace qlink::sim
