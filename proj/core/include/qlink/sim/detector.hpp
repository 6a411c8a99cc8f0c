#pragma once

#include "qlink/error.hpp"
#include "qlink/sim/polarization.hpp"
#include "qlink/timetag.hpp"

#include <array>
#include <utility>

namespace qlink::sim {

QLINK_DEFINE_ERROR(InvalidDetector);

struct DetectorParams {
    double efficiency = 0.70;
    double jitter_sigma_ps = 250.0;
    double dead_time_ps = 50'000.0;
    double dark_rate_hz = 0.0; // per channel
};

void validate(const DetectorParams& p);

// Joint click probabilities P(i, j) for a Werner pair analyzed behind local
// unitaries ua and ub, over the 4x4 channel grid (flattened row-major, Alice
// major). Channels follow the convention in timetag.hpp; the passive 50/50
// basis split is folded in, so the 16 entries sum to 1.
std::array<double, 16> joint_channel_probabilities(const Jones& ua, const Jones& ub,
                                                   double visibility);

// Draw a joint channel pair from the distribution above with one deviate.
std::pair<int, int> sample_joint_channels(const Jones& ua, const Jones& ub,
                                          double visibility, double u);

// When the partner photon is lost the surviving photon is maximally mixed,
// so its channel is uniform.
int sample_single_channel(double u);

// Per-channel dead time on a time-sorted stream.
void apply_dead_time(TagStream& tags, double dead_time_ps);

} // namespace qlink::sim
