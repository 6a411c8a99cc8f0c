#include "qlink/sim/link.hpp"

#include <algorithm>
#include <cmath>

namespace qlink::sim {
namespace {

// Stream ids within one simulation seed. Pair-indexed draws live on one lane
// so every pair's fate depends only on its own slots; sequential processes
// get lanes of their own.
enum Stream : std::uint64_t {
    kEmission = 0,
    kPairSlots = 1,
    kDarksAlice = 2,
    kDarksBob = 3,
    kDriftAlice = 4,
    kDriftBob = 5,
};

// Slots within a pair's block of 16 lane indices.
enum Slot : std::uint64_t {
    kModeA = 0,
    kSurvivalA = 1,
    kModeB = 2,
    kSurvivalB = 3,
    kJointOutcome = 4,
    kEffA = 5,
    kEffB = 6,
    kJitterA = 7,
    kJitterB = 8,
};

constexpr std::uint64_t kSlotsPerPair = 16;

void append_darks(TagStream& tags, SequenceRng& rng, double rate_per_channel_hz,
                  TimePs duration_ps) {
    if (rate_per_channel_hz <= 0.0)
        return;
    const double mean_gap_ps = 1e12 / (kChannelCount * rate_per_channel_hz);
    TimePs t = 0;
    for (;;) {
        t += static_cast<TimePs>(std::llround(-std::log(1.0 - rng.uniform()) * mean_gap_ps));
        if (t >= duration_ps)
            break;
        const auto ch = static_cast<std::uint8_t>(
            std::min<int>(kChannelCount - 1, static_cast<int>(rng.uniform() * kChannelCount)));
        tags.push_back({t, ch});
    }
}

void sort_tags(TagStream& tags) {
    std::sort(tags.begin(), tags.end(), [](const TimeTag& a, const TimeTag& b) {
        return a.time != b.time ? a.time < b.time : a.channel < b.channel;
    });
}

} // namespace

LinkResult simulate_link(const LinkParams& params) {
    validate(params.source);
    validate(params.detector_alice);
    validate(params.detector_bob);
    if (!(params.duration_s > 0.0))
        throw InvalidLink("duration must be positive");

    const ArmModel arm_a(params.arm_alice);
    const ArmModel arm_b(params.arm_bob);

    SequenceRng emit_rng(params.seed, kEmission);
    const RandomLane pair_lane(params.seed, kPairSlots);
    SequenceRng dark_rng_a(params.seed, kDarksAlice);
    SequenceRng dark_rng_b(params.seed, kDarksBob);
    DriftWalk drift_a(params.drift_alice, params.seed, kDriftAlice);
    DriftWalk drift_b(params.drift_bob, params.seed, kDriftBob);

    const TimePs duration_ps = static_cast<TimePs>(std::llround(params.duration_s * 1e12));
    const double mean_gap_ps = 1e12 / params.source.pair_rate_hz;

    LinkResult result;
    const double expected_pairs = params.duration_s * params.source.pair_rate_hz;
    result.alice.reserve(static_cast<std::size_t>(expected_pairs * arm_a.survival(0)) + 1024);
    result.bob.reserve(static_cast<std::size_t>(expected_pairs * arm_b.survival(0)) + 1024);

    TimePs t = 0;
    for (std::uint64_t pair = 0;; ++pair) {
        t += static_cast<TimePs>(std::llround(-std::log(1.0 - emit_rng.uniform()) * mean_gap_ps));
        if (t >= duration_ps)
            break;
        result.pairs_emitted = pair + 1;

        const std::uint64_t base = pair * kSlotsPerPair;
        const ArmOutcome out_a =
            arm_a.propagate(pair_lane.uniform(base + kModeA), pair_lane.uniform(base + kSurvivalA));
        if (!out_a.survived) {
            // Skip Bob's draws only when they cannot matter; his slots are
            // still his own, so the fast path never shifts anyone's deviates.
            const ArmOutcome out_b = arm_b.propagate(pair_lane.uniform(base + kModeB),
                                                     pair_lane.uniform(base + kSurvivalB));
            if (!out_b.survived)
                continue;
            if (pair_lane.uniform(base + kEffB) >= params.detector_bob.efficiency)
                continue;
            const int ch = sample_single_channel(pair_lane.uniform(base + kJointOutcome));
            const TimePs tb = t + out_b.delay_ps +
                              static_cast<TimePs>(std::llround(pair_lane.normal(base + kJitterB) *
                                                               params.detector_bob.jitter_sigma_ps));
            if (tb >= 0)
                result.bob.push_back({tb, static_cast<std::uint8_t>(ch)});
            continue;
        }

        const ArmOutcome out_b = arm_b.propagate(pair_lane.uniform(base + kModeB),
                                                 pair_lane.uniform(base + kSurvivalB));
        const bool fire_a = pair_lane.uniform(base + kEffA) < params.detector_alice.efficiency;
        const bool fire_b =
            out_b.survived && pair_lane.uniform(base + kEffB) < params.detector_bob.efficiency;
        if (!fire_a && !fire_b)
            continue;

        int ch_a = 0, ch_b = 0;
        if (fire_a && fire_b) {
            const Jones ua = drift_a.at(t) * arm_a.mode_rotation(out_a.mode);
            const Jones ub = drift_b.at(t) * arm_b.mode_rotation(out_b.mode);
            const auto [ia, ib] = sample_joint_channels(ua, ub, params.source.visibility,
                                                        pair_lane.uniform(base + kJointOutcome));
            ch_a = ia;
            ch_b = ib;
            ++result.pairs_detected_both;
        } else {
            ch_a = ch_b = sample_single_channel(pair_lane.uniform(base + kJointOutcome));
        }

        if (fire_a) {
            const TimePs ta = t + out_a.delay_ps +
                              static_cast<TimePs>(std::llround(pair_lane.normal(base + kJitterA) *
                                                               params.detector_alice.jitter_sigma_ps));
            if (ta >= 0)
                result.alice.push_back({ta, static_cast<std::uint8_t>(ch_a)});
        }
        if (fire_b) {
            const TimePs tb = t + out_b.delay_ps +
                              static_cast<TimePs>(std::llround(pair_lane.normal(base + kJitterB) *
                                                               params.detector_bob.jitter_sigma_ps));
            if (tb >= 0)
                result.bob.push_back({tb, static_cast<std::uint8_t>(ch_b)});
        }
    }

    append_darks(result.alice, dark_rng_a, params.detector_alice.dark_rate_hz, duration_ps);
    append_darks(result.bob, dark_rng_b, params.detector_bob.dark_rate_hz, duration_ps);

    sort_tags(result.alice);
    sort_tags(result.bob);
    apply_dead_time(result.alice, params.detector_alice.dead_time_ps);
    apply_dead_time(result.bob, params.detector_bob.dead_time_ps);
    return result;
}

} // namespace qlink::sim
