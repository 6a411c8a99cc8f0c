#include "qlink/sim/detector.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace qlink::sim {

void validate(const DetectorParams& p) {
    if (!(p.efficiency >= 0.0) || p.efficiency > 1.0)
        throw InvalidDetector("efficiency must lie in [0, 1]");
    if (!(p.jitter_sigma_ps >= 0.0) || !(p.dead_time_ps >= 0.0) || !(p.dark_rate_hz >= 0.0))
        throw InvalidDetector("jitter, dead time and dark rate must be non-negative");
}

namespace {

// m[i][k] = <e_i|U|k>: the k-th column of U projected on analyzer state e_i,
// for e_i = H, V, D, A in channel order.
void analyzer_rows(const Jones& u, std::complex<double> (&m)[4][2]) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    m[0][0] = u.a;
    m[0][1] = u.b;
    m[1][0] = u.c;
    m[1][1] = u.d;
    m[2][0] = (u.a + u.c) * inv_sqrt2;
    m[2][1] = (u.b + u.d) * inv_sqrt2;
    m[3][0] = (u.a - u.c) * inv_sqrt2;
    m[3][1] = (u.b - u.d) * inv_sqrt2;
}

} // namespace

std::array<double, 16> joint_channel_probabilities(const Jones& ua, const Jones& ub,
                                                   double visibility) {
    std::complex<double> ma[4][2], mb[4][2];
    analyzer_rows(ua, ma);
    analyzer_rows(ub, mb);

    // The pair is V |phi+><phi+| + (1 - V)/4 I, with |phi+> = (|00> + |11>)/sqrt(2).
    // Each side's passive basis choice contributes a factor 1/4 overall.
    const double noise = 0.25 * (1.0 - visibility);
    std::array<double, 16> p{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const std::complex<double> amp =
                (ma[i][0] * mb[j][0] + ma[i][1] * mb[j][1]) * 0.70710678118654752440;
            p[static_cast<std::size_t>(4 * i + j)] = 0.25 * (visibility * std::norm(amp) + noise);
        }
    }
    return p;
}

std::pair<int, int> sample_joint_channels(const Jones& ua, const Jones& ub,
                                          double visibility, double u) {
    const auto p = joint_channel_probabilities(ua, ub, visibility);
    double cum = 0.0;
    for (int k = 0; k < 16; ++k) {
        cum += p[static_cast<std::size_t>(k)];
        if (u < cum)
            return {k >> 2, k & 3};
    }
    return {3, 3}; // rounding tail
}

int sample_single_channel(double u) {
    return std::min(3, static_cast<int>(u * 4.0));
}

void apply_dead_time(TagStream& tags, double dead_time_ps) {
    if (dead_time_ps <= 0.0 || tags.empty())
        return;
    const TimePs dead = static_cast<TimePs>(std::llround(dead_time_ps));
    TimePs last[kChannelCount];
    std::fill(std::begin(last), std::end(last), std::numeric_limits<TimePs>::min() / 2);
    std::size_t keep = 0;
    for (const TimeTag& tag : tags) {
        if (tag.time - last[tag.channel] < dead)
            continue;
        last[tag.channel] = tag.time;
        tags[keep++] = tag;
    }
    tags.resize(keep);
}

} // namespace qlink::sim
