#include "qlink/qkd/sift.hpp"

namespace qlink::qkd {

std::vector<SiftedPair> sift(const std::vector<coinc::Coincidence>& coincidences) {
    std::vector<SiftedPair> out;
    out.reserve(coincidences.size() / 2);
    for (const auto& c : coincidences) {
        const Basis ba = basis_of_channel(c.channel_a);
        const Basis bb = basis_of_channel(c.channel_b);
        if (ba != bb)
            continue;
        out.push_back({ba, bit_of_channel(c.channel_a), bit_of_channel(c.channel_b)});
    }
    return out;
}

VisibilityEstimate estimate_visibility(const std::vector<SiftedPair>& sifted,
                                       std::size_t min_samples) {
    if (sifted.size() < min_samples)
        throw InsufficientData("not enough sifted pairs for a visibility estimate");

    VisibilityEstimate est;
    est.samples = sifted.size();
    est.errors = 0;
    for (const auto& p : sifted)
        if (p.bit_a != p.bit_b)
            ++est.errors;
    est.qber = static_cast<double>(est.errors) / static_cast<double>(est.samples);
    est.visibility = 1.0 - 2.0 * est.qber;
    return est;
}

} // namespace qlink::qkd
