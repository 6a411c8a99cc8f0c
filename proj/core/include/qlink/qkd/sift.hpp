#pragma once

#include <cstdint>
#include <vector>

#include "qlink/coinc/pairing.hpp"
#include "qlink/error.hpp"

namespace qlink::qkd {

QLINK_DEFINE_ERROR(InsufficientData);

enum class Basis : std::uint8_t { Rectilinear = 0, Diagonal = 1 };

inline Basis basis_of_channel(std::uint8_t channel) {
    return channel < 2 ? Basis::Rectilinear : Basis::Diagonal;
}

inline int bit_of_channel(std::uint8_t channel) {
    return channel & 1;
}

struct SiftedPair {
    Basis basis = Basis::Rectilinear;
    std::uint8_t bit_a = 0;
    std::uint8_t bit_b = 0;
};

// Keeps coincidences where both parties measured in the same basis.
std::vector<SiftedPair> sift(const std::vector<coinc::Coincidence>& coincidences);

struct VisibilityEstimate {
    std::size_t samples = 0;
    std::size_t errors = 0;
    double qber = 0.0;
    double visibility = 0.0; // 1 - 2 qber
};

// Error fraction over sifted pairs (the source convention is correlating,
// so an error is bit_a != bit_b). Throws InsufficientData below min_samples.
VisibilityEstimate estimate_visibility(const std::vector<SiftedPair>& sifted,
                                       std::size_t min_samples = 100);

} // namespace qlink::qkd
