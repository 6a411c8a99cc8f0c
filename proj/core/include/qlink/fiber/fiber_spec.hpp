#pragma once

#include <map>
#include <string>

#include "qlink/error.hpp"

namespace qlink::fiber {

QLINK_DEFINE_ERROR(InvalidFiberSpec);
QLINK_DEFINE_ERROR(AttenuationUnknown);

// Step-index fiber description under the weakly-guiding approximation.
// Attenuation is a lookup table keyed by wavelength in nm; entries are exact,
// no interpolation is performed between them.
struct FiberSpec {
    std::string name;
    double core_radius_um = 0.0;
    double core_index = 0.0;
    double cladding_index = 0.0;
    std::map<double, double> attenuation_db_per_km; // wavelength nm -> dB/km

    void validate() const;
    double numerical_aperture() const;
};

// Normalized frequency V = 2 pi a NA / lambda.
double v_number(const FiberSpec& spec, double wavelength_nm);

// Exact table lookup; throws AttenuationUnknown for wavelengths not listed.
double attenuation_db_per_km(const FiberSpec& spec, double wavelength_nm);

// Serialize as a `fiber <name> { ... }` block of the scenario config format.
std::string to_config_text(const FiberSpec& spec);

} // namespace qlink::fiber
