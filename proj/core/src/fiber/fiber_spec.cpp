#include "qlink/fiber/fiber_spec.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qlink::fiber {

void FiberSpec::validate() const {
    if (core_radius_um <= 0.0)
        throw InvalidFiberSpec(name + ": core_radius must be positive");
    if (core_index <= cladding_index)
        throw InvalidFiberSpec(name + ": core_index must exceed cladding_index");
    if (cladding_index <= 0.0)
        throw InvalidFiberSpec(name + ": cladding_index must be positive");
}

double FiberSpec::numerical_aperture() const {
    return std::sqrt(core_index * core_index - cladding_index * cladding_index);
}

double v_number(const FiberSpec& spec, double wavelength_nm) {
    spec.validate();
    if (wavelength_nm <= 0.0)
        throw InvalidFiberSpec("wavelength must be positive");
    const double lambda_um = wavelength_nm * 1e-3;
    return 2.0 * std::numbers::pi * spec.core_radius_um * spec.numerical_aperture() / lambda_um;
}

double attenuation_db_per_km(const FiberSpec& spec, double wavelength_nm) {
    auto it = spec.attenuation_db_per_km.find(wavelength_nm);
    if (it == spec.attenuation_db_per_km.end()) {
        std::ostringstream os;
        os << spec.name << ": no attenuation entry at " << wavelength_nm << " nm";
        throw AttenuationUnknown(os.str());
    }
    return it->second;
}

std::string to_config_text(const FiberSpec& spec) {
    std::ostringstream os;
    os.precision(9);
    os << "fiber " << spec.name << " {\n";
    os << "  core_radius = " << spec.core_radius_um << " um\n";
    os << "  core_index = " << spec.core_index << "\n";
    os << "  cladding_index = " << spec.cladding_index << "\n";
    if (!spec.attenuation_db_per_km.empty()) {
        os << "  attenuation {\n";
        for (const auto& [nm, db] : spec.attenuation_db_per_km)
            os << "    " << nm << " nm = " << db << " dB/km\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace qlink::fiber
