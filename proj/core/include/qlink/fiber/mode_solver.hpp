#pragma once

#include <vector>

#include "qlink/error.hpp"
#include "qlink/fiber/fiber_spec.hpp"

namespace qlink::fiber {

QLINK_DEFINE_ERROR(NoGuidedMode);
QLINK_DEFINE_ERROR(ConvergenceFailure);
QLINK_DEFINE_ERROR(NotMultimode);
QLINK_DEFINE_ERROR(WrongMode);

// One guided LP mode of a step-index fiber at a fixed wavelength.
//
// The transverse field is
//   psi(r, phi) = R(r) * cos(l phi)            (cosine orientation)
// with R(r) = amplitude * J_l(u r/a)           for r <= a
//      R(r) = amplitude * J_l(u)/K_l(w) * K_l(w r/a)  for r > a
// normalized so that the cross-section integral of psi^2 equals one.
//
// radial_field holds R sampled on a uniform grid r = i * radial_step_um,
// which is what the field-shape operations (MFD, overlaps) consume.
struct ModeSolution {
    int azimuthal_index = 0; // l of LP_lm
    int radial_order = 1;    // m of LP_lm
    double wavelength_nm = 0.0;
    double normalized_b = 0.0;   // (n_eff^2 - n2^2) / (n1^2 - n2^2)
    double effective_index = 0.0;
    double group_delay_ns_per_km = 0.0;

    double core_radius_um = 0.0;
    double u = 0.0; // core transverse parameter,     u = V sqrt(1-b)
    double w = 0.0; // cladding decay parameter,      w = V sqrt(b)
    double amplitude = 0.0; // normalization constant of the core Bessel term

    std::vector<double> radial_field;
    double radial_step_um = 0.0;

    // Analytic radial profile R(r); matches radial_field samples.
    double radial_at(double r_um) const;
};

// All guided LP modes, sorted by descending effective index (LP01 first).
// Group delays are filled in via the wavelength derivative of the
// propagation constant (central finite difference across +/- 0.1 nm).
std::vector<ModeSolution> solve_modes(const FiberSpec& spec, double wavelength_nm);

// Group delay difference tau(LP11) - tau(LP01) in ns/km.
// Throws NotMultimode when fewer than two modes are guided.
double modal_dispersion_ns_per_km(const FiberSpec& spec, double wavelength_nm);

// Petermann-II mode field diameter of a fundamental (l = 0) mode, computed
// from the sampled radial field. Throws WrongMode for l > 0.
double mode_field_diameter_um(const ModeSolution& mode);

namespace detail {
// Roots b in (0,1) of the LP characteristic equation for azimuthal index l,
// descending. Exposed for tests.
std::vector<double> solve_normalized_b(double v, int l);
} // namespace detail

} // namespace qlink::fiber
