#pragma once

#include "qlink/error.hpp"
#include "qlink/fiber/fiber_spec.hpp"
#include "qlink/fiber/mode_solver.hpp"

namespace qlink::fiber {

QLINK_DEFINE_ERROR(CalibrationDiverged);

// Calibration targets for the long-haul fiber: mode field diameter at
// 1550 nm, modal dispersion at the distribution wavelength, and the
// requirement that the fiber guides exactly LP01 + LP11 there
// (2.405 < V <= 3.832, enforced as a hard constraint).
struct TelecomTargets {
    double mfd_1550_um = 9.2;
    double dispersion_ns_per_km = 2.19;
    double two_mode_wavelength_nm = 810.0;
};

// Targets for the short single-mode pigtail: mode field diameter at the
// distribution wavelength with a fixed single-mode margin (V pinned well
// below the LP11 cutoff).
struct PigtailTargets {
    double mfd_um = 5.4;
    double wavelength_nm = 810.0;
    double v_number = 2.0;
};

// Least-squares fit of (core_radius, NA) against the targets, minimizing the
// summed squared relative error. Cladding index is held at fused silica.
// Throws CalibrationDiverged if the fit cannot meet the two-mode constraint
// or fails to reduce the residual below 1%.
FiberSpec calibrate_fiber(const TelecomTargets& targets);
FiberSpec calibrate_fiber(const PigtailTargets& targets);

// Smallest lateral offset at which LP11 -> LP01 power leakage into the
// pigtail reaches target_leakage. Used to model an intentionally misaligned
// splice acting as a mode filter.
double calibrate_filter_offset_um(const ModeSolution& lp11,
                                  const ModeSolution& pigtail_lp01,
                                  double target_leakage);

// Frozen results of the two calibrations above, so scenario loading does not
// re-run the fits. Unit tests pin these against calibrate_fiber.
FiberSpec calibrated_telecom();
FiberSpec calibrated_sm800();

} // namespace qlink::fiber
