#pragma once

#include "qlink/error.hpp"
#include "qlink/fiber/mode_solver.hpp"

namespace qlink::fiber {

QLINK_DEFINE_ERROR(GridMismatch);

// Power coupling efficiency |<to, shifted from>|^2 between two normalized
// modes whose axes are laterally offset by lateral_offset_um.
//
// Both modes must be solutions at the same wavelength. Azimuthal selection
// is applied analytically at zero offset (only matching l couples); nonzero
// offsets are integrated on a polar grid centered midway between the axes,
// with the offset taken along the x axis and cosine mode orientations.
double overlap_coupling(const ModeSolution& from, const ModeSolution& to,
                        double lateral_offset_um);

} // namespace qlink::fiber
