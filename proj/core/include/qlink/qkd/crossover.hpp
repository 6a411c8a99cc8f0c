#pragma once

#include "qlink/error.hpp"

namespace qlink::qkd {

QLINK_DEFINE_ERROR(NoCrossover);

struct CrossoverResult {
    double breakeven_km = 0.0; // distance where both wavelength options tie
    double breakeven_db = 0.0; // short-wavelength fiber loss spent at that distance
};

// Distance up to which the short-wavelength link (lossier fiber, more
// efficient detectors) beats the long-wavelength one: per-photon rates tie
// when eff_short 10^(-loss_short L / 10) = eff_long 10^(-loss_long L / 10).
// Throws NoCrossover when the detector ratio and the loss difference do not
// yield a positive finite crossing.
CrossoverResult crossover_analysis(double loss_short_db_per_km, double loss_long_db_per_km,
                                   double eff_short, double eff_long);

} // namespace qlink::qkd
