#include "qlink/qkd/crossover.hpp"

#include <cmath>

namespace qlink::qkd {

CrossoverResult crossover_analysis(double loss_short_db_per_km, double loss_long_db_per_km,
                                   double eff_short, double eff_long) {
    if (!(loss_short_db_per_km > 0.0) || !(loss_long_db_per_km > 0.0))
        throw NoCrossover("attenuation must be positive");
    if (!(eff_short > 0.0) || !(eff_long > 0.0) || eff_short > 1.0 || eff_long > 1.0)
        throw NoCrossover("detector efficiency must lie in (0, 1]");

    const double eff_advantage_db = 10.0 * std::log10(eff_short / eff_long);
    const double slope_db_per_km = loss_short_db_per_km - loss_long_db_per_km;
    if (eff_advantage_db <= 0.0)
        throw NoCrossover("short-wavelength system starts behind: no distance favours it");
    if (slope_db_per_km <= 0.0)
        throw NoCrossover("short-wavelength system never falls behind: it wins at every distance");

    CrossoverResult r;
    r.breakeven_km = eff_advantage_db / slope_db_per_km;
    r.breakeven_db = loss_short_db_per_km * r.breakeven_km;
    return r;
}

} // namespace qlink::qkd
