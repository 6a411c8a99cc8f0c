#include "qlink/qkd/key_rate.hpp"

#include <algorithm>
#include <cmath>

namespace qlink::qkd {

KeyRateResult secure_key_rate(double coincidence_rate_hz, double visibility,
                              const SecurityParams& params) {
    if (!(std::abs(visibility) <= 1.0))
        throw InvalidVisibility("visibility must lie in [-1, 1]");
    if (!(coincidence_rate_hz >= 0.0))
        throw InvalidErrorRate("coincidence rate must be non-negative");

    KeyRateResult r;
    r.coincidence_rate = coincidence_rate_hz;
    r.visibility = visibility;
    r.qber = 0.5 * (1.0 - visibility);
    r.sifted_rate = params.sifting_factor * coincidence_rate_hz;

    const double h = binary_entropy(r.qber);
    const double fraction = 1.0 - (params.ec_inefficiency + 1.0) * h;
    r.secure_rate = r.sifted_rate * std::max(0.0, fraction);
    return r;
}

} // namespace qlink::qkd
