#include "qlink/qkd/key_rate.hpp"

#include <cmath>

namespace qlink::qkd {

double binary_entropy(double e) {
    if (e < 0.0 || e > 1.0)
        throw InvalidErrorRate("binary entropy argument outside [0, 1]");
    if (e == 0.0 || e == 1.0)
        return 0.0;
    return -e * std::log2(e) - (1.0 - e) * std::log2(1.0 - e);
}

} // namespace qlink::qkd
