#include "qlink/sim/polarization.hpp"

#include <cmath>

namespace qlink::sim {

Jones Jones::rotation(double theta_rad) {
    const double c = std::cos(theta_rad);
    const double s = std::sin(theta_rad);
    return {c, -s, s, c};
}

Jones Jones::operator*(const Jones& r) const {
    return {a * r.a + b * r.c, a * r.b + b * r.d,
            c * r.a + d * r.c, c * r.b + d * r.d};
}

Quaternion Quaternion::operator*(const Quaternion& r) const {
    return {w * r.w - x * r.x - y * r.y - z * r.z,
            w * r.x + x * r.w + y * r.z - z * r.y,
            w * r.y - x * r.z + y * r.w + z * r.x,
            w * r.z + x * r.y - y * r.x + z * r.w};
}

Quaternion Quaternion::normalized() const {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    return {w / n, x / n, y / n, z / n};
}

Jones Quaternion::to_jones() const {
    // U = w I - i (x sigma_x + y sigma_y + z sigma_z)
    using C = std::complex<double>;
    return {C(w, -z), C(-y, -x), C(y, -x), C(w, z)};
}

} // namespace qlink::sim
