#pragma once

#include <complex>

namespace qlink::sim {

// 2x2 Jones matrix [[a, b], [c, d]] acting on (horizontal, vertical)
// polarization amplitudes.
struct Jones {
    std::complex<double> a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Jones identity() { return {}; }
    static Jones rotation(double theta_rad);

    Jones operator*(const Jones& rhs) const;
};

// Unit quaternion, used to parametrize SU(2) polarization transforms and to
// accumulate slow drift without numerical drift of unitarity.
struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    Quaternion operator*(const Quaternion& rhs) const;
    Quaternion normalized() const;
    Jones to_jones() const;
};

} // namespace qlink::sim
