#include "qlink/fiber/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qlink::fiber {
namespace {

double sample_extent_um(const ModeSolution& m) {
    return m.radial_step_um * static_cast<double>(m.radial_field.size() - 1);
}

// Linear interpolation of the stored radial profile; zero beyond the grid
// (the cladding tail is negligible there by construction).
double radial_interp(const ModeSolution& m, double r_um) {
    const double x = r_um / m.radial_step_um;
    const auto i = static_cast<std::size_t>(x);
    if (i + 1 >= m.radial_field.size())
        return 0.0;
    const double frac = x - static_cast<double>(i);
    return m.radial_field[i] * (1.0 - frac) + m.radial_field[i + 1] * frac;
}

double aligned_overlap(const ModeSolution& from, const ModeSolution& to) {
    if (from.azimuthal_index != to.azimuthal_index)
        return 0.0; // azimuthal orthogonality
    const int l = from.azimuthal_index;
    const double rmax = std::max(sample_extent_um(from), sample_extent_um(to));
    const std::size_t n = 8192;
    const double h = rmax / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double r = static_cast<double>(i) * h;
        const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += wgt * from.radial_at(r) * to.radial_at(r) * r;
    }
    acc *= h;
    const double azimuthal = (l == 0) ? 2.0 * std::numbers::pi : std::numbers::pi;
    const double amp = acc * azimuthal;
    return amp * amp;
}

double offset_overlap(const ModeSolution& from, const ModeSolution& to, double d_um) {
    // Polar quadrature about the midpoint between the two mode axes; the
    // `from` axis sits at x = -d/2 and the `to` axis at x = +d/2.
    const double half = 0.5 * d_um;
    const double rmax = std::max(sample_extent_um(from), sample_extent_um(to)) + half;
    const std::size_t nr = 768;
    const std::size_t nphi = 512; // even, so swapping the modes mirrors the grid onto itself
    const double hr = rmax / static_cast<double>(nr);
    const double hphi = 2.0 * std::numbers::pi / static_cast<double>(nphi);

    double acc = 0.0;
    for (std::size_t i = 0; i <= nr; ++i) {
        const double r = static_cast<double>(i) * hr;
        const double wr = (i == 0 || i == nr) ? 0.5 : 1.0;
        double ring = 0.0;
        for (std::size_t k = 0; k < nphi; ++k) {
            const double phi = static_cast<double>(k) * hphi;
            const double x = r * std::cos(phi);
            const double y = r * std::sin(phi);
            const double xf = x + half, xt = x - half;
            const double rf = std::hypot(xf, y);
            const double rt = std::hypot(xt, y);
            double vf = radial_interp(from, rf);
            if (from.azimuthal_index > 0)
                vf *= std::cos(from.azimuthal_index * std::atan2(y, xf));
            double vt = radial_interp(to, rt);
            if (to.azimuthal_index > 0)
                vt *= std::cos(to.azimuthal_index * std::atan2(y, xt));
            ring += vf * vt;
        }
        acc += wr * ring * r;
    }
    const double amp = acc * hr * hphi;
    return amp * amp;
}

} // namespace

double overlap_coupling(const ModeSolution& from, const ModeSolution& to,
                        double lateral_offset_um) {
    if (from.wavelength_nm != to.wavelength_nm)
        throw GridMismatch("overlap requires both modes at the same wavelength");
    if (from.radial_field.empty() || to.radial_field.empty())
        throw GridMismatch("mode carries no sampled radial field");
    const double d = std::abs(lateral_offset_um);
    if (d == 0.0)
        return aligned_overlap(from, to);
    return offset_overlap(from, to, d);
}

} // namespace qlink::fiber
