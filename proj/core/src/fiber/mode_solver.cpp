#include "qlink/fiber/mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qlink::fiber {
namespace {

constexpr double kSpeedOfLight_m_s = 2.99792458e8;
// group delay per km in ns = group index * this factor
constexpr double kNsPerKmPerIndex = 1e12 / kSpeedOfLight_m_s;
constexpr double kDeltaLambdaNm = 0.1; // finite-difference step for d beta / d lambda
constexpr int kScanPoints = 1000;

double bessel_j(int l, double x) {
    if (l < 0) {
        const double v = std::cyl_bessel_j(static_cast<double>(-l), x);
        return (-l) % 2 == 0 ? v : -v;
    }
    return std::cyl_bessel_j(static_cast<double>(l), x);
}

double bessel_k(int l, double x) {
    return std::cyl_bessel_k(static_cast<double>(std::abs(l)), x);
}

// LP characteristic function; roots in b solve the core/cladding matching
// condition u J_{l+1}(u)/J_l(u) = w K_{l+1}(w)/K_l(w).
double char_eq(double b, double v, int l) {
    const double u = v * std::sqrt(1.0 - b);
    const double w = v * std::sqrt(b);
    const double jl = bessel_j(l, u);
    const double core = u * bessel_j(l + 1, u) / jl;
    double clad;
    if (w < 1e-9) {
        clad = 2.0 * l; // small-argument limit of w K_{l+1}/K_l
    } else {
        clad = w * bessel_k(l + 1, w) / bessel_k(l, w);
    }
    return core - clad;
}

struct ModeCore {
    int l = 0;
    int m = 1;
    double b = 0.0;
};

std::vector<ModeCore> solve_cores(double v, int max_l = 16) {
    std::vector<ModeCore> cores;
    for (int l = 0; l <= max_l; ++l) {
        auto roots = detail::solve_normalized_b(v, l);
        if (roots.empty()) {
            if (l >= 1)
                break; // cutoffs are monotone in l, nothing higher is guided
            continue;
        }
        int m = 1;
        for (double b : roots)
            cores.push_back({l, m++, b});
    }
    return cores;
}

double effective_index(const FiberSpec& spec, double b) {
    const double n1 = spec.core_index;
    const double n2 = spec.cladding_index;
    return std::sqrt(n2 * n2 + b * (n1 * n1 - n2 * n2));
}

// n_eff of mode (l, m) at the given wavelength, or NaN when not guided.
double neff_of(const FiberSpec& spec, double wavelength_nm, int l, int m) {
    const double v = v_number(spec, wavelength_nm);
    auto roots = detail::solve_normalized_b(v, l);
    if (static_cast<int>(roots.size()) < m)
        return std::numeric_limits<double>::quiet_NaN();
    return effective_index(spec, roots[m - 1]);
}

double group_index(const FiberSpec& spec, double wavelength_nm, int l, int m,
                   double neff_center) {
    const double np = neff_of(spec, wavelength_nm + kDeltaLambdaNm, l, m);
    const double nm = neff_of(spec, wavelength_nm - kDeltaLambdaNm, l, m);
    double dn_dlambda;
    if (std::isnan(np) && std::isnan(nm))
        throw ConvergenceFailure("mode vanished on both sides of the finite-difference stencil");
    if (std::isnan(np))
        dn_dlambda = (neff_center - nm) / kDeltaLambdaNm;
    else if (std::isnan(nm))
        dn_dlambda = (np - neff_center) / kDeltaLambdaNm;
    else
        dn_dlambda = (np - nm) / (2.0 * kDeltaLambdaNm);
    return neff_center - wavelength_nm * dn_dlambda;
}

void sample_field(ModeSolution& mode) {
    const double a = mode.core_radius_um;
    const double step = a / 512.0;
    const double tail_extent = std::max(4.0, 2.0 + 10.0 / mode.w);
    std::size_t n = static_cast<std::size_t>(std::ceil(tail_extent * a / step)) + 1;
    n = std::max<std::size_t>(n, 2048);
    mode.radial_step_um = step;
    mode.radial_field.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        mode.radial_field[i] = mode.radial_at(static_cast<double>(i) * step);
}

} // namespace

namespace detail {

std::vector<double> solve_normalized_b(double v, int l) {
    if (v <= 0.0)
        throw InvalidFiberSpec("V number must be positive");
    const double lo = 1e-12, hi = 1.0 - 1e-12;
    std::vector<double> roots;
    double prev_b = lo;
    double prev_g = char_eq(prev_b, v, l);
    double prev_j = bessel_j(l, v * std::sqrt(1.0 - prev_b));
    for (int i = 1; i < kScanPoints; ++i) {
        const double b = lo + (hi - lo) * static_cast<double>(i) / (kScanPoints - 1);
        const double g = char_eq(b, v, l);
        const double j = bessel_j(l, v * std::sqrt(1.0 - b));
        const bool sign_change = std::isfinite(prev_g) && std::isfinite(g) && prev_g * g < 0.0;
        const bool pole = prev_j * j < 0.0;
        if (sign_change && !pole) {
            double blo = prev_b, bhi = b;
            double glo = prev_g;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (blo + bhi);
                const double gm = char_eq(mid, v, l);
                if (glo * gm <= 0.0)
                    bhi = mid;
                else {
                    blo = mid;
                    glo = gm;
                }
                if ((bhi - blo) < 1e-10 * std::max(1e-3, bhi))
                    break;
            }
            const double root = 0.5 * (blo + bhi);
            if (std::abs(char_eq(root, v, l)) > 1e-3)
                throw ConvergenceFailure("characteristic equation residual too large");
            roots.push_back(root);
        }
        prev_b = b;
        prev_g = g;
        prev_j = j;
    }
    std::sort(roots.rbegin(), roots.rend());
    return roots;
}

} // namespace detail

double ModeSolution::radial_at(double r_um) const {
    const double a = core_radius_um;
    if (r_um <= a)
        return amplitude * bessel_j(azimuthal_index, u * r_um / a);
    const double scale = bessel_j(azimuthal_index, u) / bessel_k(azimuthal_index, w);
    return amplitude * scale * bessel_k(azimuthal_index, w * r_um / a);
}

std::vector<ModeSolution> solve_modes(const FiberSpec& spec, double wavelength_nm) {
    spec.validate();
    const double v = v_number(spec, wavelength_nm);
    auto cores = solve_cores(v);
    if (cores.empty())
        throw NoGuidedMode(spec.name + ": no bound LP mode at this wavelength");

    std::vector<ModeSolution> modes;
    modes.reserve(cores.size());
    const double a = spec.core_radius_um;
    for (const auto& core : cores) {
        ModeSolution mode;
        mode.azimuthal_index = core.l;
        mode.radial_order = core.m;
        mode.wavelength_nm = wavelength_nm;
        mode.normalized_b = core.b;
        mode.effective_index = effective_index(spec, core.b);
        mode.core_radius_um = a;
        mode.u = v * std::sqrt(1.0 - core.b);
        mode.w = v * std::sqrt(core.b);

        // closed-form radial power integrals of the unnormalized profile
        const int l = core.l;
        const double jl = bessel_j(l, mode.u);
        const double kl = bessel_k(l, mode.w);
        const double core_int = 0.5 * a * a *
            (jl * jl - bessel_j(l - 1, mode.u) * bessel_j(l + 1, mode.u));
        const double clad_scale = (jl / kl) * (jl / kl);
        const double clad_int = clad_scale * 0.5 * a * a *
            (bessel_k(l - 1, mode.w) * bessel_k(l + 1, mode.w) - kl * kl);
        const double azimuthal = (l == 0) ? 2.0 * std::numbers::pi : std::numbers::pi;
        mode.amplitude = 1.0 / std::sqrt((core_int + clad_int) * azimuthal);

        const double ng = group_index(spec, wavelength_nm, core.l, core.m, mode.effective_index);
        mode.group_delay_ns_per_km = ng * kNsPerKmPerIndex;

        sample_field(mode);
        modes.push_back(std::move(mode));
    }
    std::sort(modes.begin(), modes.end(), [](const ModeSolution& x, const ModeSolution& y) {
        return x.effective_index > y.effective_index;
    });
    return modes;
}

double modal_dispersion_ns_per_km(const FiberSpec& spec, double wavelength_nm) {
    auto modes = solve_modes(spec, wavelength_nm);
    const ModeSolution* lp01 = nullptr;
    const ModeSolution* lp11 = nullptr;
    for (const auto& m : modes) {
        if (m.azimuthal_index == 0 && m.radial_order == 1)
            lp01 = &m;
        if (m.azimuthal_index == 1 && m.radial_order == 1)
            lp11 = &m;
    }
    if (!lp01 || !lp11)
        throw NotMultimode(spec.name + ": LP01 and LP11 are not both guided");
    return lp11->group_delay_ns_per_km - lp01->group_delay_ns_per_km;
}

double mode_field_diameter_um(const ModeSolution& mode) {
    if (mode.azimuthal_index != 0)
        throw WrongMode("mode field diameter is defined for the fundamental (l = 0) mode");
    const auto& f = mode.radial_field;
    if (f.size() < 16 || mode.radial_step_um <= 0.0)
        throw WrongMode("mode carries no sampled radial field");
    const double h = mode.radial_step_um;
    const std::size_t n = f.size();

    double num = 0.0, den = 0.0;
    auto deriv = [&](std::size_t i) {
        if (i == 0)
            return (f[1] - f[0]) / h;
        if (i == n - 1)
            return (f[n - 1] - f[n - 2]) / h;
        return (f[i + 1] - f[i - 1]) / (2.0 * h);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double r = static_cast<double>(i) * h;
        const double wgt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        num += wgt * f[i] * f[i] * r;
        const double d = deriv(i);
        den += wgt * d * d * r;
    }
    return 2.0 * std::sqrt(2.0 * num / den);
}

} // namespace qlink::fiber
