#include "qlink/fiber/calibrate.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "qlink/fiber/overlap.hpp"

namespace qlink::fiber {
namespace {

constexpr double kSilicaIndex1550 = 1.444;
constexpr double kSilicaIndex810 = 1.4525;
constexpr double kLp11CutoffV = 2.405;
constexpr double kLp21CutoffV = 3.832;

using Residual = std::function<std::array<double, 2>(double a_um, double na)>;

FiberSpec make_spec(std::string name, double a_um, double na, double cladding) {
    FiberSpec spec;
    spec.name = std::move(name);
    spec.core_radius_um = a_um;
    spec.cladding_index = cladding;
    spec.core_index = std::sqrt(cladding * cladding + na * na);
    spec.attenuation_db_per_km = {{810.0, 3.0}, {1550.0, 0.22}};
    return spec;
}

double norm2(const std::array<double, 2>& r) {
    return r[0] * r[0] + r[1] * r[1];
}

// Damped 2-parameter Newton iteration with a finite-difference Jacobian,
// minimizing the squared relative residual against the two targets.
std::array<double, 2> newton_fit(const Residual& resid, double a0, double na0) {
    double a = a0, na = na0;
    auto r = resid(a, na);
    for (int iter = 0; iter < 40; ++iter) {
        if (std::sqrt(norm2(r)) < 1e-9)
            break;
        const double da = std::max(1e-5, 1e-5 * a);
        const double dna = std::max(1e-6, 1e-5 * na);
        const auto ra = resid(a + da, na);
        const auto rn = resid(a, na + dna);
        const double j00 = (ra[0] - r[0]) / da, j01 = (rn[0] - r[0]) / dna;
        const double j10 = (ra[1] - r[1]) / da, j11 = (rn[1] - r[1]) / dna;
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || std::abs(det) < 1e-18)
            throw CalibrationDiverged("singular Jacobian in fiber fit");
        double step_a = (j11 * r[0] - j01 * r[1]) / det;
        double step_na = (-j10 * r[0] + j00 * r[1]) / det;
        double scale = 1.0;
        for (int back = 0; back < 8; ++back) {
            const double a_try = a - scale * step_a;
            const double na_try = na - scale * step_na;
            if (a_try > 0.3 && na_try > 0.01 && na_try < 0.6) {
                auto r_try = resid(a_try, na_try);
                if (std::isfinite(r_try[0]) && std::isfinite(r_try[1]) &&
                    norm2(r_try) < norm2(r)) {
                    a = a_try;
                    na = na_try;
                    r = r_try;
                    break;
                }
            }
            scale *= 0.5;
            if (back == 7)
                throw CalibrationDiverged("fiber fit failed to reduce the residual");
        }
    }
    if (std::sqrt(norm2(r)) > 1e-4)
        throw CalibrationDiverged("fiber fit residual above tolerance");
    return {a, na};
}

double lp01_mfd(const FiberSpec& spec, double wavelength_nm) {
    auto modes = solve_modes(spec, wavelength_nm);
    for (const auto& m : modes)
        if (m.azimuthal_index == 0 && m.radial_order == 1)
            return mode_field_diameter_um(m);
    throw NoGuidedMode(spec.name + ": fundamental mode missing");
}

} // namespace

FiberSpec calibrate_fiber(const TelecomTargets& targets) {
    const double lambda = targets.two_mode_wavelength_nm;
    Residual resid = [&](double a, double na) -> std::array<double, 2> {
        FiberSpec spec = make_spec("telecom", a, na, kSilicaIndex1550);
        const double v = v_number(spec, lambda);
        if (v <= kLp11CutoffV + 1e-3 || v > kLp21CutoffV) {
            // outside the two-mode window: steer back with a large residual
            const double miss = (v <= kLp11CutoffV + 1e-3)
                                    ? kLp11CutoffV + 1e-3 - v
                                    : v - kLp21CutoffV;
            return {10.0 * (1.0 + miss), 10.0 * (1.0 + miss)};
        }
        const double mfd = lp01_mfd(spec, 1550.0);
        const double disp = modal_dispersion_ns_per_km(spec, lambda);
        return {(mfd - targets.mfd_1550_um) / targets.mfd_1550_um,
                (disp - targets.dispersion_ns_per_km) / targets.dispersion_ns_per_km};
    };

    std::array<double, 2> fit{};
    bool done = false;
    for (double a0 : {3.4, 3.0, 3.8, 2.6}) {
        try {
            fit = newton_fit(resid, a0, 0.135);
            done = true;
            break;
        } catch (const CalibrationDiverged&) {
            continue;
        }
    }
    if (!done)
        throw CalibrationDiverged("telecom fiber fit did not converge from any start");

    FiberSpec spec = make_spec("telecom", fit[0], fit[1], kSilicaIndex1550);
    const double v = v_number(spec, lambda);
    if (v <= kLp11CutoffV || v > kLp21CutoffV)
        throw CalibrationDiverged("fitted fiber violates the two-mode constraint");
    return spec;
}

FiberSpec calibrate_fiber(const PigtailTargets& targets) {
    Residual resid = [&](double a, double na) -> std::array<double, 2> {
        FiberSpec spec = make_spec("sm800", a, na, kSilicaIndex810);
        const double v = v_number(spec, targets.wavelength_nm);
        if (v >= kLp11CutoffV)
            return {10.0 * v, 10.0 * v};
        const double mfd = lp01_mfd(spec, targets.wavelength_nm);
        return {(mfd - targets.mfd_um) / targets.mfd_um,
                (v - targets.v_number) / targets.v_number};
    };
    const auto fit = newton_fit(resid, 2.2, 0.12);
    return make_spec("sm800", fit[0], fit[1], kSilicaIndex810);
}

FiberSpec calibrated_telecom() {
    return make_spec("telecom", 3.475852, 0.1322127, kSilicaIndex1550);
}

FiberSpec calibrated_sm800() {
    return make_spec("sm800", 2.175287, 0.1185274, kSilicaIndex810);
}

double calibrate_filter_offset_um(const ModeSolution& lp11,
                                  const ModeSolution& pigtail_lp01,
                                  double target_leakage) {
    if (target_leakage <= 0.0 || target_leakage >= 1.0)
        throw CalibrationDiverged("target leakage must lie in (0, 1)");
    double lo = 1e-3, hi = 1.5;
    auto leak = [&](double d) { return overlap_coupling(lp11, pigtail_lp01, d); };
    if (leak(lo) > target_leakage || leak(hi) < target_leakage)
        throw CalibrationDiverged("leakage target is not bracketed by offsets in (0, 1.5] um");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (leak(mid) < target_leakage)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace qlink::fiber
