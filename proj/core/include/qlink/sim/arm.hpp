#pragma once

#include "qlink/error.hpp"
#include "qlink/sim/polarization.hpp"
#include "qlink/timetag.hpp"

namespace qlink::sim {

QLINK_DEFINE_ERROR(InvalidArm);

// Everything a photon experiences between the source and one party's
// analyzer. Two spatial modes are tracked: 0 is the fundamental, 1 the
// higher-order mode that a two-mode fiber also guides. Launch fractions are
// power couplings at the input splice; whatever they leave on the table is
// coupling loss. Each mode has its own group delay, polarization rotation
// and spatial-filter transmission.
struct ArmParams {
    double length_km = 0.0;
    double attenuation_db_per_km = 0.0;
    double insertion_db = 0.0;

    double launch_fundamental = 1.0;
    double launch_higher = 0.0;

    double delay_fundamental_ns_per_km = 0.0;
    double delay_higher_ns_per_km = 0.0;

    double filter_fundamental = 1.0;
    double filter_higher = 1.0;

    Jones rotation_fundamental = Jones::identity();
    Jones rotation_higher = Jones::identity();
};

struct ArmOutcome {
    bool survived = false;
    int mode = 0;
    TimePs delay_ps = 0;
};

class ArmModel {
public:
    explicit ArmModel(const ArmParams& p);

    // Two uniform deviates decide the mode split and loss for one photon.
    ArmOutcome propagate(double u_mode, double u_survival) const;

    const Jones& mode_rotation(int mode) const {
        return mode == 0 ? params_.rotation_fundamental : params_.rotation_higher;
    }
    double survival(int mode) const { return survival_[mode]; }
    TimePs delay_ps(int mode) const { return delay_[mode]; }
    const ArmParams& params() const { return params_; }

private:
    ArmParams params_;
    double survival_[2];
    TimePs delay_[2];
};

} // namespace qlink::sim
