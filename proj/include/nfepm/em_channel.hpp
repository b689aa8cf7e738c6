#pragma once

#include "nfepm/geometry.hpp"

#include <array>
#include <complex>

namespace nfepm {

using cplx = std::complex<double>;

inline constexpr double kEta0 = 376.73;

// On-axis source (0, 0, z_t) with orientation (0, t_y, t_z).
struct PoseCPL {
    PoseCPL(double z_t, double t_z);

    double z_t;
    double t_z;
    double t_y() const;
};

struct PoseGeneral {
    PoseGeneral(double x_t, double y_t, double z_t, double t_x, double t_y, double t_z);

    double x_t, y_t, z_t;
    double t_x, t_y, t_z;
};

struct ObservationPoint {
    double x_r = 0.0;
    double y_r = 0.0;
};

enum class ChannelKind { NFEM, AFEM, NUSW, USW };

const char* to_string(ChannelKind kind);

cplx scalar_green(double r, const Wave& wave, double eta = kEta0);

// Radiated field normalised by E_in; transverse to p_r - p_t.
std::array<cplx, 3> vector_field(const PoseGeneral& pose, const ObservationPoint& pt, const Wave& wave);

cplx nf_channel(const PoseCPL& pose, double x_r, double y_r, const Wave& wave);
cplx nf_channel_axis(const PoseCPL& pose, double y_r, const Wave& wave);
cplx general_channel(const PoseGeneral& pose, const ObservationPoint& pt, const Wave& wave);

double scale_factor(double r, const Wave& wave);
cplx simp_channel(const PoseCPL& pose, double x_r, double y_r, const Wave& wave);

// AFEM, NUSW or USW.
cplx degenerate_channel(ChannelKind kind, const PoseCPL& pose, double x_r, double y_r, const Wave& wave);

// Relative error of a candidate channel against the EM-SIMP reference.
double rerr(ChannelKind kind, const PoseCPL& pose, double x_r, double y_r, const Wave& wave);

}  // namespace nfepm
