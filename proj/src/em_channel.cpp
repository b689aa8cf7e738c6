#include "nfepm/em_channel.hpp"

#include "nfepm/errors.hpp"

#include <cmath>

namespace nfepm {

namespace {

constexpr cplx kJ{0.0, 1.0};

cplx phase(double k, double r) { return std::polar(1.0, k * r); }

double distance(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    require(r > 0.0, ErrorKind::CoincidentPoints, "observation point coincides with the source");
    return r;
}

}  // namespace

PoseCPL::PoseCPL(double z, double t) : z_t(z), t_z(t) {
    require(std::isfinite(z) && z > 0.0, ErrorKind::InvariantViolation, "z_t > 0");
    require(std::isfinite(t) && t >= 0.0 && t < 1.0, ErrorKind::InvariantViolation, "0 <= t_z < 1");
}

double PoseCPL::t_y() const { return std::sqrt(1.0 - t_z * t_z); }

PoseGeneral::PoseGeneral(double x, double y, double z, double tx, double ty, double tz)
    : x_t(x), y_t(y), z_t(z), t_x(tx), t_y(ty), t_z(tz) {
    require(std::isfinite(z) && z > 0.0, ErrorKind::InvariantViolation, "z_t > 0");
    require(std::abs(tx * tx + ty * ty + tz * tz - 1.0) <= 1e-12, ErrorKind::InvariantViolation,
            "orientation must be a unit vector");
}

const char* to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::NFEM: return "NFEM";
        case ChannelKind::AFEM: return "AFEM";
        case ChannelKind::NUSW: return "NUSW";
        case ChannelKind::USW: return "USW";
    }
    return "Unknown";
}

cplx scalar_green(double r, const Wave& wave, double eta) {
    require(r > 0.0, ErrorKind::NonPositiveDistance, "scalar_green needs r > 0");
    return kJ * eta / (2.0 * wave.lambda() * r) * phase(wave.k(), r);
}

std::array<cplx, 3> vector_field(const PoseGeneral& p, const ObservationPoint& pt, const Wave& wave) {
    const double x = pt.x_r - p.x_t;
    const double y = pt.y_r - p.y_t;
    const double z = p.z_t;
    const double r = distance(x, y, z);
    const cplx c = kJ * phase(wave.k(), r) / (r * r * r);
    return {
        c * ((y * y + z * z) * p.t_x - x * y * p.t_y + x * z * p.t_z),
        c * (-x * y * p.t_x + (x * x + z * z) * p.t_y + y * z * p.t_z),
        c * (x * z * p.t_x + y * z * p.t_y + (x * x + y * y) * p.t_z),
    };
}

cplx nf_channel(const PoseCPL& pose, double x_r, double y_r, const Wave& wave) {
    const double z = pose.z_t;
    const double r = distance(x_r, y_r, z);
    const double a = y_r * pose.t_z + z * pose.t_y();
    // sqrt(a * a) == |a| exactly, so x_r = 0 reproduces the on-axis value bit for bit.
    const double amp = std::sqrt(z) * std::sqrt(x_r * x_r + a * a);
    return phase(wave.k(), r) * (amp / std::pow(r, 2.5));
}

cplx nf_channel_axis(const PoseCPL& pose, double y_r, const Wave& wave) {
    const double z = pose.z_t;
    const double r = std::sqrt(y_r * y_r + z * z);
    const double amp = std::sqrt(z) * (y_r * pose.t_z + z * pose.t_y());
    return phase(wave.k(), r) * (amp / std::pow(r, 2.5));
}

cplx general_channel(const PoseGeneral& p, const ObservationPoint& pt, const Wave& wave) {
    const double x = pt.x_r - p.x_t;
    const double y = pt.y_r - p.y_t;
    const double z = p.z_t;
    const double r = distance(x, y, z);
    const double c1 = p.t_y * x - p.t_x * y;
    const double c2 = p.t_z * x + p.t_x * z;
    const double c3 = p.t_z * y + p.t_y * z;
    const double amp = std::sqrt(z) * std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
    return phase(wave.k(), r) * (amp / std::pow(r, 2.5));
}

double scale_factor(double r, const Wave& wave) {
    require(r > 0.0, ErrorKind::NonPositiveDistance, "scale_factor needs r > 0");
    const double kr2 = wave.k() * wave.k() * r * r;
    return std::sqrt(1.0 + 3.0 / kr2 + 9.0 / (kr2 * kr2));
}

cplx simp_channel(const PoseCPL& pose, double x_r, double y_r, const Wave& wave) {
    const double r = distance(x_r, y_r, pose.z_t);
    return scale_factor(r, wave) * nf_channel(pose, x_r, y_r, wave);
}

cplx degenerate_channel(ChannelKind kind, const PoseCPL& pose, double x_r, double y_r, const Wave& wave) {
    const double z = pose.z_t;
    const double r = distance(x_r, y_r, z);
    const cplx e = phase(wave.k(), r);
    switch (kind) {
        case ChannelKind::AFEM: return e * (std::sqrt(z) * std::sqrt(x_r * x_r + z * z) / std::pow(r, 2.5));
        case ChannelKind::NUSW: return e / r;
        case ChannelKind::USW: return e / z;
        case ChannelKind::NFEM: break;
    }
    throw Error(ErrorKind::InvalidArgument, "degenerate_channel expects AFEM, NUSW or USW");
}

double rerr(ChannelKind kind, const PoseCPL& pose, double x_r, double y_r, const Wave& wave) {
    const cplx ref = simp_channel(pose, x_r, y_r, wave);
    require(std::abs(ref) > 0.0, ErrorKind::DivisionByZero, "reference EM-SIMP channel is zero");
    const cplx cand = (kind == ChannelKind::NFEM) ? nf_channel(pose, x_r, y_r, wave)
                                                  : degenerate_channel(kind, pose, x_r, y_r, wave);
    return std::abs(ref - cand) / std::abs(ref);
}

}  // namespace nfepm
