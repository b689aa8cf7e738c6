#include "nfepm/bounds_ecrb.hpp"

#include "nfepm/csv.hpp"
#include "nfepm/errors.hpp"

#include <cmath>
#include <ostream>

namespace nfepm {

namespace ftau {

namespace {
double s_of(double tau) { return tau * tau + 1.0; }
}  // namespace

double f1(double tau) {
    const double s = s_of(tau), t2 = tau * tau, t4 = t2 * t2, t6 = t4 * t2, t8 = t4 * t4;
    return (2 * t8 + 8 * t6 + 12 * t4 + 8 * t2 + 2) / (7 * std::pow(s, 4)) -
           (7 * t4 - 14 * t2 + 4) / (14 * std::pow(s, 3.5));
}

double f2(double tau) {
    const double t3 = tau * tau * tau, t5 = t3 * tau * tau, t7 = t5 * tau * tau;
    return (19 * t7 + 56 * t5 + 112 * t3) / (84 * std::pow(s_of(tau), 3.5));
}

double f3(double tau) {
    const double t3 = tau * tau * tau, t5 = t3 * tau * tau, t7 = t5 * tau * tau;
    return (10 * t7 + 35 * t5 + 28 * t3 + 28 * tau) / (28 * std::pow(s_of(tau), 3.5));
}

double f4(double tau) { return 2.0 / 5.0 - 2.0 / (5 * std::pow(s_of(tau), 2.5)); }

double f5(double tau) {
    const double t3 = tau * tau * tau;
    return t3 * (2 * tau * tau + 5) / (15 * std::pow(s_of(tau), 2.5));
}

double f6(double tau) {
    const double t3 = tau * tau * tau, t5 = t3 * tau * tau;
    return (8 * t5 + 20 * t3 + 15 * tau) / (15 * std::pow(s_of(tau), 2.5));
}

double f7(double tau) { return (tau * tau * tau + 3 * tau) / (3 * std::pow(s_of(tau), 1.5)); }

double f8(double tau) { return 2.0 / (3 * std::pow(s_of(tau), 1.5)) - 2.0 / 3.0; }

double f9(double tau) { return tau * tau * tau / (3 * std::pow(s_of(tau), 1.5)); }

double f10(double tau) {
    const double s = s_of(tau), t2 = tau * tau;
    return (t2 - 2) / (6 * std::pow(s, 2.5)) + (t2 * t2 + 2 * t2 + 1) / (3 * s * s);
}

double f11(double tau) {
    const double t3 = tau * tau * tau, t5 = t3 * tau * tau;
    return (t5 + t3 + 6 * tau) / (6 * std::pow(s_of(tau), 2.5));
}

double f12(double tau) { return -tau * tau / (2 * std::pow(s_of(tau), 2.5)); }

}  // namespace ftau

namespace {

void check_attitude(const PoseCPL& pose) {
    require(1.0 - pose.t_z * pose.t_z >= 1e-12, ErrorKind::AttitudeSingularity, "t_y vanishes");
}

FisherInfo assemble(double i_zz1, double i_zz2, double i_tt, double i_zt, double snr, double l_s, double k) {
    FisherInfo f;
    f.i_zz1 = i_zz1;
    f.i_zz2 = i_zz2;
    f.i_tt = i_tt;
    f.i_zt = i_zt;
    const double c = 2.0 * snr * l_s;
    f.f_zz = c * (i_zz1 + k * k * i_zz2);
    f.f_tt = c * i_tt;
    f.f_zt = c * i_zt;
    return f;
}

}  // namespace

FisherInfo fim_closed(const PoseCPL& pose, double snr, const ArrayGeometry& geom, const Wave& wave) {
    check_attitude(pose);
    require(!geom.is_unbounded(), ErrorKind::InvalidArgument, "fim_closed needs a finite D_r");
    const double z = pose.z_t, tz = pose.t_z, ty = pose.t_y();
    const double tau = geom.d_r() / z;
    using namespace ftau;
    const double i_zz1 = (tz * ty * f1(tau) + tz * tz * f2(tau) + ty * ty * f3(tau)) / (z * z * z);
    const double i_zz2 = (tz * ty * f4(tau) + tz * tz * f5(tau) + ty * ty * f6(tau)) / z;
    const double i_tt = (tz * tz / (ty * ty) * f7(tau) + tz / ty * f8(tau) + f9(tau) / (ty * ty)) / z;
    const double i_zt = (tz * tz / ty * f10(tau) + tz * f11(tau) + ty * f12(tau)) / (z * z);
    return assemble(i_zz1, i_zz2, i_tt, i_zt, snr, geom.l_s(), wave.k());
}

FisherInfo fim_quadrature(const PoseCPL& pose, double snr, const ArrayGeometry& geom, const Wave& wave,
                          const QuadratureSpec& spec) {
    check_attitude(pose);
    require(!geom.is_unbounded(), ErrorKind::InvalidArgument, "fim_quadrature needs a finite D_r");
    const double z = pose.z_t, tz = pose.t_z, ty = pose.t_y();
    auto integrand = [&](double y) {
        const double r2 = y * y + z * z;
        const double r = std::sqrt(r2);
        const double ell = 3 * y * y - 2 * z * z;
        const double p = tz * y * (y * y - 4 * z * z) + ty * ell * z;
        const double q = y - z * tz / ty;
        const double a = tz * y + ty * z;
        const double r5 = r2 * r2 * r;
        const double r7 = r5 * r2;
        const double r9 = r7 * r2;
        return std::array<double, 4>{
            p * p / (4 * r9) / z,
            z * z * z * a * a / r7,
            z * q * q / r5,
            p * q / (2 * r7),
        };
    };
    const auto res = integrate_n<4>(integrand, 0.0, geom.d_r(), spec);
    return assemble(res.value[0], res.value[1], res.value[2], res.value[3], snr, geom.l_s(), wave.k());
}

cplx dh_dz(const PoseCPL& pose, double y, const Wave& wave) {
    const double z = pose.z_t, tz = pose.t_z, ty = pose.t_y();
    const double r = std::sqrt(y * y + z * z);
    const double kr = wave.k() * r;
    const cplx l1 = 2.0 * z * z * cplx(2.0, -kr);
    const cplx l2 = 2.0 * z * z * cplx(1.0, -kr);
    const cplx num = tz * y * (y * y - l1) + ty * z * (3.0 * y * y - l2);
    return num / (2.0 * std::sqrt(z) * std::pow(r, 4.5)) * std::polar(1.0, kr);
}

cplx dh_dt(const PoseCPL& pose, double y, const Wave& wave) {
    check_attitude(pose);
    const double z = pose.z_t, tz = pose.t_z, ty = pose.t_y();
    const double r = std::sqrt(y * y + z * z);
    return (y - z * tz / ty) * std::sqrt(z) / std::pow(r, 2.5) * std::polar(1.0, wave.k() * r);
}

double i_tt_unbounded(double z, double t) {
    require(1.0 - t * t >= 1e-12, ErrorKind::AttitudeSingularity, "t_y vanishes");
    const double t2 = t * t;
    return (1.0 + t2 - 2.0 * t * std::sqrt(1.0 - t2)) / (1.0 - t2) / (3.0 * z);
}

EcrbResult ecrb(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const Wave& wave,
                const EcrbGrid& grid) {
    require(snr > 0.0, ErrorKind::InvalidArgument, "ecrb needs SNR > 0");
    EcrbResult out;
    const double k2 = wave.k() * wave.k();
    double sum_z = 0.0, sum_t = 0.0;
    int used = 0;
    const double dz = prior.ht() / grid.n_z;
    const double dt = (1.0 - grid.eps) / grid.n_t;
    for (int i = 0; i < grid.n_z; ++i) {
        const double z = prior.h1() + (i + 0.5) * dz;
        for (int j = 0; j < grid.n_t; ++j) {
            const double t = (j + 0.5) * dt;
            const auto f = fim_closed(PoseCPL(z, t), 1.0, geom, wave);
            const double i_zz = f.i_zz1 + k2 * f.i_zz2;
            const double det = i_zz * f.i_tt - f.i_zt * f.i_zt;
            if (!(det > 0.0)) {
                if (!grid.skip_singular) {
                    throw Error(ErrorKind::SingularFIM,
                                "det F <= 0 at z_t=" + fmt_double(z) + ", t_z=" + fmt_double(t));
                }
                out.skipped.emplace_back(z, t);
                continue;
            }
            sum_z += f.i_tt / det;
            sum_t += i_zz / det;
            ++used;
        }
    }
    require(used > 0, ErrorKind::SingularFIM, "every prior sample was singular");
    const double c = 2.0 * snr * geom.l_s();
    out.ecrb_z = sum_z / used / c;
    out.ecrb_t = sum_t / used / c;
    return out;
}

EcrbAsymptotic ecrb_asymptotic(const PriorUniform& prior, double snr, const ArrayGeometry& geom,
                               const Wave& wave) {
    require(snr > 0.0, ErrorKind::InvalidArgument, "ecrb_asymptotic needs SNR > 0");
    const double k2 = wave.k() * wave.k();
    const double c = 2.0 * snr * geom.l_s();
    const auto ez = integrate([&](double z) { return 210 * z * z * z / (112 * k2 * z * z + 75); },
                              prior.h1(), prior.h2());
    const double mean_z = 0.5 * (prior.h1() + prior.h2());
    EcrbAsymptotic out;
    out.ecrb_z = ez.value / prior.ht() / c;
    out.ecrb_t = 3.0 * mean_z / c;
    const double lam = wave.lambda();
    out.ecrb_z_far = 15.0 * lam * lam * mean_z / (64.0 * kPi * kPi * snr * geom.l_s());
    return out;
}

double ecrb_ao(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const EcrbGrid& grid) {
    require(snr > 0.0, ErrorKind::InvalidArgument, "ecrb_ao needs SNR > 0");
    // I_tt does not involve the wavelength; any wave serves fim_closed here.
    const Wave unit(1.0);
    auto inv_itt = [&](double z, double t) {
        if (geom.is_unbounded()) return 1.0 / i_tt_unbounded(z, t);
        return 1.0 / fim_closed(PoseCPL(z, t), 1.0, geom, unit).i_tt;
    };
    const double mean = expect_uniform(inv_itt, prior, grid.n_z, grid.n_t, grid.eps);
    return mean / (2.0 * snr * geom.l_s());
}

void write_ecrb_csv(std::ostream& os, const std::vector<EcrbCurvePoint>& rows) {
    os << "snr_db,ecrb_z,ecrb_t,ecrb_ao_t\n";
    for (const auto& r : rows)
        os << fmt_double(r.snr_db) << ',' << fmt_double(r.ecrb_z) << ',' << fmt_double(r.ecrb_t) << ','
           << fmt_double(r.ecrb_ao_t) << '\n';
}

}  // namespace nfepm
