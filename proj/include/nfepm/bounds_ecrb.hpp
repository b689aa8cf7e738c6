#pragma once

#include "nfepm/em_channel.hpp"
#include "nfepm/geometry.hpp"
#include "nfepm/numerics.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace nfepm {

// Coefficient functions of tau = D_r / z_t, s = tau^2 + 1.
namespace ftau {
double f1(double tau);
double f2(double tau);
double f3(double tau);
double f4(double tau);
double f5(double tau);
double f6(double tau);
double f7(double tau);
double f8(double tau);
double f9(double tau);
double f10(double tau);
double f11(double tau);
double f12(double tau);
}  // namespace ftau

struct FisherInfo {
    double i_zz1 = 0, i_zz2 = 0, i_tt = 0, i_zt = 0;
    double f_zz = 0, f_tt = 0, f_zt = 0;

    double det() const { return f_zz * f_tt - f_zt * f_zt; }
};

FisherInfo fim_closed(const PoseCPL& pose, double snr, const ArrayGeometry& geom, const Wave& wave);
FisherInfo fim_quadrature(const PoseCPL& pose, double snr, const ArrayGeometry& geom, const Wave& wave,
                          const QuadratureSpec& spec = {});

// Derivatives of the on-axis channel.
cplx dh_dz(const PoseCPL& pose, double y_r, const Wave& wave);
cplx dh_dt(const PoseCPL& pose, double y_r, const Wave& wave);

// I_tt for an unbounded strip.
double i_tt_unbounded(double z_t, double t_z);

struct EcrbGrid {
    int n_z = 64;
    int n_t = 64;
    double eps = kAttitudeEps;
    bool skip_singular = false;
};

struct EcrbResult {
    double ecrb_z = 0.0;
    double ecrb_t = 0.0;
    std::vector<std::pair<double, double>> skipped;  // (z_t, t_z) samples with det <= 0
};

EcrbResult ecrb(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const Wave& wave,
                const EcrbGrid& grid = {});

struct EcrbAsymptotic {
    double ecrb_z = 0.0;
    double ecrb_t = 0.0;
    double ecrb_z_far = 0.0;  // z_t >> lambda simplification
};

EcrbAsymptotic ecrb_asymptotic(const PriorUniform& prior, double snr, const ArrayGeometry& geom,
                               const Wave& wave);

double ecrb_ao(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const EcrbGrid& grid = {});

struct EcrbCurvePoint {
    double snr_db;
    double ecrb_z;
    double ecrb_t;
    double ecrb_ao_t;
};

void write_ecrb_csv(std::ostream& os, const std::vector<EcrbCurvePoint>& rows);

}  // namespace nfepm
