#pragma once

#include "nfepm/em_channel.hpp"
#include "nfepm/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nfepm {

struct VoltageVector {
    VoltageVector(std::vector<cplx> values, ArrayGeometry geom);

    std::vector<cplx> values;
    ArrayGeometry geom;
};

struct NoiseSpec {
    NoiseSpec(double sigma2, std::uint64_t seed = 0);

    double sigma2;
    std::uint64_t seed;
};

VoltageVector noiseless_voltages(const PoseCPL& pose, const ArrayGeometry& geom, const Wave& wave);

// Adds circular complex Gaussian noise, sigma2 / 2 per quadrature component.
// Element n of trial `trial` draws from its own (seed, trial, n) stream.
VoltageVector observe(const VoltageVector& v, const NoiseSpec& noise, std::uint64_t trial = 0);

double snr(const Wave& wave, const NoiseSpec& noise);
double snr_db(const Wave& wave, const NoiseSpec& noise);
double db_to_ratio(double db);
double ratio_to_db(double ratio);
// Noise variance giving the requested SNR for this wave.
double sigma2_for_snr_db(const Wave& wave, double snr_db);

void write_csv(std::ostream& os, const VoltageVector& v);

}  // namespace nfepm
