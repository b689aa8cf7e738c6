#pragma once

#include "nfepm/em_channel.hpp"
#include "nfepm/geometry.hpp"
#include "nfepm/numerics.hpp"
#include "nfepm/observation.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nfepm {

struct MapGrid {
    int n_z = 256;
    int n_t = 128;
    int refine_levels = 2;
    double eps = kAttitudeEps;
};

struct MseReport {
    double snr_db = 0.0;
    double mse_z = 0.0;
    double mse_t = 0.0;
    double se_z = 0.0;
    double se_t = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

double log_likelihood(const PoseCPL& pose, const VoltageVector& vtilde, const ArrayGeometry& geom,
                      const Wave& wave, const NoiseSpec& noise);

// Grid argmax over the prior box, then `refine_levels` rounds of a grid of the
// same size spanning three cells around the incumbent. Ties go to the
// smallest (z, t) index.
PoseCPL map_estimate(const VoltageVector& vtilde, const PriorUniform& prior, const ArrayGeometry& geom,
                     const Wave& wave, const NoiseSpec& noise, const MapGrid& grid = {});

MseReport monte_carlo_mse(const PriorUniform& prior, const ArrayGeometry& geom, const Wave& wave,
                          double snr_db, int trials, std::uint64_t seed, const MapGrid& grid = {});

void write_mse_csv(std::ostream& os, const std::vector<MseReport>& rows);

}  // namespace nfepm
