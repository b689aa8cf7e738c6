#pragma once

#include "nfepm/em_channel.hpp"
#include "nfepm/geometry.hpp"
#include "nfepm/observation.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace nfepm {

struct DecoupledVoltage {
    double psi;    // >= 0
    double theta;  // principal phase in [0, 2 pi)
};

DecoupledVoltage decouple(cplx v);

// Estimates are complex only in diagnostic mode, where a negative radicand is
// carried through instead of raising NegativeRadicand.
struct SolveResult {
    cplx z_hat;
    cplx t_hat;
    Region region = Region::Unsupported;
    bool diagnostic = false;
    bool t_out_of_range = false;

    double z() const { return z_hat.real(); }
    double t() const { return t_hat.real(); }
};

SolveResult solve_case1(cplx v_a, cplx v_b, double y_a, double y_b, const ArrayGeometry& geom,
                        const Wave& wave, bool diagnostic = false);
SolveResult solve_case2_pa(cplx v_a, cplx v_b, double y_a, double y_b, const ArrayGeometry& geom,
                           const Wave& wave, bool diagnostic = false);
// Uses elements 1 and 2.
SolveResult solve_case2_sc(cplx v_1, cplx v_2, const ArrayGeometry& geom, const Wave& wave,
                           bool diagnostic = false);

// Recovers t_z from two amplitudes once z_t is known; complex-safe.
cplx attitude_from_amplitudes(double psi_a, double psi_b, double y_a, double y_b, cplx z,
                              const ArrayGeometry& geom, const Wave& wave);

SolveResult solve(const VoltageVector& v, const PriorUniform& prior, const ArrayGeometry& geom,
                  const Wave& wave, int alpha_idx = 1, int beta_idx = 0);

// beta_idx = 0 selects N / 2.
int default_beta(const ArrayGeometry& geom);

struct RmseResult {
    cplx rmse_z;
    cplx rmse_t;
    Region data_case = Region::Unsupported;
    Region solver_case = Region::Unsupported;
    int u = 0;
    int v = 0;
};

// Noise-free RMSE over a U x V grid: z_t on [H1, H2] with both ends,
// t_z = j / V for j = 0..V-1. `solver` picks a different case solver for the
// mismatch rows and switches diagnostic mode on.
RmseResult rmse_grid(Region data_case, const PriorUniform& prior, const ArrayGeometry& geom,
                     const Wave& wave, int U, int V, std::optional<Region> solver = std::nullopt,
                     int alpha_idx = 1, int beta_idx = 0);

struct Table2Row {
    std::string label;
    Region data_case;
    Wave wave;
    ArrayGeometry geom;
    PriorUniform prior;
    RmseResult matched;
    std::optional<RmseResult> mismatched;
};

void write_table2_csv(std::ostream& os, const std::vector<Table2Row>& rows);

}  // namespace nfepm
