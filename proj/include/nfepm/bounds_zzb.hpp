#pragma once

#include "nfepm/em_channel.hpp"
#include "nfepm/geometry.hpp"
#include "nfepm/numerics.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace nfepm {

struct HypothesisPair {
    double theta_z;
    double theta_t;
    double delta_z;
    double delta_t;
};

// Checks the pair against the box of admissible hypotheses for `prior`.
void validate(const HypothesisPair& pair, const PriorUniform& prior);

struct ZzbGrid {
    int n_delta = 64;       // outer panels, 7 Gauss nodes each
    int n_theta_z = 64;     // midpoint nodes in theta_z
    int n_theta_t = 64;     // midpoint nodes in theta_t
    int n_max_search = 16;  // uniform candidates for the inner max
    int max_refine = 0;     // zoom levels around the best candidate
    double truncation = 1e-12;
    QuadratureSpec quad{1e-15, 1e-10, 4000, 1};
};

double ambiguity_function(const HypothesisPair& pair, double y_r, const Wave& wave);

double mu_L(const HypothesisPair& pair, double snr, const ArrayGeometry& geom, const Wave& wave,
            const QuadratureSpec& spec = {});

// Equal-prior minimum error probability for a given mean mu.
double p_min_from_mu(double mu);
// Two-hypothesis form with priors pr0, pr1.
double p_min_general(double mu, double pr0, double pr1);
double p_min(const HypothesisPair& pair, double snr, const ArrayGeometry& geom, const Wave& wave);

// Gram matrix of the channel difference basis for fixed (theta_z, delta_z).
// mu = SNR * l_s * c^T G c with c = (t1, s1, t2 - t1, s2 - s1), s = sqrt(1 - t^2).
struct AmbiguityGram {
    std::array<double, 10> g{};  // upper triangle, row major

    double quadratic(double t1, double delta_t) const;
};

AmbiguityGram ambiguity_gram(double theta_z, double delta_z, const ArrayGeometry& geom, const Wave& wave,
                             const QuadratureSpec& spec = {});

double mu_L_ao(double z_t, double theta_t, double delta_t, double snr, const ArrayGeometry& geom);

class ZzbEngine {
public:
    ZzbEngine(const PriorUniform& prior, const ArrayGeometry& geom, const Wave& wave, const ZzbGrid& grid = {});

    double zzb_z(double snr);
    double zzb_t(double snr);
    double zzb_ao_t(double snr) const;

    // Inner brackets, exposed for diagnostics.
    double bracket_z(double delta_z, double snr);
    double bracket_t(double delta_t, double snr);
    double bracket_ao(double delta_t, double snr) const;

private:
    const std::vector<AmbiguityGram>& grams(double delta_z);
    double theta_sum(const std::vector<AmbiguityGram>& gs, double delta_z, double delta_t, double snr) const;
    template <class B>
    double outer(B&& bracket, double span, double peak) const;

    PriorUniform prior_;
    ArrayGeometry geom_;
    Wave wave_;
    ZzbGrid grid_;
    std::map<double, std::vector<AmbiguityGram>> cache_;
};

double zzb_z(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const Wave& wave,
             const ZzbGrid& grid = {});
double zzb_t(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const Wave& wave,
             const ZzbGrid& grid = {});
double zzb_ao_t(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const ZzbGrid& grid = {});

// Prior variances (H_t^2 / 12, 1 / 12).
std::pair<double, double> zzb_asymptotic(const PriorUniform& prior);

struct ZzbCurvePoint {
    double snr_db;
    double zzb_z;
    double zzb_t;
    double zzb_ao_t;
};

void write_zzb_csv(std::ostream& os, const std::vector<ZzbCurvePoint>& rows);

}  // namespace nfepm
