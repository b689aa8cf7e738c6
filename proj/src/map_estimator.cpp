#include "nfepm/map_estimator.hpp"

#include "nfepm/csv.hpp"
#include "nfepm/errors.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace nfepm {

namespace {

// Residual energy as a function of t for one fixed z:
// |v|^2 - 2 Re(t <P, v> + t_y <Q, v>) + t^2 |P|^2 + 2 t t_y Re<P, Q> + t_y^2 |Q|^2.
struct RowCoeffs {
    double vv, pv, qv, pp, pq, qq;

    double residual(double t) const {
        const double ty = std::sqrt(1.0 - t * t);
        return vv - 2.0 * (t * pv + ty * qv) + t * t * pp + 2.0 * t * ty * pq + ty * ty * qq;
    }
};

RowCoeffs row_coeffs(double z, const VoltageVector& v, const ArrayGeometry& geom, const Wave& wave) {
    RowCoeffs c{};
    const double scale = wave.e_in() * geom.l_s() * std::sqrt(z);
    for (int n = 1; n <= geom.n(); ++n) {
        const double y = geom.element_y(n);
        const double r = std::sqrt(y * y + z * z);
        const cplx a = std::polar(scale / std::pow(r, 2.5), wave.k() * r);
        const cplx p = a * y;
        const cplx q = a * z;
        const cplx vn = v.values[n - 1];
        c.vv += std::norm(vn);
        c.pv += (std::conj(p) * vn).real();
        c.qv += (std::conj(q) * vn).real();
        c.pp += std::norm(p);
        c.pq += (std::conj(p) * q).real();
        c.qq += std::norm(q);
    }
    return c;
}

constexpr int kMaxRecentre = 16;

struct Box {
    double z_lo, z_hi, t_lo, t_hi;
};

double node(double lo, double hi, int i, int n) { return (n == 1) ? lo : lo + (hi - lo) * i / (n - 1); }

}  // namespace

double log_likelihood(const PoseCPL& pose, const VoltageVector& vtilde, const ArrayGeometry& geom,
                      const Wave& wave, const NoiseSpec& noise) {
    require(noise.sigma2 > 0.0, ErrorKind::ZeroNoise, "log-likelihood needs sigma2 > 0");
    const auto model = noiseless_voltages(pose, geom, wave);
    double acc = 0.0;
    for (std::size_t n = 0; n < model.values.size(); ++n) acc += std::norm(vtilde.values[n] - model.values[n]);
    return -acc / noise.sigma2;
}

PoseCPL map_estimate(const VoltageVector& vtilde, const PriorUniform& prior, const ArrayGeometry& geom,
                     const Wave& wave, const NoiseSpec& noise, const MapGrid& grid) {
    require(grid.n_z >= 2 && grid.n_t >= 2 && grid.refine_levels >= 0, ErrorKind::InvalidArgument,
            "MAP grid needs n_z, n_t >= 2");
    (void)noise;  // the argmax does not depend on sigma2
    const double t_max = 1.0 - grid.eps;
    double best_z = prior.h1(), best_t = 0.0;
    // Returns true when the winner sits on an edge of `box` that is not a prior edge.
    auto search = [&](const Box& box) {
        double best = std::numeric_limits<double>::infinity();
        int bi = 0, bj = 0;
        for (int i = 0; i < grid.n_z; ++i) {
            const double z = node(box.z_lo, box.z_hi, i, grid.n_z);
            const auto c = row_coeffs(z, vtilde, geom, wave);
            for (int j = 0; j < grid.n_t; ++j) {
                const double t = node(box.t_lo, box.t_hi, j, grid.n_t);
                const double res = c.residual(t);
                if (res < best) {
                    best = res;
                    best_z = z;
                    best_t = t;
                    bi = i;
                    bj = j;
                }
            }
        }
        return (bi == 0 && box.z_lo > prior.h1()) || (bi == grid.n_z - 1 && box.z_hi < prior.h2()) ||
               (bj == 0 && box.t_lo > 0.0) || (bj == grid.n_t - 1 && box.t_hi < t_max);
    };
    auto around = [&](double hz, double ht) {
        return Box{std::max(prior.h1(), best_z - hz), std::min(prior.h2(), best_z + hz), std::max(0.0, best_t - ht),
                   std::min(t_max, best_t + ht)};
    };

    Box box{prior.h1(), prior.h2(), 0.0, t_max};
    search(box);
    double hz = 1.5 * (box.z_hi - box.z_lo) / (grid.n_z - 1);
    double ht = 1.5 * t_max / (grid.n_t - 1);
    for (int level = 0; level < grid.refine_levels; ++level) {
        box = around(hz, ht);
        // The z-t ridge can leave the coarse winner several cells from the optimum; follow it.
        for (int step = 0; step < kMaxRecentre && search(box); ++step) box = around(hz, ht);
        hz = 1.5 * 2 * hz / (grid.n_z - 1);
        ht = 1.5 * 2 * ht / (grid.n_t - 1);
    }
    return PoseCPL(best_z, best_t);
}

MseReport monte_carlo_mse(const PriorUniform& prior, const ArrayGeometry& geom, const Wave& wave,
                          double snr_db, int trials, std::uint64_t seed, const MapGrid& grid) {
    require(trials >= 1, ErrorKind::InvalidArgument, "trials must be >= 1");
    const NoiseSpec noise(sigma2_for_snr_db(wave, snr_db), seed);
    // Index beyond every element index; reserved for drawing the true pose.
    const std::uint64_t pose_stream = std::numeric_limits<std::uint64_t>::max();
    double sz = 0, sz2 = 0, st = 0, st2 = 0;
    for (int k = 0; k < trials; ++k) {
        auto gen = rng_stream(seed, k, pose_stream);
        std::uniform_real_distribution<double> uz(prior.h1(), prior.h2());
        std::uniform_real_distribution<double> ut(0.0, 1.0);
        const double z = uz(gen);
        const double t = ut(gen);
        const PoseCPL truth(z, t);
        const auto obs = observe(noiseless_voltages(truth, geom, wave), noise, k);
        const auto est = map_estimate(obs, prior, geom, wave, noise, grid);
        const double ez = (est.z_t - z) * (est.z_t - z);
        const double et = (est.t_z - t) * (est.t_z - t);
        sz += ez;
        sz2 += ez * ez;
        st += et;
        st2 += et * et;
    }
    MseReport r;
    r.snr_db = snr_db;
    r.trials = trials;
    r.seed = seed;
    r.mse_z = sz / trials;
    r.mse_t = st / trials;
    if (trials > 1) {
        const double vz = std::max(0.0, (sz2 - trials * r.mse_z * r.mse_z) / (trials - 1));
        const double vt = std::max(0.0, (st2 - trials * r.mse_t * r.mse_t) / (trials - 1));
        r.se_z = std::sqrt(vz / trials);
        r.se_t = std::sqrt(vt / trials);
    }
    return r;
}

void write_mse_csv(std::ostream& os, const std::vector<MseReport>& rows) {
    os << "snr_db,mse_z,mse_t,se_z,se_t,trials,seed\n";
    for (const auto& r : rows)
        os << fmt_double(r.snr_db) << ',' << fmt_double(r.mse_z) << ',' << fmt_double(r.mse_t) << ','
           << fmt_double(r.se_z) << ',' << fmt_double(r.se_t) << ',' << r.trials << ',' << r.seed << '\n';
}

}  // namespace nfepm
