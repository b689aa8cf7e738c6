#include "nfepm/bounds_zzb.hpp"

#include "nfepm/csv.hpp"
#include "nfepm/errors.hpp"

#include <cmath>
#include <ostream>

namespace nfepm {

namespace {

double t_y_of(double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); }

// sqrt(1 - (t + d)^2) - sqrt(1 - t^2) without cancellation for small d.
double delta_s(double t, double d) {
    const double s1 = t_y_of(t);
    const double s2 = t_y_of(t + d);
    const double den = s1 + s2;
    if (den == 0.0) return 0.0;
    return -d * (2.0 * t + d) / den;
}

double channel_magnitude(double z, double t, double y) {
    const double r = std::sqrt(y * y + z * z);
    return std::sqrt(z) * (y * t + z * t_y_of(t)) / std::pow(r, 2.5);
}

}  // namespace

void validate(const HypothesisPair& p, const PriorUniform& prior) {
    require(p.delta_z >= 0.0 && p.delta_z <= prior.ht(), ErrorKind::InvalidArgument, "delta_z outside [0, H_t]");
    require(p.delta_t >= 0.0 && p.delta_t < 1.0, ErrorKind::InvalidArgument, "delta_t outside [0, 1)");
    require(p.theta_z >= prior.h1() && p.theta_z <= prior.h2() - p.delta_z, ErrorKind::InvalidArgument,
            "theta_z outside [H1, H2 - delta_z]");
    require(p.theta_t >= 0.0 && p.theta_t < 1.0 - p.delta_t, ErrorKind::InvalidArgument,
            "theta_t outside [0, 1 - delta_t)");
}

double ambiguity_function(const HypothesisPair& p, double y, const Wave& wave) {
    const double z1 = p.theta_z, z2 = p.theta_z + p.delta_z;
    const double h1 = channel_magnitude(z1, p.theta_t, y);
    const double h2 = channel_magnitude(z2, p.theta_t + p.delta_t, y);
    const double angle = p.delta_z * (z1 + z2) / (std::sqrt(y * y + z2 * z2) + std::sqrt(y * y + z1 * z1));
    // h1^2 + h2^2 - 2 h1 h2 cos(k angle) rewritten to avoid cancellation for close hypotheses.
    const double half = std::sin(0.5 * wave.k() * angle);
    return (h2 - h1) * (h2 - h1) + 4.0 * h1 * h2 * half * half;
}

double mu_L(const HypothesisPair& p, double snr, const ArrayGeometry& geom, const Wave& wave,
            const QuadratureSpec& spec) {
    require(snr >= 0.0, ErrorKind::InvalidArgument, "SNR must be non-negative");
    require(!geom.is_unbounded(), ErrorKind::InvalidArgument, "mu_L needs a finite D_r");
    if (snr == 0.0) return 0.0;
    const auto r = integrate([&](double y) { return ambiguity_function(p, y, wave); }, 0.0, geom.d_r(), spec);
    return snr * geom.l_s() * r.value;
}

double p_min_from_mu(double mu) { return 0.5 * std::erfc(std::sqrt(std::max(0.0, mu)) / 2.0); }

double p_min_general(double mu, double pr0, double pr1) {
    require(pr0 > 0.0 && pr1 > 0.0, ErrorKind::InvalidArgument, "hypothesis priors must be positive");
    if (mu <= 0.0) return std::min(pr0, pr1);
    const double ln = std::log(pr1 / pr0);
    const double s = std::sqrt(2.0 * mu);
    return pr0 * q_function((mu - ln) / s) + pr1 * q_function((mu + ln) / s);
}

double p_min(const HypothesisPair& p, double snr, const ArrayGeometry& geom, const Wave& wave) {
    return p_min_from_mu(mu_L(p, snr, geom, wave));
}

double AmbiguityGram::quadratic(double t1, double dt) const {
    const double c[4] = {t1, t_y_of(t1), dt, delta_s(t1, dt)};
    double acc = 0.0;
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            acc += (i == j ? 1.0 : 2.0) * g[idx++] * c[i] * c[j];
        }
    }
    return std::max(0.0, acc);
}

AmbiguityGram ambiguity_gram(double z1, double dz, const ArrayGeometry& geom, const Wave& wave,
                             const QuadratureSpec& spec) {
    require(!geom.is_unbounded(), ErrorKind::InvalidArgument, "ambiguity_gram needs a finite D_r");
    const double z2 = z1 + dz;
    const double k = wave.k();
    auto f = [&](double y) {
        const double r1 = std::sqrt(y * y + z1 * z1);
        const double r2 = std::sqrt(y * y + z2 * z2);
        const double dr = dz * (z1 + z2) / (r1 + r2);
        const double a1 = std::sqrt(z1) / std::pow(r1, 2.5);
        const double a2 = std::sqrt(z2) / std::pow(r2, 2.5);
        // Common factor e^{jk r1} removed; P - Q formed from the phase difference.
        const cplx p = a2 * std::polar(1.0, k * dr);
        const double half = std::sin(0.5 * k * dr);
        const cplx pq = a2 * cplx(-2.0 * half * half, std::sin(k * dr)) + (a2 - a1);
        const cplx b[4] = {y * pq, z2 * pq + a1 * dz, p * y, p * z2};
        std::array<double, 10> out{};
        int idx = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) out[idx++] = (std::conj(b[i]) * b[j]).real();
        return out;
    };
    AmbiguityGram gram;
    gram.g = integrate_n<10>(f, 0.0, geom.d_r(), spec).value;
    return gram;
}

double mu_L_ao(double z, double theta_t, double delta_t, double snr, const ArrayGeometry& geom) {
    require(theta_t >= 0.0 && theta_t + delta_t < 1.0 && delta_t >= 0.0, ErrorKind::InvalidArgument,
            "need 0 <= theta_t, theta_t + delta_t < 1");
    const double ft = -delta_s(theta_t, delta_t);
    const double c = snr * geom.l_s();
    if (geom.is_unbounded()) {
        const double u = delta_t - ft;
        return c / (3.0 * z) * (u * u + ft * ft);
    }
    const double tau = geom.d_r() / z;
    const double s = tau * tau + 1.0;
    const double num = delta_t * delta_t * tau * tau * tau + 2.0 * delta_t * ft +
                       ft * ft * (2.0 * tau * tau + 3.0) * tau;
    return c * (num / (3.0 * z * std::pow(s, 1.5)) - 2.0 * delta_t * ft / (3.0 * z));
}

ZzbEngine::ZzbEngine(const PriorUniform& prior, const ArrayGeometry& geom, const Wave& wave, const ZzbGrid& grid)
    : prior_(prior), geom_(geom), wave_(wave), grid_(grid) {
    require(grid.n_delta >= 2 && grid.n_theta_z >= 2 && grid.n_theta_t >= 2 && grid.n_max_search >= 1,
            ErrorKind::InvalidArgument, "ZZB grid sizes too small");
    require(grid.max_refine >= 0, ErrorKind::InvalidArgument, "max_refine must be >= 0");
}

const std::vector<AmbiguityGram>& ZzbEngine::grams(double dz) {
    auto it = cache_.find(dz);
    if (it != cache_.end()) return it->second;
    std::vector<AmbiguityGram> gs;
    const double width = prior_.ht() - dz;
    if (width > 0.0) {
        gs.reserve(grid_.n_theta_z);
        for (int i = 0; i < grid_.n_theta_z; ++i) {
            const double z1 = prior_.h1() + (i + 0.5) * width / grid_.n_theta_z;
            gs.push_back(ambiguity_gram(z1, dz, geom_, wave_, grid_.quad));
        }
    }
    return cache_.emplace(dz, std::move(gs)).first->second;
}

// Midpoint approximation of the double integral of Q over the admissible box.
double ZzbEngine::theta_sum(const std::vector<AmbiguityGram>& gs, double dz, double dt, double snr) const {
    const double wz = prior_.ht() - dz;
    const double wt = 1.0 - dt;
    if (gs.empty() || wz <= 0.0 || wt <= 0.0) return 0.0;
    const double c = snr * geom_.l_s();
    double sum = 0.0;
    for (const auto& g : gs) {
        for (int m = 0; m < grid_.n_theta_t; ++m) {
            const double t1 = (m + 0.5) * wt / grid_.n_theta_t;
            sum += p_min_from_mu(c * g.quadratic(t1, dt));
        }
    }
    return sum * (wz / gs.size()) * (wt / grid_.n_theta_t);
}

double ZzbEngine::bracket_z(double dz, double snr) {
    const auto& gs = grams(dz);
    const int n = grid_.n_max_search;
    double step = 1.0 / n;
    double best_x = 0.0;
    double best = theta_sum(gs, dz, 0.0, snr);
    for (int j = 1; j < n; ++j) {
        const double v = theta_sum(gs, dz, j * step, snr);
        if (v > best) best = v, best_x = j * step;
    }
    for (int level = 0; level < grid_.max_refine; ++level) {
        const double lo = std::max(0.0, best_x - step);
        const double hi = std::min(1.0 - 1e-12, best_x + step);
        step = (hi - lo) / (n + 1);
        const double centre = best_x;
        for (int j = 1; j <= n; ++j) {
            const double x = lo + j * step;
            if (x == centre) continue;
            const double v = theta_sum(gs, dz, x, snr);
            if (v > best) best = v, best_x = x;
        }
    }
    return best;
}

double ZzbEngine::bracket_t(double dt, double snr) {
    const int n = grid_.n_max_search;
    double step = prior_.ht() / n;
    double best_x = 0.0;
    double best = theta_sum(grams(0.0), 0.0, dt, snr);
    for (int j = 1; j < n; ++j) {
        const double dz = j * step;
        const double v = theta_sum(grams(dz), dz, dt, snr);
        if (v > best) best = v, best_x = dz;
    }
    for (int level = 0; level < grid_.max_refine; ++level) {
        const double lo = std::max(0.0, best_x - step);
        const double hi = std::min(prior_.ht(), best_x + step);
        step = (hi - lo) / (n + 1);
        const double centre = best_x;
        for (int j = 1; j <= n; ++j) {
            const double dz = lo + j * step;
            if (dz == centre) continue;
            const double v = theta_sum(grams(dz), dz, dt, snr);
            if (v > best) best = v, best_x = dz;
        }
    }
    return best;
}

double ZzbEngine::bracket_ao(double dt, double snr) const {
    const double wt = 1.0 - dt;
    if (wt <= 0.0) return 0.0;
    const int nz = grid_.n_theta_z, nt = grid_.n_theta_t;
    double sum = 0.0;
    for (int i = 0; i < nz; ++i) {
        const double z = prior_.h1() + (i + 0.5) * prior_.ht() / nz;
        for (int m = 0; m < nt; ++m) {
            const double t1 = (m + 0.5) * wt / nt;
            sum += p_min_from_mu(mu_L_ao(z, t1, dt, snr, geom_));
        }
    }
    return sum / nz * (wt / nt);
}

// Integral of bracket(d) * d over [0, span], cut where the bracket has
// dropped below `truncation` of its peak value at d = 0.
template <class B>
double ZzbEngine::outer(B&& bracket, double span, double peak) const {
    const double floor_value = grid_.truncation * peak;
    double cutoff = span;
    for (int j = 0; j <= 60; ++j) {
        const double d = std::ldexp(span, -j);
        if (bracket(d) >= floor_value) {
            cutoff = (j == 0) ? span : std::ldexp(span, -j + 1);
            break;
        }
        cutoff = d;
    }
    const auto& rule = gauss_legendre(7);
    const double h = cutoff / grid_.n_delta;
    double total = 0.0;
    for (int p = 0; p < grid_.n_delta; ++p) {
        const double c = (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double d = c + 0.5 * h * rule.nodes[i];
            total += 0.5 * h * rule.weights[i] * d * bracket(d);
        }
    }
    return total;
}

double ZzbEngine::zzb_z(double snr) {
    require(snr >= 0.0, ErrorKind::InvalidArgument, "SNR must be non-negative");
    const double span = prior_.ht();
    const double val = outer([&](double d) { return bracket_z(d, snr); }, span, 0.5 * prior_.ht());
    return val / prior_.ht();
}

double ZzbEngine::zzb_t(double snr) {
    require(snr >= 0.0, ErrorKind::InvalidArgument, "SNR must be non-negative");
    const double val = outer([&](double d) { return bracket_t(d, snr); }, 1.0, 0.5 * prior_.ht());
    return val / prior_.ht();
}

double ZzbEngine::zzb_ao_t(double snr) const {
    require(snr >= 0.0, ErrorKind::InvalidArgument, "SNR must be non-negative");
    return outer([&](double d) { return bracket_ao(d, snr); }, 1.0, 0.5);
}

double zzb_z(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const Wave& wave,
             const ZzbGrid& grid) {
    return ZzbEngine(prior, geom, wave, grid).zzb_z(snr);
}

double zzb_t(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const Wave& wave,
             const ZzbGrid& grid) {
    return ZzbEngine(prior, geom, wave, grid).zzb_t(snr);
}

double zzb_ao_t(const PriorUniform& prior, double snr, const ArrayGeometry& geom, const ZzbGrid& grid) {
    // mu for the attitude-only problem does not involve the wavelength.
    return ZzbEngine(prior, geom, Wave(1.0), grid).zzb_ao_t(snr);
}

std::pair<double, double> zzb_asymptotic(const PriorUniform& prior) {
    return {prior.ht() * prior.ht() / 12.0, 1.0 / 12.0};
}

void write_zzb_csv(std::ostream& os, const std::vector<ZzbCurvePoint>& rows) {
    os << "snr_db,zzb_z,zzb_t,zzb_ao_t\n";
    for (const auto& r : rows)
        os << fmt_double(r.snr_db) << ',' << fmt_double(r.zzb_z) << ',' << fmt_double(r.zzb_t) << ','
           << fmt_double(r.zzb_ao_t) << '\n';
}

}  // namespace nfepm
