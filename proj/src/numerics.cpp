#include "nfepm/numerics.hpp"

#include "nfepm/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nfepm {

namespace bq = boost::math::quadrature;

const GaussKronrodRule& gauss_kronrod21() {
    static const GaussKronrodRule rule = [] {
        const auto& kx = bq::gauss_kronrod<double, 21>::abscissa();
        const auto& kw = bq::gauss_kronrod<double, 21>::weights();
        const auto& gw = bq::gauss<double, 10>::weights();
        // Boost stores the non-negative half; index 0 is the centre node, and
        // the Gauss nodes sit at odd indices.
        GaussKronrodRule r{};
        std::size_t j = 0;
        for (std::size_t i = kx.size(); i-- > 1;) {
            r.nodes[j] = -kx[i];
            r.kronrod_weights[j] = kw[i];
            r.gauss_weights[j] = (i % 2 == 1) ? gw[i / 2] : 0.0;
            ++j;
        }
        for (std::size_t i = 0; i < kx.size(); ++i) {
            r.nodes[j] = kx[i];
            r.kronrod_weights[j] = kw[i];
            r.gauss_weights[j] = (i % 2 == 1) ? gw[i / 2] : 0.0;
            ++j;
        }
        return r;
    }();
    return rule;
}

namespace {

template <unsigned N>
GaussRule make_gauss() {
    const auto& x = bq::gauss<double, N>::abscissa();
    const auto& w = bq::gauss<double, N>::weights();
    GaussRule r;
    const bool odd = (N % 2) == 1;
    for (std::size_t i = x.size(); i-- > 0;) {
        if (odd && i == 0) continue;
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.nodes.push_back(x[i]);
        r.weights.push_back(w[i]);
    }
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static const GaussRule g7 = make_gauss<7>();
    static const GaussRule g10 = make_gauss<10>();
    static const GaussRule g15 = make_gauss<15>();
    static const GaussRule g20 = make_gauss<20>();
    switch (n) {
        case 7: return g7;
        case 10: return g10;
        case 15: return g15;
        case 20: return g20;
        default: throw Error(ErrorKind::InvalidArgument, "gauss_legendre: unsupported order");
    }
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
    auto g = [&f](double x) { return std::array<double, 1>{f(x)}; };
    const auto r = integrate_n<1>(g, a, b, spec);
    return QuadResult{r.value[0], r.error, r.subdivisions};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double expect_uniform(const std::function<double(double, double)>& f, const PriorUniform& prior,
                      int n_z, int n_t, double eps) {
    require(n_z >= 1 && n_t >= 1, ErrorKind::InvalidArgument, "expect_uniform: grid sizes must be >= 1");
    require(eps >= 0.0 && eps < 1.0, ErrorKind::InvalidArgument, "expect_uniform: eps outside [0, 1)");
    const double dz = prior.ht() / n_z;
    const double dt = (1.0 - eps) / n_t;
    double sum = 0.0;
    for (int i = 0; i < n_z; ++i) {
        const double z = prior.h1() + (i + 0.5) * dz;
        for (int j = 0; j < n_t; ++j) sum += f(z, (j + 0.5) * dt);
    }
    return sum / (static_cast<double>(n_z) * n_t);
}

std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(trial), hi(trial), lo(index), hi(index)};
    return std::mt19937_64(seq);
}

}  // namespace nfepm
