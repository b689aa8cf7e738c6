#pragma once

#include "nfepm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <vector>

namespace nfepm {

inline constexpr double kPi = 3.14159265358979323846;

// Upper cap on the t_z grid: the prior is open at 1 and t_y -> 0 there.
inline constexpr double kAttitudeEps = 1e-4;

struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    int initial_panels = 1;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

template <std::size_t M>
struct QuadResultN {
    std::array<double, M> value{};
    double error = 0.0;
    int subdivisions = 0;
};

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1].
struct GaussKronrodRule {
    std::array<double, 21> nodes;
    std::array<double, 21> kronrod_weights;
    std::array<double, 21> gauss_weights;  // zero at Kronrod-only nodes
};
const GaussKronrodRule& gauss_kronrod21();

// n-point Gauss-Legendre nodes and weights on [-1, 1]; n in {7, 10, 15, 20}.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

namespace detail {

template <std::size_t M>
struct Panel {
    double a, b;
    std::array<double, M> value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <std::size_t M, class F>
Panel<M> gk_panel(F& f, double a, double b) {
    const auto& rule = gauss_kronrod21();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, M> k{}, g{};
    for (std::size_t i = 0; i < 21; ++i) {
        const std::array<double, M> v = f(c + h * rule.nodes[i]);
        for (std::size_t m = 0; m < M; ++m) {
            k[m] += rule.kronrod_weights[i] * v[m];
            g[m] += rule.gauss_weights[i] * v[m];
        }
    }
    Panel<M> p{a, b, {}, 0.0};
    for (std::size_t m = 0; m < M; ++m) {
        p.value[m] = h * k[m];
        p.error = std::max(p.error, std::abs(h * (k[m] - g[m])));
    }
    return p;
}

}  // namespace detail

// Adaptive Gauss-Kronrod for vector-valued integrands; the error test uses the
// max-norm across components.
template <std::size_t M, class F>
QuadResultN<M> integrate_n(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    require(a <= b, ErrorKind::InvalidArgument, "integrate: a > b");
    QuadResultN<M> out;
    if (a == b) return out;

    std::priority_queue<detail::Panel<M>> heap;
    const int n0 = std::max(1, spec.initial_panels);
    for (int i = 0; i < n0; ++i) {
        const double lo = a + (b - a) * i / n0;
        const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
        heap.push(detail::gk_panel<M>(f, lo, hi));
    }

    auto totals = [&](std::array<double, M>& val, double& err) {
        val.fill(0.0);
        err = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            const auto& p = copy.top();
            for (std::size_t m = 0; m < M; ++m) val[m] += p.value[m];
            err += p.error;
            copy.pop();
        }
    };

    std::array<double, M> value{};
    double err = 0.0;
    totals(value, err);
    int splits = 0;
    while (true) {
        double scale = 0.0;
        for (double v : value) scale = std::max(scale, std::abs(v));
        if (err <= std::max(spec.abs_tol, spec.rel_tol * scale)) break;
        if (splits >= spec.max_subdivisions) {
            throw Error(ErrorKind::QuadratureFailure,
                        "tolerance not reached after " + std::to_string(splits) +
                            " subdivisions (error estimate " + std::to_string(err) + ")");
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk_panel<M>(f, worst.a, mid);
        auto right = detail::gk_panel<M>(f, mid, worst.b);
        for (std::size_t m = 0; m < M; ++m)
            value[m] += left.value[m] + right.value[m] - worst.value[m];
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
        // Incremental sums drift; resynchronise now and then.
        if (splits % 64 == 0) totals(value, err);
    }
    totals(value, err);
    out.value = value;
    out.error = err;
    out.subdivisions = splits;
    return out;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

// Standard normal tail probability.
double q_function(double x);

struct PriorUniform;

// Midpoint tensor-grid mean of f over [H1, H2] x [0, 1 - eps].
double expect_uniform(const std::function<double(double, double)>& f, const PriorUniform& prior,
                      int n_z, int n_t, double eps = kAttitudeEps);

// Independent generator for the (seed, trial, index) triple.
std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t index);

}  // namespace nfepm
