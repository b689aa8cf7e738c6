#include "nfepm/em_channel.hpp"
#include "nfepm/numerics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nfepm;

namespace {

struct Sampler {
    std::mt19937_64 g;
    explicit Sampler(std::uint64_t seed) : g(seed) {}
    double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

    PoseGeneral pose() {
        const double phi = uni(0, 2 * kPi), ct = uni(-1, 1), st = std::sqrt(1 - ct * ct);
        return PoseGeneral(uni(-1, 1), uni(-1, 1), uni(0.05, 5), st * std::cos(phi), st * std::sin(phi), ct);
    }
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_SUITE("em_channel") {

TEST_CASE("scalar Green function") {
    const Wave w(0.2);
    const cplx g = scalar_green(w.lambda(), w);
    CHECK(std::abs(g) == doctest::Approx(kEta0 / (2 * w.lambda() * w.lambda())).epsilon(1e-14));
    CHECK(std::abs(std::arg(g / cplx(0, 1))) < 1e-12);
    const cplx half = scalar_green(w.lambda() / 2, w);
    CHECK(std::abs(half / std::abs(half) + g / std::abs(g)) < 1e-12);
    CHECK(std::abs(scalar_green(3.7, w)) / std::abs(scalar_green(37, w)) == doctest::Approx(10).epsilon(1e-13));
    CHECK_THROWS_AS(scalar_green(0.0, w), Error);
}

TEST_CASE("vector field matches the cross-product form and is transverse") {
    Sampler s(1);
    const Wave w(0.1);
    for (int i = 0; i < 10000; ++i) {
        const auto p = s.pose();
        const ObservationPoint pt{s.uni(-1, 1), s.uni(0, 3)};
        const auto e = vector_field(p, pt, w);
        const auto ref = oracle::field(p, pt.x_r, pt.y_r, w.k());
        const double scale = oracle::field_norm(ref);
        for (int c = 0; c < 3; ++c) CHECK(std::abs(e[c] - ref[c]) <= 1e-12 * scale);
        const oracle::vec3 r{pt.x_r - p.x_t, pt.y_r - p.y_t, -p.z_t};
        const cplx proj = e[0] * r[0] + e[1] * r[1] + e[2] * r[2];
        CHECK(std::abs(proj) <= 1e-10 * oracle::field_norm(e) * oracle::norm(r));
    }
    const PoseGeneral on_axis(0, 0, 2, 0, std::sqrt(0.75), 0.5);
    CHECK(std::abs(vector_field(on_axis, {0.0, 0.7}, w)[0]) == 0.0);
}

TEST_CASE("NF-EM channel values") {
    const Wave w(1);
    const cplx h = nf_channel(PoseCPL(1, 0), 0, 0, w);
    CHECK(std::abs(h - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(nf_channel_axis(PoseCPL(1, 0), 0, w) - cplx(1, 0)) < 1e-14);
    for (double y : {0.0, 0.3, 2.0}) {
        const double z = 1.7, r = std::hypot(y, z);
        CHECK(std::abs(nf_channel_axis(PoseCPL(z, 0), y, w)) ==
              doctest::Approx(std::pow(z, 1.5) / std::pow(r, 2.5)).epsilon(1e-14));
    }
}

TEST_CASE("scalar and vector forms agree") {
    Sampler s(2);
    for (int i = 0; i < 2000; ++i) {
        const Wave w(s.uni(0.01, 1));
        const PoseCPL pose(s.uni(0.05, 5), s.uni(0, 0.999));
        const double x = s.uni(-0.5, 0.5), y = s.uni(0, 3);
        const PoseGeneral gp(0, 0, pose.z_t, 0, pose.t_y(), pose.t_z);
        const double r = std::sqrt(x * x + y * y + pose.z_t * pose.z_t);
        const double expect = oracle::field_norm(oracle::field(gp, x, y, w.k())) * std::sqrt(pose.z_t / r);
        CHECK(std::abs(nf_channel(pose, x, y, w)) == doctest::Approx(expect).epsilon(1e-10));
        // On the y axis the two channel forms coincide exactly.
        CHECK(nf_channel(pose, 0.0, y, w) == nf_channel_axis(pose, y, w));
    }
}

TEST_CASE("on-axis phase law") {
    Sampler s(3);
    for (int i = 0; i < 2000; ++i) {
        const Wave w(s.uni(0.01, 1));
        const PoseCPL pose(s.uni(0.05, 5), s.uni(0, 0.999));
        const double y = s.uni(0, 3);
        const double r = std::hypot(y, pose.z_t);
        const cplx h = nf_channel_axis(pose, y, w);
        const cplx unit = h / std::abs(h) / std::polar(1.0, w.k() * r);
        CHECK(std::abs(unit - cplx(1, 0)) < 1e-12);
    }
}

TEST_CASE("general channel") {
    Sampler s(4);
    for (int i = 0; i < 2000; ++i) {
        const Wave w(s.uni(0.01, 1));
        const auto p = s.pose();
        const ObservationPoint pt{s.uni(-1, 1), s.uni(0, 3)};
        CHECK(rel(general_channel(p, pt, w), oracle::channel_from_field(p, pt.x_r, pt.y_r, w.k())) < 1e-10);

        const double dx = s.uni(-2, 2), dy = s.uni(-2, 2);
        const PoseGeneral moved(p.x_t + dx, p.y_t + dy, p.z_t, p.t_x, p.t_y, p.t_z);
        CHECK(rel(general_channel(moved, {pt.x_r + dx, pt.y_r + dy}, w), general_channel(p, pt, w)) < 1e-10);
    }
    CHECK_THROWS(PoseGeneral(0, 0, 1, 0.5, 0.5, 0.5));
}

TEST_CASE("reduction chain") {
    Sampler s(5);
    for (int i = 0; i < 2000; ++i) {
        const Wave w(s.uni(0.01, 1));
        const PoseCPL pose(s.uni(0.05, 5), s.uni(0, 0.999));
        const double x = s.uni(-0.5, 0.5), y = s.uni(0, 3);
        const PoseGeneral gp(0, 0, pose.z_t, 0, pose.t_y(), pose.t_z);
        CHECK(rel(general_channel(gp, {x, y}, w), nf_channel(pose, x, y, w)) <= 1e-12);
        CHECK(rel(nf_channel(pose, 0, y, w), nf_channel_axis(pose, y, w)) <= 1e-12);
        const PoseCPL flat(pose.z_t, 0);
        CHECK(rel(nf_channel(flat, x, y, w), degenerate_channel(ChannelKind::AFEM, flat, x, y, w)) <= 1e-12);
    }
}

TEST_CASE("EM-SIMP channel") {
    const Wave w(0.1);
    CHECK(scale_factor(w.lambda(), w) == doctest::Approx(1.0400795655862167).epsilon(1e-14));
    const PoseCPL pose(1e4, 0.4);
    CHECK(std::abs(simp_channel(pose, 0, 1, w) / nf_channel(pose, 0, 1, w) - 1.0) < 1e-9);
    Sampler s(6);
    for (int i = 0; i < 1000; ++i) {
        const PoseCPL p(s.uni(0.01, 3), s.uni(0, 0.999));
        const double x = s.uni(-0.5, 0.5), y = s.uni(0, 3);
        CHECK(std::abs(simp_channel(p, x, y, w)) >= std::abs(nf_channel(p, x, y, w)));
    }
}

TEST_CASE("degenerate channels") {
    const Wave w(0.1);
    const PoseCPL pose(2.5, 0.3);
    const cplx nusw = degenerate_channel(ChannelKind::NUSW, pose, 0, 0, w);
    const cplx usw = degenerate_channel(ChannelKind::USW, pose, 0, 0, w);
    CHECK(std::abs(nusw - usw) < 1e-15);
    CHECK(std::abs(nusw - std::polar(1.0, w.k() * 2.5) / 2.5) < 1e-15);
    for (double y : {0.1, 1.0, 4.0}) {
        const double ratio = std::abs(degenerate_channel(ChannelKind::NUSW, pose, 0.2, y, w)) /
                             std::abs(degenerate_channel(ChannelKind::USW, pose, 0.2, y, w));
        CHECK(ratio == doctest::Approx(2.5 / std::sqrt(0.04 + y * y + 6.25)).epsilon(1e-14));
        CHECK(ratio <= 1.0);
    }
    CHECK_THROWS(degenerate_channel(ChannelKind::NFEM, pose, 0, 0, w));
}

TEST_CASE("RERR") {
    Sampler s(7);
    for (int i = 0; i < 2000; ++i) {
        const Wave w(s.uni(0.01, 1));
        const PoseCPL p(s.uni(0.01, 3), s.uni(0, 0.999));
        const double x = s.uni(-0.5, 0.5), y = s.uni(0, 3);
        const double r = std::sqrt(x * x + y * y + p.z_t * p.z_t);
        const double kr = w.k() * r;
        const double f = std::sqrt(1 + 3 / (kr * kr) + 9 / (kr * kr * kr * kr));
        CHECK(std::abs(rerr(ChannelKind::NFEM, p, x, y, w) - (1 - 1 / f)) <= 1e-12);
    }

    const Wave w(0.01);
    const double y_r = 10 * w.lambda();
    const double at10 = rerr(ChannelKind::NFEM, PoseCPL(10 * w.lambda(), std::sqrt(0.5)), 0, y_r, w);
    CHECK(at10 == doctest::Approx(1.8999524100947453e-4).epsilon(1e-10));
    CHECK(at10 <= 1e-3);

    for (double t2 : {0.1, 0.5, 0.9}) {
        const double t = std::sqrt(t2);
        double prev = 1.0;
        for (int i = 0; i <= 60; ++i) {
            const double zn = std::pow(10.0, i / 20.0);
            const PoseCPL p(zn * w.lambda(), t);
            const double nf = rerr(ChannelKind::NFEM, p, 0, y_r, w);
            CHECK(nf < prev);
            prev = nf;
            for (auto kind : {ChannelKind::AFEM, ChannelKind::NUSW, ChannelKind::USW})
                CHECK(nf < rerr(kind, p, 0, y_r, w));
        }
    }
}

}
