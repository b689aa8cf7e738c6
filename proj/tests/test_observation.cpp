#include "nfepm/errors.hpp"
#include "nfepm/observation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

using namespace nfepm;

TEST_SUITE("observation") {

TEST_CASE("single element voltage") {
    const Wave w(1);
    const ArrayGeometry g(0.5, 0.5);
    REQUIRE(g.n() == 1);
    const PoseCPL pose(1, 0);
    const auto v = noiseless_voltages(pose, g, w);
    REQUIRE(v.values.size() == 1);
    CHECK(std::abs(v.values[0] - 0.5 * nf_channel_axis(pose, 0.25, w)) < 1e-15);
}

TEST_CASE("voltages scale with E_in") {
    const ArrayGeometry g(1, 0.05);
    const PoseCPL pose(2, 0.4);
    const auto a = noiseless_voltages(pose, g, Wave(0.1, 1.0));
    const auto b = noiseless_voltages(pose, g, Wave(0.1, 3.5));
    for (int n = 0; n < g.n(); ++n) CHECK(std::abs(b.values[n] - 3.5 * a.values[n]) <= 1e-14 * std::abs(b.values[n]));
}

TEST_CASE("voltage matches the element surface integral") {
    const Wave w(0.1);
    const ArrayGeometry g(1, 0.05);
    const PoseCPL pose(1, 0.6);
    const auto v = noiseless_voltages(pose, g, w);
    const double ls = g.l_s();
    for (int n = 1; n <= 2; ++n) {
        const double yc = g.element_y(n);
        auto row = [&](double x) {
            return oracle::composite<cplx>([&](double y) { return nf_channel(pose, x, y, w); }, yc - ls / 2,
                                           yc + ls / 2, 8);
        };
        const cplx surf = oracle::composite<cplx>(row, -ls / 2, ls / 2, 8) / ls;
        INFO("element " << n << " relative gap " << std::abs(v.values[n - 1] - surf) / std::abs(surf));
        CHECK(std::abs(v.values[n - 1] - surf) <= 0.01 * std::abs(surf));
    }
}

TEST_CASE("zero noise is the identity") {
    const ArrayGeometry g(1, 0.1);
    const auto v = noiseless_voltages(PoseCPL(3, 0.2), g, Wave(0.1));
    const auto o = observe(v, NoiseSpec(0.0, 9), 4);
    for (int n = 0; n < g.n(); ++n) CHECK(o.values[n] == v.values[n]);
}

TEST_CASE("noise statistics") {
    const ArrayGeometry g(0.2, 0.1);
    const VoltageVector zero(std::vector<cplx>(g.n()), g);
    const double sigma2 = 0.3;
    const NoiseSpec noise(sigma2, 77);
    const int trials = 100000;
    double p0 = 0, p1 = 0, re2 = 0, im2 = 0;
    cplx c01 = 0, pseudo = 0;
    for (int t = 0; t < trials; ++t) {
        const auto o = observe(zero, noise, t);
        p0 += std::norm(o.values[0]);
        p1 += std::norm(o.values[1]);
        re2 += o.values[0].real() * o.values[0].real();
        im2 += o.values[0].imag() * o.values[0].imag();
        c01 += o.values[0] * std::conj(o.values[1]);
        pseudo += o.values[0] * o.values[0];
    }
    CHECK(p0 / trials == doctest::Approx(sigma2).epsilon(0.02));
    CHECK(p1 / trials == doctest::Approx(sigma2).epsilon(0.02));
    CHECK(re2 / trials == doctest::Approx(sigma2 / 2).epsilon(0.02));
    CHECK(im2 / trials == doctest::Approx(sigma2 / 2).epsilon(0.02));
    CHECK(std::abs(c01) / trials / sigma2 < 0.02);
    CHECK(std::abs(pseudo) / trials / sigma2 < 0.02);
}

TEST_CASE("noise is deterministic per seed and trial") {
    const ArrayGeometry g(1, 0.1);
    const auto v = noiseless_voltages(PoseCPL(3, 0.2), g, Wave(0.1));
    const auto a = observe(v, NoiseSpec(0.1, 5), 2);
    const auto b = observe(v, NoiseSpec(0.1, 5), 2);
    const auto c = observe(v, NoiseSpec(0.1, 5), 3);
    const auto d = observe(v, NoiseSpec(0.1, 6), 2);
    for (int n = 0; n < g.n(); ++n) {
        CHECK(a.values[n] == b.values[n]);
        CHECK(a.values[n] != c.values[n]);
        CHECK(a.values[n] != d.values[n]);
    }
}

TEST_CASE("SNR conversions") {
    const Wave w(0.1, 2.0);
    CHECK(snr(w, NoiseSpec(1.0)) == doctest::Approx(4.0));
    CHECK(snr_db(Wave(0.1), NoiseSpec(1e-3)) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(db_to_ratio(-20) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(ratio_to_db(db_to_ratio(17.3)) == doctest::Approx(17.3).epsilon(1e-14));
    CHECK(snr(w, NoiseSpec(sigma2_for_snr_db(w, 42.0))) == doctest::Approx(db_to_ratio(42.0)).epsilon(1e-13));
    try {
        snr(w, NoiseSpec(0.0));
        FAIL("expected ZeroNoise");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroNoise);
    }
    CHECK_THROWS(NoiseSpec(-1.0));
}

TEST_CASE("voltage vector invariants and CSV") {
    const ArrayGeometry g(0.35, 0.1);
    CHECK_THROWS(VoltageVector(std::vector<cplx>(2), g));
    try {
        VoltageVector(std::vector<cplx>{1, cplx(NAN, 0), 2}, g);
        FAIL("expected NonFinite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFinite);
    }
    CHECK_THROWS(noiseless_voltages(PoseCPL(1, 0), ArrayGeometry::unbounded(0.1), Wave(0.1)));

    const VoltageVector v(std::vector<cplx>{cplx(1, -2), cplx(0.5, 0), cplx(0, 0.25)}, g);
    std::ostringstream os;
    write_csv(os, v);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "index,re_volt,im_volt");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 2);
        CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    }
    CHECK(rows == 3);
}

}
