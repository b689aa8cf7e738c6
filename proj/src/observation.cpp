#include "nfepm/observation.hpp"

#include "nfepm/csv.hpp"
#include "nfepm/errors.hpp"
#include "nfepm/numerics.hpp"

#include <cmath>
#include <ostream>

namespace nfepm {

VoltageVector::VoltageVector(std::vector<cplx> v, ArrayGeometry g) : values(std::move(v)), geom(g) {
    require(static_cast<int>(values.size()) == geom.n(), ErrorKind::InvariantViolation,
            "voltage count must equal N");
    for (const auto& x : values)
        require(std::isfinite(x.real()) && std::isfinite(x.imag()), ErrorKind::NonFinite, "non-finite voltage");
}

NoiseSpec::NoiseSpec(double s2, std::uint64_t s) : sigma2(s2), seed(s) {
    require(std::isfinite(s2) && s2 >= 0.0, ErrorKind::InvariantViolation, "sigma2 >= 0");
}

VoltageVector noiseless_voltages(const PoseCPL& pose, const ArrayGeometry& geom, const Wave& wave) {
    require(!geom.is_unbounded(), ErrorKind::InvalidArgument, "voltages need a finite array");
    std::vector<cplx> v(geom.n());
    const double scale = wave.e_in() * geom.l_s();
    for (int n = 1; n <= geom.n(); ++n) v[n - 1] = scale * nf_channel_axis(pose, geom.element_y(n), wave);
    return VoltageVector(std::move(v), geom);
}

VoltageVector observe(const VoltageVector& v, const NoiseSpec& noise, std::uint64_t trial) {
    if (noise.sigma2 == 0.0) return v;
    std::vector<cplx> out(v.values);
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise.sigma2 / 2.0));
    for (std::size_t n = 0; n < out.size(); ++n) {
        auto gen = rng_stream(noise.seed, trial, n);
        const double re = gauss(gen);
        const double im = gauss(gen);
        out[n] += cplx(re, im);
        gauss.reset();
    }
    return VoltageVector(std::move(out), v.geom);
}

double snr(const Wave& wave, const NoiseSpec& noise) {
    require(noise.sigma2 > 0.0, ErrorKind::ZeroNoise, "SNR undefined for sigma2 = 0");
    return wave.e_in() * wave.e_in() / noise.sigma2;
}

double snr_db(const Wave& wave, const NoiseSpec& noise) { return ratio_to_db(snr(wave, noise)); }

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double sigma2_for_snr_db(const Wave& wave, double db) { return wave.e_in() * wave.e_in() / db_to_ratio(db); }

void write_csv(std::ostream& os, const VoltageVector& v) {
    os << "index,re_volt,im_volt\n";
    for (std::size_t n = 0; n < v.values.size(); ++n)
        os << (n + 1) << ',' << fmt_double(v.values[n].real()) << ',' << fmt_double(v.values[n].imag()) << '\n';
}

}  // namespace nfepm
