#include "nfepm/geometry.hpp"

#include "nfepm/errors.hpp"
#include "nfepm/numerics.hpp"

#include <cmath>
#include <limits>

namespace nfepm {

Wave::Wave(double lambda, double e_in) : lambda_(lambda), k_(0.0), e_in_(e_in) {
    require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::InvariantViolation, "lambda > 0");
    require(std::isfinite(e_in) && e_in > 0.0, ErrorKind::InvariantViolation, "E_in > 0");
    k_ = 2.0 * kPi / lambda_;
}

ArrayGeometry::ArrayGeometry(double d_r, double l_s) : d_r_(d_r), l_s_(l_s), n_(0) {
    require(std::isfinite(l_s) && l_s > 0.0, ErrorKind::InvariantViolation, "0 < l_s");
    require(std::isfinite(d_r) && l_s <= d_r, ErrorKind::InvariantViolation, "l_s <= D_r");
    // Ratios such as 2/0.005 land a few ulps either side of an integer.
    const double ratio = d_r / l_s;
    n_ = static_cast<int>(std::floor(ratio * (1.0 + 1e-12)));
}

ArrayGeometry ArrayGeometry::unbounded(double l_s) {
    ArrayGeometry g(l_s, l_s);
    g.d_r_ = std::numeric_limits<double>::infinity();
    g.n_ = 0;
    return g;
}

bool ArrayGeometry::is_unbounded() const { return std::isinf(d_r_); }

double ArrayGeometry::element_y(int index) const {
    require(index >= 1 && index <= n_, ErrorKind::IndexOutOfRange,
            "element index " + std::to_string(index) + " outside [1, " + std::to_string(n_) + "]");
    return (index - 0.5) * l_s_;
}

PriorUniform::PriorUniform(double h1, double h2) : h1_(h1), h2_(h2) {
    require(std::isfinite(h1) && h1 > 0.0, ErrorKind::InvariantViolation, "0 < H1");
    require(std::isfinite(h2) && h1 < h2, ErrorKind::InvariantViolation, "H1 < H2");
}

const char* to_string(Region r) {
    switch (r) {
        case Region::CaseI: return "CaseI";
        case Region::CaseII_PA: return "CaseII_PA";
        case Region::CaseII_SC: return "CaseII_SC";
        case Region::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

double fraunhofer_distance(const ArrayGeometry& geom, const Wave& wave) {
    return 2.0 * geom.d_r() * geom.d_r() / wave.lambda();
}

double fresnel_distance(const ArrayGeometry& geom, const Wave& wave) {
    return 0.5 * std::sqrt(geom.d_r() * geom.d_r() * geom.d_r() / wave.lambda());
}

double phase_ambiguity_distance(const ArrayGeometry& geom, const Wave& wave) {
    require(geom.d_r() >= 4.8 * wave.lambda(), ErrorKind::ValidityViolation,
            "d_PA requires D_r >= 4.8 lambda (D_r=" + std::to_string(geom.d_r()) +
                ", lambda=" + std::to_string(wave.lambda()) + ")");
    return geom.d_r() * geom.d_r() / (2.0 * wave.lambda());
}

double spacing_constraint_distance(const ArrayGeometry& geom, const Wave& wave) {
    const double ls = geom.l_s();
    return std::max(ls * ls / wave.lambda(), 3.6 * ls);
}

RegionClass classify_region(const PriorUniform& prior, const ArrayGeometry& geom, const Wave& wave,
                            int alpha_idx, int beta_idx) {
    require(alpha_idx >= 1 && alpha_idx < beta_idx && beta_idx <= geom.n(), ErrorKind::IndexOutOfRange,
            "need 1 <= alpha < beta <= N");
    const double ya = geom.element_y(alpha_idx);
    const double yb = geom.element_y(beta_idx);
    const double lam = wave.lambda();

    const double far_a = std::hypot(prior.h2(), ya);
    const double far_b = std::hypot(prior.h2(), yb);
    if (far_a < lam && far_b < lam) return {Region::CaseI, ""};

    const double near_a = std::hypot(prior.h1(), ya);
    const double near_b = std::hypot(prior.h1(), yb);
    if (near_a < lam || near_b < lam) {
        return {Region::Unsupported, "prior straddles the r = lambda boundary"};
    }

    // Distances such as 3.6 * 0.05 round a few ulps above the printed value.
    auto at_least = [](double h, double d) { return h >= d * (1.0 - 1e-12); };
    const double d_sc = spacing_constraint_distance(geom, wave);
    if (geom.d_r() >= 4.8 * lam) {
        const double d_pa = phase_ambiguity_distance(geom, wave);
        if (at_least(prior.h1(), d_pa)) return {Region::CaseII_PA, ""};
        if (at_least(prior.h1(), d_sc) && prior.h2() <= d_pa) return {Region::CaseII_SC, ""};
        if (at_least(prior.h1(), d_sc)) return {Region::Unsupported, "prior straddles d_PA"};
        return {Region::Unsupported, "H1 < d_SC"};
    }
    if (at_least(prior.h1(), d_sc)) return {Region::CaseII_SC, ""};
    return {Region::Unsupported, "H1 < d_SC"};
}

}  // namespace nfepm
