#include "nfepm/closed_form_solver.hpp"

#include "nfepm/csv.hpp"
#include "nfepm/errors.hpp"
#include "nfepm/numerics.hpp"

#include <cmath>
#include <ostream>

namespace nfepm {

namespace {

void check_pair(double y_a, double y_b) {
    require(y_a != y_b, ErrorKind::DegenerateElements, "the two elements share a position");
}

// Phase-difference rule shared by the PA and SC solvers: a non-positive
// difference means the second element sits one period further out.
double period_corrected(double theta_a, double theta_b) {
    double d = theta_b - theta_a;
    if (d <= 0.0) d += 2.0 * kPi;
    require(std::abs(d) >= 1e-12, ErrorKind::NonFinite, "phase difference vanishes");
    return d;
}

SolveResult finish(cplx z, double psi_a, double psi_b, double y_a, double y_b, Region region,
                   bool diagnostic, const ArrayGeometry& geom, const Wave& wave) {
    SolveResult r;
    r.z_hat = z;
    r.t_hat = attitude_from_amplitudes(psi_a, psi_b, y_a, y_b, z, geom, wave);
    r.region = region;
    r.diagnostic = diagnostic;
    r.t_out_of_range = !(r.t_hat.real() >= 0.0 && r.t_hat.real() < 1.0);
    return r;
}

}  // namespace

DecoupledVoltage decouple(cplx v) {
    double theta = std::arg(v);
    if (theta < 0.0) theta += 2.0 * kPi;
    if (theta >= 2.0 * kPi) theta = 0.0;
    return {std::abs(v), theta};
}

cplx attitude_from_amplitudes(double psi_a, double psi_b, double y_a, double y_b, cplx z,
                              const ArrayGeometry& geom, const Wave& wave) {
    check_pair(y_a, y_b);
    const cplx z2 = z * z;
    const cplx num = psi_a * std::pow(y_a * y_a + z2, 1.25) - psi_b * std::pow(y_b * y_b + z2, 1.25);
    return num / (wave.e_in() * geom.l_s() * std::sqrt(z) * (y_a - y_b));
}

SolveResult solve_case1(cplx v_a, cplx v_b, double y_a, double y_b, const ArrayGeometry& geom,
                        const Wave& wave, bool diagnostic) {
    check_pair(y_a, y_b);
    const auto a = decouple(v_a);
    const auto b = decouple(v_b);
    const double k = wave.k();
    const double radicand = a.theta * a.theta / (k * k) - y_a * y_a;
    if (!diagnostic) {
        require(radicand >= 0.0, ErrorKind::NegativeRadicand,
                "Theta^2 / k^2 < y^2; the data are not from the r < lambda region");
    }
    const cplx z = std::sqrt(cplx(radicand, 0.0));
    return finish(z, a.psi, b.psi, y_a, y_b, Region::CaseI, diagnostic, geom, wave);
}

SolveResult solve_case2_pa(cplx v_a, cplx v_b, double y_a, double y_b, const ArrayGeometry& geom,
                           const Wave& wave, bool diagnostic) {
    check_pair(y_a, y_b);
    require(y_b > y_a, ErrorKind::DegenerateElements, "solve_case2_pa expects y_b > y_a");
    const auto a = decouple(v_a);
    const auto b = decouple(v_b);
    const double z = wave.k() * (y_b * y_b - y_a * y_a) / (2.0 * period_corrected(a.theta, b.theta));
    return finish(cplx(z, 0.0), a.psi, b.psi, y_a, y_b, Region::CaseII_PA, diagnostic, geom, wave);
}

SolveResult solve_case2_sc(cplx v_1, cplx v_2, const ArrayGeometry& geom, const Wave& wave, bool diagnostic) {
    require(geom.n() >= 2, ErrorKind::IndexOutOfRange, "solve_case2_sc needs at least two elements");
    const auto a = decouple(v_1);
    const auto b = decouple(v_2);
    const double ls = geom.l_s();
    const double z = wave.k() * ls * ls / period_corrected(a.theta, b.theta);
    return finish(cplx(z, 0.0), a.psi, b.psi, geom.element_y(1), geom.element_y(2), Region::CaseII_SC,
                  diagnostic, geom, wave);
}

int default_beta(const ArrayGeometry& geom) { return geom.n() / 2; }

SolveResult solve(const VoltageVector& v, const PriorUniform& prior, const ArrayGeometry& geom,
                  const Wave& wave, int alpha_idx, int beta_idx) {
    if (beta_idx == 0) beta_idx = default_beta(geom);
    require(static_cast<int>(v.values.size()) == geom.n(), ErrorKind::InvalidArgument,
            "voltage vector does not match the geometry");
    const auto cls = classify_region(prior, geom, wave, alpha_idx, beta_idx);
    const double ya = geom.element_y(alpha_idx);
    const double yb = geom.element_y(beta_idx);
    const cplx va = v.values[alpha_idx - 1];
    const cplx vb = v.values[beta_idx - 1];
    switch (cls.region) {
        case Region::CaseI: return solve_case1(va, vb, ya, yb, geom, wave);
        case Region::CaseII_PA: return solve_case2_pa(va, vb, ya, yb, geom, wave);
        case Region::CaseII_SC: return solve_case2_sc(v.values[0], v.values[1], geom, wave);
        case Region::Unsupported: break;
    }
    throw Error(ErrorKind::UnsupportedRegion, cls.reason);
}

RmseResult rmse_grid(Region data_case, const PriorUniform& prior, const ArrayGeometry& geom,
                     const Wave& wave, int U, int V, std::optional<Region> solver, int alpha_idx,
                     int beta_idx) {
    require(U >= 2 && V >= 2, ErrorKind::InvalidArgument, "rmse_grid needs U, V >= 2");
    require(data_case != Region::Unsupported, ErrorKind::UnsupportedRegion, "no solver for this region");
    if (beta_idx == 0) beta_idx = default_beta(geom);
    const Region used = solver.value_or(data_case);
    require(used != Region::Unsupported, ErrorKind::UnsupportedRegion, "no solver for this region");
    const bool diagnostic = solver.has_value() && *solver != data_case;

    int ia = alpha_idx, ib = beta_idx;
    if (used == Region::CaseII_SC) {
        ia = 1;
        ib = 2;
    }
    const double ya = geom.element_y(ia);
    const double yb = geom.element_y(ib);
    const double scale = wave.e_in() * geom.l_s();

    cplx sum_z{}, sum_t{};
    for (int i = 0; i < U; ++i) {
        const double z = prior.h1() + prior.ht() * i / (U - 1);
        for (int j = 0; j < V; ++j) {
            const double t = static_cast<double>(j) / V;
            const PoseCPL pose(z, t);
            const cplx va = scale * nf_channel_axis(pose, ya, wave);
            const cplx vb = scale * nf_channel_axis(pose, yb, wave);
            SolveResult r;
            switch (used) {
                case Region::CaseI: r = solve_case1(va, vb, ya, yb, geom, wave, diagnostic); break;
                case Region::CaseII_PA: r = solve_case2_pa(va, vb, ya, yb, geom, wave, diagnostic); break;
                case Region::CaseII_SC: r = solve_case2_sc(va, vb, geom, wave, diagnostic); break;
                case Region::Unsupported: break;
            }
            const cplx ez = r.z_hat - z;
            const cplx et = r.t_hat - t;
            sum_z += ez * ez;
            sum_t += et * et;
        }
    }
    const double count = static_cast<double>(U) * V;
    RmseResult out;
    out.rmse_z = std::sqrt(sum_z / count);
    out.rmse_t = std::sqrt(sum_t / count);
    out.data_case = data_case;
    out.solver_case = used;
    out.u = U;
    out.v = V;
    return out;
}

void write_table2_csv(std::ostream& os, const std::vector<Table2Row>& rows) {
    os << "case,lambda,D_r,l_s,H1,H2,d_PA,d_SC,rmse_z_re,rmse_z_im,rmse_t_re,rmse_t_im\n";
    auto emit = [&](const Table2Row& row, const RmseResult& r) {
        const double d_pa = row.geom.d_r() >= 4.8 * row.wave.lambda()
                                ? phase_ambiguity_distance(row.geom, row.wave)
                                : std::nan("");
        std::string label = to_string(row.data_case);
        if (r.solver_case != row.data_case) label += std::string("~") + to_string(r.solver_case);
        os << label << ','
           << fmt_double(row.wave.lambda()) << ',' << fmt_double(row.geom.d_r()) << ','
           << fmt_double(row.geom.l_s()) << ',' << fmt_double(row.prior.h1()) << ','
           << fmt_double(row.prior.h2()) << ',' << fmt_double(d_pa) << ','
           << fmt_double(spacing_constraint_distance(row.geom, row.wave)) << ','
           << fmt_double(r.rmse_z.real()) << ',' << fmt_double(r.rmse_z.imag()) << ','
           << fmt_double(r.rmse_t.real()) << ',' << fmt_double(r.rmse_t.imag()) << '\n';
    };
    for (const auto& row : rows) {
        emit(row, row.matched);
        if (row.mismatched) emit(row, *row.mismatched);
    }
}

}  // namespace nfepm
