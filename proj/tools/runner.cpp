#include "runner.hpp"

#include "nfepm/bounds_ecrb.hpp"
#include "nfepm/bounds_zzb.hpp"
#include "nfepm/closed_form_solver.hpp"
#include "nfepm/csv.hpp"
#include "nfepm/em_channel.hpp"
#include "nfepm/errors.hpp"
#include "nfepm/map_estimator.hpp"
#include "nfepm/observation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#ifndef NFEPM_VERSION
#define NFEPM_VERSION "0.1.0"
#endif

namespace nfepm::cli {

const char* version_string() { return NFEPM_VERSION; }

namespace {

using Body = std::function<std::string(Config&)>;

std::vector<double> linspace_step(double first, double last, double step) {
    std::vector<double> out;
    for (int i = 0; first + i * step <= last + 1e-9; ++i) out.push_back(first + i * step);
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt_double(xs[i]);
    return out;
}

PoseCPL read_pose(Config& cfg) {
    const double z = cfg.get_double("pose.z_t");
    const double t = cfg.get_double("pose.t_z");
    try {
        return PoseCPL(z, t);
    } catch (const Error& e) {
        throw Error(e.kind(), "[pose] " + e.detail());
    }
}

ArrayGeometry read_bounded_geometry(Config& cfg) {
    auto g = read_geometry(cfg);
    require(!g.is_unbounded(), ErrorKind::InvariantViolation, "[array] d_r must be finite here");
    return g;
}

// Noise-free voltages, or one noisy draw when noise.snr_db is present.
VoltageVector read_voltages(Config& cfg, const PoseCPL& pose, const ArrayGeometry& geom, const Wave& wave) {
    auto v = noiseless_voltages(pose, geom, wave);
    if (!cfg.has("noise.snr_db")) return v;
    const double sigma2 = sigma2_for_snr_db(wave, cfg.get_double("noise.snr_db"));
    return observe(v, NoiseSpec(sigma2, cfg.get_u64("noise.seed", 1)));
}

std::string channel_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_bounded_geometry(cfg);
    const auto pose = read_pose(cfg);
    std::ostringstream os;
    write_csv(os, read_voltages(cfg, pose, geom, wave));
    return os.str();
}

std::string solve_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_bounded_geometry(cfg);
    const auto prior = read_prior(cfg);
    const auto pose = read_pose(cfg);
    const std::string solver = cfg.get_string("solve.solver", "auto");
    const int alpha = cfg.get_int("solve.alpha", 1);
    int beta = cfg.get_int("solve.beta", 0);
    const auto v = read_voltages(cfg, pose, geom, wave);
    if (beta == 0) beta = default_beta(geom);

    SolveResult r;
    if (solver == "auto") {
        r = solve(v, prior, geom, wave, alpha, beta);
    } else if (solver == "case1" || solver == "pa") {
        require(alpha < beta, ErrorKind::InvariantViolation, "[solve] alpha < beta");
        const double ya = geom.element_y(alpha), yb = geom.element_y(beta);
        const cplx va = v.values[alpha - 1], vb = v.values[beta - 1];
        if (solver == "case1") {
            r = solve_case1(va, vb, ya, yb, geom, wave);
        } else {
            phase_ambiguity_distance(geom, wave);
            r = solve_case2_pa(va, vb, ya, yb, geom, wave);
        }
    } else if (solver == "sc") {
        require(geom.n() >= 2, ErrorKind::InvariantViolation, "[solve] sc needs two elements");
        r = solve_case2_sc(v.values[0], v.values[1], geom, wave);
    } else {
        throw Error(ErrorKind::InvariantViolation, "solve.solver: expected auto, case1, pa or sc");
    }
    std::ostringstream os;
    os << "region,z_hat,t_hat,t_out_of_range\n"
       << to_string(r.region) << ',' << fmt_double(r.z()) << ',' << fmt_double(r.t()) << ','
       << (r.t_out_of_range ? 1 : 0) << '\n';
    return os.str();
}

std::string zzb_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_bounded_geometry(cfg);
    const auto prior = read_prior(cfg);
    const auto snrs = cfg.get_list("sweep.snr_db");
    ZzbEngine engine(prior, geom, wave, read_zzb_grid(cfg));
    std::vector<ZzbCurvePoint> rows;
    for (double db : snrs) {
        const double s = db_to_ratio(db);
        rows.push_back({db, engine.zzb_z(s), engine.zzb_t(s), engine.zzb_ao_t(s)});
    }
    std::ostringstream os;
    write_zzb_csv(os, rows);
    return os.str();
}

std::string ecrb_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_bounded_geometry(cfg);
    const auto prior = read_prior(cfg);
    const auto snrs = cfg.get_list("sweep.snr_db");
    const auto grid = read_ecrb_grid(cfg);
    std::vector<EcrbCurvePoint> rows;
    for (double db : snrs) {
        const double s = db_to_ratio(db);
        const auto e = ecrb(prior, s, geom, wave, grid);
        rows.push_back({db, e.ecrb_z, e.ecrb_t, ecrb_ao(prior, s, geom, grid)});
    }
    std::ostringstream os;
    write_ecrb_csv(os, rows);
    return os.str();
}

std::string map_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_bounded_geometry(cfg);
    const auto prior = read_prior(cfg);
    const auto snrs = cfg.get_list("sweep.snr_db");
    const auto grid = read_map_grid(cfg);
    const int trials = cfg.get_int("map.trials", 200);
    const auto seed = cfg.get_u64("noise.seed", 1);
    require(trials > 1, ErrorKind::InvariantViolation, "[map] trials > 1");
    std::vector<MseReport> rows;
    for (double db : snrs) rows.push_back(monte_carlo_mse(prior, geom, wave, db, trials, seed, grid));
    std::ostringstream os;
    write_mse_csv(os, rows);
    return os.str();
}

// ZZB and ECRB side by side over the SNR sweep.
std::string bounds_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_bounded_geometry(cfg);
    const auto prior = read_prior(cfg);
    const auto snrs = cfg.get_list("sweep.snr_db");
    ZzbEngine engine(prior, geom, wave, read_zzb_grid(cfg));
    const auto grid = read_ecrb_grid(cfg);
    std::ostringstream os;
    os << "snr_db,zzb_z,zzb_t,ecrb_z,ecrb_t\n";
    for (double db : snrs) {
        const double s = db_to_ratio(db);
        const auto e = ecrb(prior, s, geom, wave, grid);
        os << fmt_double(db) << ',' << fmt_double(engine.zzb_z(s)) << ',' << fmt_double(engine.zzb_t(s))
           << ',' << fmt_double(e.ecrb_z) << ',' << fmt_double(e.ecrb_t) << '\n';
    }
    return os.str();
}

// Bounds at one SNR over a list of long side lengths.
std::string bounds_vs_dr_body(Config& cfg, bool with_zzb) {
    const auto wave = read_wave(cfg);
    const auto prior = read_prior(cfg);
    const double l_s = cfg.get_double("array.l_s");
    const double s = db_to_ratio(cfg.get_double("sweep.snr_db"));
    const auto d_rs = cfg.get_list("sweep.d_r");
    const auto egrid = read_ecrb_grid(cfg);
    const auto zgrid = with_zzb ? read_zzb_grid(cfg) : ZzbGrid{};
    std::ostringstream os;
    os << (with_zzb ? "d_r,zzb_z,zzb_t,ecrb_z,ecrb_t\n" : "d_r,ecrb_z,ecrb_t\n");
    for (double d_r : d_rs) {
        const ArrayGeometry geom(d_r, l_s);
        const auto e = ecrb(prior, s, geom, wave, egrid);
        os << fmt_double(d_r);
        if (with_zzb) {
            ZzbEngine engine(prior, geom, wave, zgrid);
            os << ',' << fmt_double(engine.zzb_z(s)) << ',' << fmt_double(engine.zzb_t(s));
        }
        os << ',' << fmt_double(e.ecrb_z) << ',' << fmt_double(e.ecrb_t) << '\n';
    }
    return os.str();
}

// Joint and attitude-only t_z bounds; an unbounded strip has only the latter.
std::string attitude_body(Config& cfg) {
    const auto wave = read_wave(cfg);
    const auto geom = read_geometry(cfg);
    const auto prior = read_prior(cfg);
    const auto snrs = cfg.get_list("sweep.snr_db");
    const auto zgrid = read_zzb_grid(cfg);
    const auto egrid = read_ecrb_grid(cfg);
    std::ostringstream os;
    if (geom.is_unbounded()) {
        os << "snr_db,zzb_ao_t,ecrb_ao_t\n";
        for (double db : snrs) {
            const double s = db_to_ratio(db);
            os << fmt_double(db) << ',' << fmt_double(zzb_ao_t(prior, s, geom, zgrid)) << ','
               << fmt_double(ecrb_ao(prior, s, geom, egrid)) << '\n';
        }
        return os.str();
    }
    ZzbEngine engine(prior, geom, wave, zgrid);
    os << "snr_db,zzb_t,zzb_ao_t,ecrb_t,ecrb_ao_t\n";
    for (double db : snrs) {
        const double s = db_to_ratio(db);
        os << fmt_double(db) << ',' << fmt_double(engine.zzb_t(s)) << ',' << fmt_double(engine.zzb_ao_t(s))
           << ',' << fmt_double(ecrb(prior, s, geom, wave, egrid).ecrb_t) << ','
           << fmt_double(ecrb_ao(prior, s, geom, egrid)) << '\n';
    }
    return os.str();
}

std::string rerr_body(Config& cfg) {
    const Wave wave = read_wave(cfg);
    const double t_z = cfg.get_double("pose.t_z");
    const double x_r = cfg.get_double("channel.x_r", 0.0);
    const double y_r = cfg.get_double("channel.y_r");
    const auto zs = cfg.get_list("sweep.z_over_lambda");
    std::ostringstream os;
    os << "z_over_lambda,rerr_nfem,rerr_afem,rerr_nusw,rerr_usw\n";
    for (double zn : zs) {
        const PoseCPL pose(zn * wave.lambda(), t_z);
        os << fmt_double(zn);
        for (auto kind : {ChannelKind::NFEM, ChannelKind::AFEM, ChannelKind::NUSW, ChannelKind::USW})
            os << ',' << fmt_double(rerr(kind, pose, x_r, y_r, wave));
        os << '\n';
    }
    return os.str();
}

std::string table2_body(Config& cfg) {
    const int u = cfg.get_int("table2.u", 200);
    const int v = cfg.get_int("table2.v", 200);
    require(u >= 2 && v >= 2, ErrorKind::InvariantViolation, "[table2] u, v >= 2");
    struct Column {
        Region region;
        double lambda, d_r, l_s, h1, h2;
    };
    const Column cols[] = {
        {Region::CaseI, 1, 0.5, 0.05, 0.5, 0.9},       {Region::CaseI, 0.5, 1, 0.05, 0.1, 0.45},
        {Region::CaseII_PA, 0.1, 1, 0.05, 5, 20},      {Region::CaseII_PA, 0.1, 2, 0.05, 20, 80},
        {Region::CaseII_PA, 0.01, 2, 0.05, 200, 400},  {Region::CaseII_SC, 0.1, 1, 0.05, 0.18, 4.98},
        {Region::CaseII_SC, 0.1, 1, 0.1, 0.36, 4.98},  {Region::CaseII_SC, 0.01, 2, 0.05, 0.25, 199},
        {Region::CaseII_SC, 0.01, 2, 0.005, 0.018, 199},
    };
    std::vector<Table2Row> rows;
    for (const auto& c : cols) {
        const Wave wave(c.lambda);
        const ArrayGeometry geom(c.d_r, c.l_s);
        const PriorUniform prior(c.h1, c.h2);
        Table2Row row{"", c.region, wave, geom, prior, rmse_grid(c.region, prior, geom, wave, u, v), {}};
        if (c.region == Region::CaseII_PA)
            row.mismatched = rmse_grid(c.region, prior, geom, wave, u, v, Region::CaseI);
        if (c.region == Region::CaseII_SC)
            row.mismatched = rmse_grid(c.region, prior, geom, wave, u, v, Region::CaseII_PA);
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    write_table2_csv(os, rows);
    return os.str();
}

struct Curve {
    std::string file;
    Config cfg;
    Body body;
};

Config fig_base(double lambda, double d_r, double l_s, double h1, double h2) {
    Config c;
    c.set("wave.lambda", fmt_double(lambda));
    if (d_r > 0) c.set("array.d_r", std::isinf(d_r) ? "inf" : fmt_double(d_r));
    c.set("array.l_s", fmt_double(l_s));
    c.set("prior.h1", fmt_double(h1));
    c.set("prior.h2", fmt_double(h2));
    return c;
}

const std::vector<double>& snr_axis() {
    static const std::vector<double> axis = linspace_step(0, 60, 5);
    return axis;
}

std::vector<Curve> preset_curves(const std::string& name) {
    std::vector<Curve> out;
    auto add = [&](std::string file, Config cfg, Body body) {
        cfg.set("scenario.name", name);
        out.push_back({std::move(file), std::move(cfg), std::move(body)});
    };
    if (name == "table2") {
        add("table2.csv", Config{}, table2_body);
    } else if (name == "fig3") {
        std::vector<double> zn;
        for (int i = 0; i <= 30; ++i) zn.push_back(std::pow(10.0, i / 10.0));
        for (double t2 : {0.1, 0.5, 0.9}) {
            Config c;
            c.set("wave.lambda", "0.01");
            c.set("pose.t_z", fmt_double(std::sqrt(t2)));
            c.set("channel.x_r", "0");
            c.set("channel.y_r", "0.1");
            c.set("sweep.z_over_lambda", join(zn));
            add("fig3_tz2_" + fmt_double(t2) + ".csv", c, rerr_body);
        }
    } else if (name == "fig4") {
        Config c = fig_base(0.1, 5, 0.1, 3, 5);
        c.set("sweep.snr_db", join(snr_axis()));
        add("fig4_zzb.csv", c, zzb_body);
        add("fig4_ecrb.csv", c, ecrb_body);
        add("fig4_map.csv", c, map_body);
    } else if (name == "fig5") {
        for (double db : {30.0, 40.0, 50.0}) {
            Config c = fig_base(0.1, 0, 0.1, 4, 8);
            c.set("sweep.snr_db", fmt_double(db));
            c.set("sweep.d_r", "0.2,0.5,1,2,3,4,5,6,8,10,12,15");
            add("fig5_snr" + fmt_double(db) + ".csv", c, [](Config& k) { return bounds_vs_dr_body(k, true); });
        }
    } else if (name == "fig6") {
        for (double lambda : {0.1, 0.01, 0.001}) {
            Config c = fig_base(lambda, 5, 0.1, 5, 6);
            c.set("sweep.snr_db", join(snr_axis()));
            add("fig6_lambda" + fmt_double(lambda) + ".csv", c, bounds_body);
        }
    } else if (name == "fig7") {
        for (double l_s : {0.02, 0.1, 0.5, 2.5}) {
            Config c = fig_base(0.01, 5, l_s, 5, 6);
            c.set("sweep.snr_db", join(snr_axis()));
            add("fig7_ls" + fmt_double(l_s) + ".csv", c, bounds_body);
        }
    } else if (name == "fig8") {
        for (double d_r : {5.0, std::numeric_limits<double>::infinity()})
            for (double l_s : {0.5, 2.5}) {
                Config c = fig_base(0.1, d_r, l_s, 3, 4);
                c.set("sweep.snr_db", join(snr_axis()));
                add("fig8_dr" + std::string(std::isinf(d_r) ? "inf" : fmt_double(d_r)) + "_ls" + fmt_double(l_s) +
                        ".csv",
                    c, attitude_body);
            }
    } else if (name == "fig9") {
        const std::pair<double, double> priors[] = {{4, 5}, {4, 7}, {4, 10}, {6, 7}, {9, 10}};
        for (auto [h1, h2] : priors) {
            Config c = fig_base(0.01, 0, 0.5, h1, h2);
            c.set("sweep.snr_db", "40");
            c.set("sweep.d_r", "0.5,1,2,3,4,5,6,8,10,12,15,20");
            add("fig9_prior" + fmt_double(h1) + "-" + fmt_double(h2) + ".csv", c,
                [](Config& k) { return bounds_vs_dr_body(k, false); });
        }
    } else {
        throw Error(ErrorKind::InvariantViolation, "unknown preset '" + name + "'");
    }
    return out;
}

// Presets pin the physical parameters; only grids and trial counts move.
void check_preset_override(const std::string& assignment) {
    const std::string key = assignment.substr(0, assignment.find('='));
    const bool ok = key.rfind("zzb.", 0) == 0 || key.rfind("ecrb.", 0) == 0 || key.rfind("map.", 0) == 0 ||
                    key == "table2.u" || key == "table2.v";
    require(ok, ErrorKind::InvariantViolation,
            "override '" + key + "' not allowed for presets (grid sizes and trial counts only)");
}

std::string with_header(const std::string& command, const Config& cfg, const std::string& body) {
    std::vector<std::pair<std::string, std::string>> meta{{"nfepm", version_string()}, {"command", command}};
    for (const auto& kv : cfg.entries()) meta.push_back(kv);
    std::ostringstream os;
    write_header(os, meta);
    os << body;
    return os.str();
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::ValidityViolation:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::UnsupportedRegion:
        case ErrorKind::ParseError:
        case ErrorKind::InvariantViolation:
            return kConfigError;
        default:
            return kNumericError;
    }
}

}  // namespace

std::vector<CsvFile> execute(const RunOptions& opts) {
    std::vector<CsvFile> files;
    if (opts.command == "preset") {
        for (const auto& o : opts.overrides) check_preset_override(o);
        for (auto& curve : preset_curves(opts.preset)) {
            for (const auto& o : opts.overrides) curve.cfg.apply_override(o);
            if (opts.seed) curve.cfg.set("noise.seed", std::to_string(*opts.seed));
            const std::string body = curve.body(curve.cfg);
            files.push_back({curve.file, with_header("preset " + opts.preset, curve.cfg, body)});
        }
        return files;
    }

    const std::map<std::string, std::pair<std::string, Body>> commands{
        {"channel", {"channel.csv", channel_body}}, {"solve", {"solve.csv", solve_body}},
        {"zzb", {"zzb.csv", zzb_body}},             {"ecrb", {"ecrb.csv", ecrb_body}},
        {"map-mc", {"map_mc.csv", map_body}},
    };
    const auto it = commands.find(opts.command);
    require(it != commands.end(), ErrorKind::InvariantViolation, "unknown command '" + opts.command + "'");
    require(opts.config_path.has_value(), ErrorKind::InvariantViolation, opts.command + " needs --config");
    Config cfg = Config::load(*opts.config_path);
    for (const auto& o : opts.overrides) cfg.apply_override(o);
    if (opts.seed) cfg.set("noise.seed", std::to_string(*opts.seed));
    const std::string body = it->second.second(cfg);
    files.push_back({it->second.first, with_header(opts.command, cfg, body)});
    return files;
}

int run(const RunOptions& opts, std::ostream& log, std::ostream& err) {
    std::vector<CsvFile> files;
    try {
        files = execute(opts);
    } catch (const Error& e) {
        err << "nfepm: " << to_string(e.kind()) << ": " << e.detail() << '\n';
        return exit_code_for(e.kind());
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    for (const auto& f : files) {
        const fs::path path = fs::path(opts.out_dir) / f.name;
        std::ofstream out(path, std::ios::binary);
        out << f.body;
        if (!out) {
            err << "nfepm: cannot write " << path.string() << '\n';
            return kConfigError;
        }
        log << path.string() << '\n';
    }
    return kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
    CLI::App app{"Near-field electromagnetic pose estimation experiments", "nfepm"};
    app.set_version_flag("--version", std::string(version_string()));
    app.require_subcommand(1);
    app.fallthrough();

    RunOptions opts;
    std::string config_path;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "INI config file");
    app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
    app.add_option("--override", opts.overrides, "key=value, repeatable");

    auto* preset = app.add_subcommand("preset", "Run a pinned experiment");
    preset->add_option("name", opts.preset, "Preset name")
        ->required()
        ->check(CLI::IsMember({"table2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}));
    app.add_subcommand("channel", "Array voltages for one pose");
    app.add_subcommand("solve", "Closed-form estimate for one pose");
    app.add_subcommand("zzb", "Ziv-Zakai bounds over an SNR sweep");
    app.add_subcommand("ecrb", "Expected Cramer-Rao bounds over an SNR sweep");
    app.add_subcommand("map-mc", "Monte Carlo MSE of the MAP estimator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, log, err);
        return code == 0 ? kOk : kConfigError;
    }
    opts.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) opts.config_path = config_path;
    if (*seed_opt) opts.seed = seed;
    return run(opts, log, err);
}

}  // namespace nfepm::cli
