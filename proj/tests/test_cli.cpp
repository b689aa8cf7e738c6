#include "config.hpp"
#include "runner.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace nfepm::cli;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("nfepm_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return path / name;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Outcome {
    int code;
    std::string log, err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "nfepm");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream log, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), log, err);
    return {code, log.str(), err.str()};
}

const char* kEcrbConfig = R"([wave]
lambda = 0.1
[array]
d_r = 5
l_s = 0.1
[prior]
h1 = 3
h2 = 5
[sweep]
snr_db = 40
[ecrb]
n_z = 8
n_t = 8
)";

std::vector<std::string> data_lines(const std::string& body) {
    std::vector<std::string> out;
    std::istringstream is(body);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    std::istringstream in("[wave]\nlambda = 0.1\n[sweep]\nsnr_db = 0, 10,20\n[array]\nd_r = inf\n");
    auto cfg = Config::parse(in, "mem");
    CHECK(cfg.get_double("wave.lambda") == 0.1);
    CHECK(cfg.get_list("sweep.snr_db") == std::vector<double>{0, 10, 20});
    CHECK(std::isinf(cfg.get_double("array.d_r")));
    CHECK(cfg.get_int("map.trials", 7) == 7);
    CHECK(cfg.has("map.trials"));
    CHECK_THROWS(cfg.get_double("wave.missing"));
    cfg.set("wave.lambda", "abc");
    CHECK_THROWS(cfg.get_double("wave.lambda"));
    CHECK_THROWS(cfg.apply_override("novalue"));
    cfg.apply_override("wave.lambda=0.2");
    CHECK(cfg.get_double("wave.lambda") == 0.2);

    std::istringstream bad("[wave]\nlambda = 0.1\nthis is not ini\n");
    try {
        Config::parse(bad, "bad.ini");
        FAIL("expected ParseError");
    } catch (const nfepm::Error& e) {
        CHECK(e.kind() == nfepm::ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("bad.ini:3") != std::string::npos);
    }
}

TEST_CASE("ecrb command writes one row with a header") {
    TempDir dir;
    const auto cfg = dir.write("e.ini", kEcrbConfig);
    const auto r = cli({"--config", cfg.string(), "--out", (dir.path / "out").string(), "ecrb"});
    CHECK(r.code == kOk);
    CHECK(r.err.empty());
    const auto body = slurp(dir.path / "out" / "ecrb.csv");
    CHECK(body.rfind("# nfepm = " + std::string(version_string()), 0) == 0);
    CHECK(body.find("# command = ecrb") != std::string::npos);
    CHECK(body.find("# ecrb.n_z = 8") != std::string::npos);
    const auto lines = data_lines(body);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "snr_db,ecrb_z,ecrb_t,ecrb_ao_t");
    CHECK(lines[1].rfind("40,", 0) == 0);

    const auto again = cli({"--config", cfg.string(), "--out", (dir.path / "out2").string(), "ecrb"});
    CHECK(again.code == kOk);
    CHECK(slurp(dir.path / "out2" / "ecrb.csv") == body);
}

TEST_CASE("configuration errors exit with 1") {
    TempDir dir;
    const auto bad_prior = dir.write("bp.ini", "[wave]\nlambda = 0.1\n[array]\nd_r = 5\nl_s = 0.1\n[prior]\nh1 = 5\nh2 = 3\n"
                                               "[sweep]\nsnr_db = 40\n");
    auto r = cli({"--config", bad_prior.string(), "--out", dir.path.string(), "ecrb"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("InvariantViolation: [prior]") != std::string::npos);
    CHECK(r.err.find("InvariantViolation: InvariantViolation") == std::string::npos);

    const auto broken = dir.write("b.ini", "[wave]\nlambda = 0.1\n= nope\n");
    r = cli({"--config", broken.string(), "--out", dir.path.string(), "ecrb"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("ParseError") != std::string::npos);
    CHECK(r.err.find(":3") != std::string::npos);

    r = cli({"--config", (dir.path / "missing.ini").string(), "ecrb"});
    CHECK(r.code == kConfigError);

    r = cli({"ecrb"});
    CHECK(r.code == kConfigError);

    r = cli({"preset", "fig99"});
    CHECK(r.code == kConfigError);

    r = cli({"--bogus", "ecrb"});
    CHECK(r.code == kConfigError);
}

TEST_CASE("forcing the phase-ambiguity solver on a short array") {
    TempDir dir;
    const auto cfg = dir.write("s.ini", "[wave]\nlambda = 0.1\n[array]\nd_r = 0.4\nl_s = 0.05\n[prior]\nh1 = 5\nh2 = 20\n"
                                        "[pose]\nz_t = 10\nt_z = 0.5\n[solve]\nsolver = pa\n");
    const auto r = cli({"--config", cfg.string(), "--out", dir.path.string(), "solve"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("ValidityViolation") != std::string::npos);
}

TEST_CASE("solve command") {
    TempDir dir;
    const auto cfg = dir.write("s.ini", "[wave]\nlambda = 0.1\n[array]\nd_r = 1\nl_s = 0.05\n[prior]\nh1 = 5\nh2 = 20\n"
                                        "[pose]\nz_t = 10\nt_z = 0.5\n");
    const auto r = cli({"--config", cfg.string(), "--out", dir.path.string(), "solve"});
    CHECK(r.code == kOk);
    const auto lines = data_lines(slurp(dir.path / "solve.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "region,z_hat,t_hat,t_out_of_range");
    CHECK(lines[1].rfind("CaseII_PA,", 0) == 0);
}

TEST_CASE("numerical failures exit with 2") {
    TempDir dir;
    // A coincident pose makes the channel undefined.
    const auto ch = dir.write("c.ini", "[wave]\nlambda = 0.1\n[array]\nd_r = 1\nl_s = 0.05\n[pose]\nz_t = 1\nt_z = 0.5\n"
                                       "[solve]\nsolver = case1\n[prior]\nh1 = 5\nh2 = 20\n");
    const auto r = cli({"--config", ch.string(), "--out", dir.path.string(), "solve"});
    CHECK(r.code == kNumericError);
    CHECK(r.err.find("NegativeRadicand") != std::string::npos);
}

TEST_CASE("preset overrides are limited to grid keys") {
    TempDir dir;
    auto r = cli({"--out", dir.path.string(), "--override", "wave.lambda=0.2", "preset", "table2"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("not allowed") != std::string::npos);

    r = cli({"--out", dir.path.string(), "--override", "table2.u=10", "--override", "table2.v=10", "preset", "table2"});
    CHECK(r.code == kOk);
    const auto body = slurp(dir.path / "table2.csv");
    CHECK(body.find("# table2.u = 10") != std::string::npos);
    CHECK(data_lines(body).size() > 9);
}

TEST_CASE("version flag") {
    const auto r = cli({"--version"});
    CHECK(r.code == kOk);
    CHECK(r.log.find(version_string()) != std::string::npos);
}

}
