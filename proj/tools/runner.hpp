#pragma once

#include "config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nfepm::cli {

enum ExitCode { kOk = 0, kConfigError = 1, kNumericError = 2 };

struct RunOptions {
    std::string command;  // preset, channel, solve, zzb, ecrb, map-mc
    std::string preset;
    std::optional<std::string> config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

struct CsvFile {
    std::string name;
    std::string body;
};

const char* version_string();

// Builds the CSV files without touching the filesystem.
std::vector<CsvFile> execute(const RunOptions& opts);

// Runs and writes every file into `opts.out_dir`; errors become exit codes.
int run(const RunOptions& opts, std::ostream& log, std::ostream& err);

// argv front end.
int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace nfepm::cli
