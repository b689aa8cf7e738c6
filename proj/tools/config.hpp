#pragma once

#include "nfepm/bounds_ecrb.hpp"
#include "nfepm/bounds_zzb.hpp"
#include "nfepm/geometry.hpp"
#include "nfepm/map_estimator.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace nfepm::cli {

// Flat `section.key -> value` view of an INI file. Every lookup that falls
// back to a default records it, so `entries()` is the fully resolved config.
class Config {
public:
    static Config parse(std::istream& in, const std::string& source = "<config>");
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    // "key=value"
    void apply_override(const std::string& assignment);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key, int fallback);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    // Comma or space separated.
    std::vector<double> get_list(const std::string& key);
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback);

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

// Reads the sections a command needs; wraps constructor failures so the
// message names the offending field.
Wave read_wave(Config& cfg);
ArrayGeometry read_geometry(Config& cfg);
PriorUniform read_prior(Config& cfg);
ZzbGrid read_zzb_grid(Config& cfg);
EcrbGrid read_ecrb_grid(Config& cfg);
MapGrid read_map_grid(Config& cfg);

}  // namespace nfepm::cli
