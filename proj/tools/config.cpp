#include "config.hpp"

#include "nfepm/csv.hpp"
#include "nfepm/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace nfepm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw Error(ErrorKind::InvariantViolation, key + ": expected a number, got '" + text + "'");
    return x;
}

template <class T>
T parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    T x{};
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw Error(ErrorKind::InvariantViolation, key + ": expected an integer, got '" + text + "'");
    return x;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += fmt_double(xs[i]);
    }
    return out;
}

// Re-raise a constructor failure with the config field in front.
template <class F>
auto field(const std::string& section, F&& make) {
    try {
        return make();
    } catch (const Error& e) {
        throw Error(e.kind(), "[" + section + "] " + e.detail());
    }
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorKind::ParseError,
                    source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    Config cfg;
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            cfg.set(name, node.data());
            continue;
        }
        for (const auto& [key, leaf] : node) {
            if (!leaf.empty())
                throw Error(ErrorKind::ParseError, source + ": nested value under " + name + "." + key);
            cfg.set(name + "." + key, leaf.data());
        }
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
    return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) { kv_[trim(key)] = trim(value); }

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty())
        throw Error(ErrorKind::ParseError, "override '" + assignment + "': expected key=value");
    set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get_string(const std::string& key) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw Error(ErrorKind::InvariantViolation, key + ": required");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
    if (!has(key)) set(key, fallback);
    return kv_.at(key);
}

double Config::get_double(const std::string& key) { return parse_double(key, get_string(key)); }

double Config::get_double(const std::string& key, double fallback) {
    if (!has(key)) set(key, fmt_double(fallback));
    return get_double(key);
}

int Config::get_int(const std::string& key, int fallback) {
    if (!has(key)) set(key, std::to_string(fallback));
    return parse_integer<int>(key, kv_.at(key));
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) set(key, std::to_string(fallback));
    return parse_integer<std::uint64_t>(key, kv_.at(key));
}

std::vector<double> Config::get_list(const std::string& key) {
    std::string text = get_string(key);
    for (char& c : text)
        if (c == ',') c = ' ';
    std::istringstream ss(text);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(key, tok));
    if (out.empty()) throw Error(ErrorKind::InvariantViolation, key + ": list must be non-empty");
    return out;
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) {
    if (!has(key)) set(key, join(fallback));
    return get_list(key);
}

Wave read_wave(Config& cfg) {
    const double lambda = cfg.get_double("wave.lambda");
    const double e_in = cfg.get_double("wave.e_in", 1.0);
    return field("wave", [&] { return Wave(lambda, e_in); });
}

ArrayGeometry read_geometry(Config& cfg) {
    const double d_r = cfg.get_double("array.d_r");
    const double l_s = cfg.get_double("array.l_s");
    return field("array", [&] {
        return std::isinf(d_r) && d_r > 0 ? ArrayGeometry::unbounded(l_s) : ArrayGeometry(d_r, l_s);
    });
}

PriorUniform read_prior(Config& cfg) {
    const double h1 = cfg.get_double("prior.h1");
    const double h2 = cfg.get_double("prior.h2");
    return field("prior", [&] { return PriorUniform(h1, h2); });
}

ZzbGrid read_zzb_grid(Config& cfg) {
    ZzbGrid g;
    g.n_delta = cfg.get_int("zzb.n_delta", g.n_delta);
    g.n_theta_z = cfg.get_int("zzb.n_theta_z", g.n_theta_z);
    g.n_theta_t = cfg.get_int("zzb.n_theta_t", g.n_theta_t);
    g.n_max_search = cfg.get_int("zzb.n_max_search", g.n_max_search);
    g.max_refine = cfg.get_int("zzb.max_refine", g.max_refine);
    g.truncation = cfg.get_double("zzb.truncation", g.truncation);
    require(g.n_delta > 0 && g.n_theta_z > 0 && g.n_theta_t > 0 && g.n_max_search > 0,
            ErrorKind::InvariantViolation, "[zzb] grid sizes must be positive");
    require(g.max_refine >= 0, ErrorKind::InvariantViolation, "[zzb] max_refine >= 0");
    require(g.truncation > 0 && g.truncation < 1, ErrorKind::InvariantViolation, "[zzb] 0 < truncation < 1");
    return g;
}

EcrbGrid read_ecrb_grid(Config& cfg) {
    EcrbGrid g;
    g.n_z = cfg.get_int("ecrb.n_z", g.n_z);
    g.n_t = cfg.get_int("ecrb.n_t", g.n_t);
    g.eps = cfg.get_double("ecrb.eps", g.eps);
    require(g.n_z > 0 && g.n_t > 0, ErrorKind::InvariantViolation, "[ecrb] grid sizes must be positive");
    require(g.eps > 0 && g.eps < 1, ErrorKind::InvariantViolation, "[ecrb] 0 < eps < 1");
    return g;
}

MapGrid read_map_grid(Config& cfg) {
    MapGrid g;
    g.n_z = cfg.get_int("map.n_z", g.n_z);
    g.n_t = cfg.get_int("map.n_t", g.n_t);
    g.refine_levels = cfg.get_int("map.refine_levels", g.refine_levels);
    g.eps = cfg.get_double("map.eps", g.eps);
    require(g.n_z > 1 && g.n_t > 1, ErrorKind::InvariantViolation, "[map] grid sizes must exceed 1");
    require(g.refine_levels >= 0, ErrorKind::InvariantViolation, "[map] refine_levels >= 0");
    require(g.eps > 0 && g.eps < 1, ErrorKind::InvariantViolation, "[map] 0 < eps < 1");
    return g;
}

}  // namespace nfepm::cli
