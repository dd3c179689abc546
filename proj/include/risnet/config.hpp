#pragma once

// Run configuration: a flat `key = value` document with one key per model or
// simulation parameter. Values carry the units named in the key table; dB and
// dBm quantities are converted only when building SystemParams, so a config
// written by serialize_config reloads to exactly the same values.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "risnet/analytic.hpp"
#include "risnet/errors.hpp"
#include "risnet/mcsim.hpp"
#include "risnet/units.hpp"

namespace risnet {

enum class RunMode { Analytic, MonteCarlo, Both };
enum class ServingRis { Auto, On, Off };

struct RunConfig {
    std::string scenario = "custom";
    RunMode mode = RunMode::Both;
    std::string out;  // empty: stdout
    std::uint64_t seed = 1;
    std::size_t trials = 100'000;
    std::size_t threads = 0;

    double lambda_t = 1e-4;
    double lambda_u = 1e-4;
    double p = 0.5;
    std::size_t n_elements = 32;
    double alpha = 2.5;
    double d0_m = 3.0;
    double c_d_db = -30.0;
    double c_r_db = -30.0;
    double m_h = 1.0;
    double m_r = 1.0;
    double tx_power_dbm = 0.0;
    double noise_dbm = -70.0;
    double serving_tx_x_m = 20.0;
    double serving_tx_y_m = 0.0;
    double serving_ris_x_m = 20.0;
    double serving_ris_y_m = 3.0;
    bool interference_limited = false;
    MomentSource moments = MomentSource::FittedGamma;

    double gamma_bar_db = 0.0;  // SINR threshold for single-threshold summaries
    Association association = Association::Fixed;
    ServingRis serving_ris = ServingRis::Auto;  // auto: the serving TX has a RIS iff p > 0
    double window_radius_m = 5000.0;
    double near_count = 64.0;
    double mid_count = 1024.0;

    bool operator==(const RunConfig&) const = default;

    bool serving_has_ris() const {
        return serving_ris == ServingRis::On || (serving_ris == ServingRis::Auto && p > 0.0);
    }

    SystemParams system_params() const {
        SystemParams sp;
        sp.lambda_t = lambda_t;
        sp.lambda_u = lambda_u;
        sp.p = p;
        sp.n_elements = n_elements;
        sp.path = {db_to_linear(c_d_db), db_to_linear(c_r_db), alpha, d0_m};
        sp.fading = {m_h, m_r};
        sp.tx_power_w = dbm_to_watts(tx_power_dbm);
        sp.noise_w = dbm_to_watts(noise_dbm);
        sp.serving_tx = {serving_tx_x_m, serving_tx_y_m};
        sp.serving_ris = {serving_ris_x_m, serving_ris_y_m};
        sp.interference_limited = interference_limited;
        sp.moments = moments;
        return sp;
    }

    McConfig mc_config() const {
        McConfig c;
        c.trials = trials;
        c.seed = seed;
        c.window = Window(window_radius_m);
        c.params = system_params();
        c.threads = threads;
        c.near_count = near_count;
        c.mid_count = mid_count;
        return c;
    }
};

inline const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::Analytic: return "analytic";
        case RunMode::MonteCarlo: return "mc";
        default: return "both";
    }
}

inline bool wants_analytic(RunMode m) { return m != RunMode::MonteCarlo; }
inline bool wants_mc(RunMode m) { return m != RunMode::Analytic; }

struct ConfigKey {
    std::string name;
    std::string unit;
    std::string help;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out))
        throw config_error("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
    return out;
}

inline std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw config_error("invalid non-negative integer for '" + std::string(key) + "': '" + std::string(v) + "'");
    return out;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error("invalid boolean for '" + std::string(key) + "': '" + std::string(v) + "'");
}

template <class Enum>
Enum parse_choice(std::string_view key, std::string_view v, const std::vector<std::pair<std::string, Enum>>& opts) {
    for (const auto& [name, e] : opts)
        if (v == name) return e;
    std::string allowed;
    for (const auto& o : opts) allowed += (allowed.empty() ? "" : "|") + o.first;
    throw config_error("invalid value for '" + std::string(key) + "': '" + std::string(v) + "' (expected " +
                       allowed + ")");
}

inline const std::vector<std::pair<std::string, RunMode>>& mode_names() {
    static const std::vector<std::pair<std::string, RunMode>> v = {
        {"analytic", RunMode::Analytic}, {"mc", RunMode::MonteCarlo}, {"both", RunMode::Both}};
    return v;
}
inline const std::vector<std::pair<std::string, MomentSource>>& moment_names() {
    static const std::vector<std::pair<std::string, MomentSource>> v = {{"fitted", MomentSource::FittedGamma},
                                                                        {"exact", MomentSource::Exact}};
    return v;
}
inline const std::vector<std::pair<std::string, Association>>& association_names() {
    static const std::vector<std::pair<std::string, Association>> v = {{"fixed", Association::Fixed},
                                                                       {"nearest", Association::Nearest}};
    return v;
}
inline const std::vector<std::pair<std::string, ServingRis>>& serving_ris_names() {
    static const std::vector<std::pair<std::string, ServingRis>> v = {
        {"auto", ServingRis::Auto}, {"on", ServingRis::On}, {"off", ServingRis::Off}};
    return v;
}

template <class Enum>
std::string choice_name(Enum e, const std::vector<std::pair<std::string, Enum>>& opts) {
    for (const auto& [name, v] : opts)
        if (v == e) return name;
    return "?";
}

inline ConfigKey real_key(std::string name, std::string unit, std::string help, double RunConfig::*field) {
    return {name, std::move(unit), std::move(help),
            [field, name](RunConfig& c, std::string_view v) { c.*field = parse_double(name, v); },
            [field](const RunConfig& c) { return format_double(c.*field); }};
}

template <class Int>
ConfigKey int_key(std::string name, std::string unit, std::string help, Int RunConfig::*field) {
    return {name, std::move(unit), std::move(help),
            [field, name](RunConfig& c, std::string_view v) { c.*field = static_cast<Int>(parse_uint(name, v)); },
            [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

template <class Enum>
ConfigKey choice_key(std::string name, std::string help, Enum RunConfig::*field,
                     const std::vector<std::pair<std::string, Enum>>& (*names)()) {
    std::string unit;
    for (const auto& o : names()) unit += (unit.empty() ? "" : "|") + o.first;
    return {name, unit, std::move(help),
            [field, name, names](RunConfig& c, std::string_view v) { c.*field = parse_choice(name, v, names()); },
            [field, names](const RunConfig& c) { return choice_name(c.*field, names()); }};
}

}  // namespace detail

/// Every accepted key, in serialization order.
inline const std::vector<ConfigKey>& config_keys() {
    using namespace detail;
    static const std::vector<ConfigKey> keys = {
        {"scenario", "name", "fig2..fig8 or custom",
         [](RunConfig& c, std::string_view v) { c.scenario = std::string(v); },
         [](const RunConfig& c) { return c.scenario; }},
        choice_key("mode", "which columns to compute", &RunConfig::mode, &mode_names),
        {"out", "path", "CSV output file (empty: stdout)",
         [](RunConfig& c, std::string_view v) { c.out = std::string(v); },
         [](const RunConfig& c) { return c.out; }},
        int_key("seed", "integer", "Monte Carlo seed", &RunConfig::seed),
        int_key("trials", "count", "Monte Carlo trials per curve", &RunConfig::trials),
        int_key("threads", "count", "worker threads (0: all cores)", &RunConfig::threads),
        real_key("lambda_t", "1/m^2", "TX density", &RunConfig::lambda_t),
        real_key("lambda_u", "1/m^2", "user density", &RunConfig::lambda_u),
        real_key("p", "probability", "probability that a TX has a RIS", &RunConfig::p),
        int_key("n_elements", "count", "RIS elements", &RunConfig::n_elements),
        real_key("alpha", "exponent", "path-loss exponent", &RunConfig::alpha),
        real_key("d0_m", "m", "TX-RIS distance", &RunConfig::d0_m),
        real_key("c_d_db", "dB", "direct-link gain at 1 m", &RunConfig::c_d_db),
        real_key("c_r_db", "dB", "reflected-link gain at 1 m", &RunConfig::c_r_db),
        real_key("m_h", "shape", "Nakagami shape, TX-RIS", &RunConfig::m_h),
        real_key("m_r", "shape", "Nakagami shape, RIS-user", &RunConfig::m_r),
        real_key("tx_power_dbm", "dBm", "transmit power", &RunConfig::tx_power_dbm),
        real_key("noise_dbm", "dBm", "noise power", &RunConfig::noise_dbm),
        real_key("serving_tx_x_m", "m", "fixed serving TX, x", &RunConfig::serving_tx_x_m),
        real_key("serving_tx_y_m", "m", "fixed serving TX, y", &RunConfig::serving_tx_y_m),
        real_key("serving_ris_x_m", "m", "fixed serving RIS, x", &RunConfig::serving_ris_x_m),
        real_key("serving_ris_y_m", "m", "fixed serving RIS, y", &RunConfig::serving_ris_y_m),
        {"interference_limited", "bool", "neglect noise",
         [](RunConfig& c, std::string_view v) { c.interference_limited = parse_bool("interference_limited", v); },
         [](const RunConfig& c) { return std::string(c.interference_limited ? "true" : "false"); }},
        choice_key("moments", "third/fourth moments of the RIS sum", &RunConfig::moments, &moment_names),
        real_key("gamma_bar_db", "dB", "SINR threshold", &RunConfig::gamma_bar_db),
        choice_key("association", "custom scenario: serving TX choice", &RunConfig::association,
                   &association_names),
        choice_key("serving_ris", "fixed association: serving TX has a RIS (auto: iff p > 0)",
                   &RunConfig::serving_ris, &serving_ris_names),
        real_key("window_radius_m", "m", "simulation disk radius", &RunConfig::window_radius_m),
        real_key("near_count", "TXs", "expected TXs simulated with per-element fading", &RunConfig::near_count),
        real_key("mid_count", "TXs", "expected TXs simulated with exponential power", &RunConfig::mid_count),
    };
    return keys;
}

inline const ConfigKey* find_config_key(std::string_view name) {
    for (const auto& k : config_keys())
        if (k.name == name) return &k;
    return nullptr;
}

inline void set_config_value(RunConfig& c, std::string_view key, std::string_view value) {
    const ConfigKey* k = find_config_key(key);
    if (!k) throw config_error("unknown key '" + std::string(key) + "'");
    k->set(c, detail::trim(value));
}

/// Range checks beyond what parsing enforces.
inline void validate_config(const RunConfig& c) {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) throw config_error(msg);
    };
    check(c.trials >= 1, "trials must be >= 1");
    check(c.lambda_t >= 0.0, "lambda_t must be >= 0");
    check(c.lambda_u >= 0.0, "lambda_u must be >= 0");
    check(c.p >= 0.0 && c.p <= 1.0, "p must lie in [0, 1]");
    check(c.alpha > 2.0, "alpha must exceed 2");
    check(c.d0_m > 0.0, "d0_m must be positive");
    check(c.m_h >= 0.5 && c.m_r >= 0.5, "Nakagami shapes must be >= 0.5");
    check(c.window_radius_m > 0.0, "window_radius_m must be positive");
    check(c.near_count > 0.0 && c.mid_count >= 0.0, "ring counts must be positive");
    check(std::hypot(c.serving_tx_x_m, c.serving_tx_y_m) > 0.0, "serving TX cannot sit on the user");
    check(std::hypot(c.serving_ris_x_m, c.serving_ris_y_m) > 0.0, "serving RIS cannot sit on the user");
    try {
        c.system_params().validate();
    } catch (const std::domain_error& e) {
        throw config_error(e.what());
    }
}

/// Applies a `key = value` document on top of `base`. Blank lines and lines starting with '#'
/// are ignored; a repeated key keeps the last value.
inline RunConfig parse_config(std::istream& in, RunConfig base = {}) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
        try {
            set_config_value(base, detail::trim(t.substr(0, eq)), t.substr(eq + 1));
        } catch (const config_error& e) {
            throw config_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

inline RunConfig parse_config_string(const std::string& text, RunConfig base = {}) {
    std::istringstream is(text);
    return parse_config(is, std::move(base));
}

inline std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    for (const auto& k : config_keys()) os << "# " << k.help << " [" << k.unit << "]\n" << k.name << " = " << k.get(c) << '\n';
    return os.str();
}

}  // namespace risnet
