#pragma once

// Named parameter sweeps (fig2..fig8) written as CSV, plus a `custom`
// scenario that evaluates one configuration over the threshold grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "risnet/analytic.hpp"
#include "risnet/config.hpp"
#include "risnet/errors.hpp"
#include "risnet/mcsim.hpp"
#include "risnet/powerdist.hpp"
#include "risnet/units.hpp"

namespace risnet {

struct ScenarioInfo {
    std::string name;
    std::string description;
};

inline const std::vector<ScenarioInfo>& scenarios() {
    static const std::vector<ScenarioInfo> v = {
        {"fig2", "CCDF of the serving signal power, m in {1,2,4}, N in {16,32,64}"},
        {"fig3", "CCDF of one RIS-assisted interferer's power, N in {16,32,64}"},
        {"fig4", "fixed association with RIS: coverage and rate vs transmit power, several TX densities"},
        {"fig5", "fixed association without RIS: coverage vs transmit power, several TX densities"},
        {"fig6", "fixed association with RIS: coverage vs transmit power for p in {0,0.5,1}, N in {32,64}"},
        {"fig7", "nearest association: coverage vs transmit power, several TX densities, alpha 2.5 and 4"},
        {"fig8", "nearest association, interference-limited: coverage and rate vs p"},
        {"custom", "one configuration over the SINR threshold grid"},
    };
    return v;
}

/// Starting configuration for a scenario; file values and flags are applied on top.
inline RunConfig scenario_preset(const std::string& name) {
    RunConfig c;
    c.scenario = name;
    if (name == "fig2" || name == "fig3") {
        c.m_h = c.m_r = 1.0;
        c.trials = 1'000'000;
    } else if (name == "fig4" || name == "fig5") {
        c.n_elements = 32;
        c.p = 0.5;
        c.m_h = c.m_r = 2.0;
    } else if (name == "fig6") {
        c.lambda_t = 1e-4;
    } else if (name == "fig7") {
        c.p = 0.9;
        c.association = Association::Nearest;
    } else if (name == "fig8") {
        c.lambda_t = 1e-4;
        c.association = Association::Nearest;
        c.interference_limited = true;
    } else if (name != "custom") {
        throw config_error("unknown scenario '" + name + "'");
    }
    return c;
}

namespace detail {

class CsvOut {
public:
    CsvOut(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
        old_ = os_.precision(10);
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << '\n';
    }
    ~CsvOut() { os_.precision(old_); }
    CsvOut(const CsvOut&) = delete;
    CsvOut& operator=(const CsvOut&) = delete;

    /// NaN cells (columns not computed in this mode) are written empty.
    void row(const std::vector<double>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            if (!std::isnan(cells[i])) os_ << cells[i];
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
    std::streamsize old_;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Runs fn, re-raising failures with the parameter point attached.
template <class Fn>
auto at_point(const std::string& where, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
}

inline std::string point_label(const std::string& scenario, const std::vector<std::pair<std::string, double>>& kv) {
    std::ostringstream os;
    os << scenario << " at";
    for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
    return os.str();
}

inline std::vector<double> linear_grid(double lo, double hi, double step) {
    std::vector<double> g;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
    for (std::size_t i = 0; i <= n; ++i) g.push_back(lo + step * static_cast<double>(i));
    return g;
}

/// First x where an increasing curve reaches `level`.
inline double crossing_up(const std::vector<double>& x, const std::vector<double>& y, double level) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (y[i - 1] < level && y[i] >= level)
            return x[i - 1] + (level - y[i - 1]) * (x[i] - x[i - 1]) / (y[i] - y[i - 1]);
    return kNaN;
}

inline std::string fmt(double v) {
    if (std::isnan(v)) return "n/a";
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

// ------------------------------------------------------------------ fig2 / fig3

inline void run_signal_ccdf(const RunConfig& cfg, std::ostream& csv, std::vector<std::string>& log) {
    CsvOut out(csv, {"m", "n_elements", "x_db", "ccdf_analytic", "ccdf_mc"});
    const std::vector<double> xs = linear_grid(-80.0, -20.0, 0.5);
    for (double m : {1.0, 2.0, 4.0}) {
        for (std::size_t n : {16u, 32u, 64u}) {
            RunConfig c = cfg;
            c.m_h = c.m_r = m;
            c.n_elements = n;
            const SystemParams sp = c.system_params();
            const std::string where = point_label("fig2", {{"m", m}, {"N", static_cast<double>(n)}});
            const GammaFit fit = at_point(where, [&] {
                return signal_gamma_fit(sp.eta_g0(), sp.eta_h0(), sp.fading, sp.n_elements, sp.moments);
            });
            EmpiricalDistribution mc;
            if (wants_mc(cfg.mode)) mc = simulate_signal_power(sp, cfg.trials, cfg.seed, true, cfg.threads);
            for (double x_db : xs) {
                const double x = db_to_linear(x_db);
                out.row({m, static_cast<double>(n), x_db, wants_analytic(cfg.mode) ? signal_ccdf(fit, x) : kNaN,
                         wants_mc(cfg.mode) ? mc.ccdf(x) : kNaN});
            }
            std::string line = "m=" + fmt(m) + " N=" + std::to_string(n) + ": CCDF 0.8 at";
            if (wants_analytic(cfg.mode)) line += " " + fmt(linear_to_db(signal_ccdf_quantile(fit, 0.8))) + " dB (analytic)";
            if (wants_mc(cfg.mode)) line += " " + fmt(linear_to_db(mc.quantile(0.2))) + " dB (mc)";
            log.push_back(line);
        }
    }
}

inline void run_interferer_ccdf(const RunConfig& cfg, std::ostream& csv, std::vector<std::string>& log) {
    CsvOut out(csv, {"n_elements", "x_db", "ccdf_analytic", "ccdf_mc"});
    const SystemParams sp = cfg.system_params();
    const Point2 tx{0.0, 20.0}, ris{3.0, 20.0};
    const std::vector<double> xs = linear_grid(-90.0, -40.0, 0.5);
    for (std::size_t n : {16u, 32u, 64u}) {
        const double zeta =
            interferer_exp_param(pathloss_direct(sp.path, norm(tx)), pathloss_reflected(sp.path, norm(ris)), n, true);
        EmpiricalDistribution mc;
        if (wants_mc(cfg.mode))
            mc = simulate_interferer_power(sp.path, sp.fading, n, tx, ris, cfg.trials, cfg.seed, cfg.threads);
        double worst = 0.0;
        for (double x_db : xs) {
            const double x = db_to_linear(x_db);
            const double a = std::exp(-zeta * x);
            if (wants_mc(cfg.mode)) worst = std::max(worst, std::abs(a - mc.ccdf(x)));
            out.row({static_cast<double>(n), x_db, wants_analytic(cfg.mode) ? a : kNaN,
                     wants_mc(cfg.mode) ? mc.ccdf(x) : kNaN});
        }
        std::string line = "N=" + std::to_string(n) + ": mean power " + fmt(linear_to_db(1.0 / zeta)) + " dB";
        if (wants_mc(cfg.mode)) line += ", max |exp - mc| " + fmt(worst);
        log.push_back(line);
    }
}

// ------------------------------------------------------- power sweeps (fixed)

struct PowerCurve {
    std::vector<double> p_dbm;
    std::vector<double> analytic;
    std::vector<double> mc;
};

/// Coverage (and optionally rate) vs transmit power for one configuration. MC links are
/// sampled once and re-thresholded at every power.
inline PowerCurve power_sweep(const RunConfig& c, const std::vector<double>& grid, CoverageMethod method,
                              Association assoc, bool serving_ris, const std::string& scenario,
                              const std::vector<std::pair<std::string, double>>& labels, CsvOut& out,
                              const std::vector<double>& lead, bool with_rate) {
    PowerCurve curve;
    const double g = db_to_linear(c.gamma_bar_db);
    std::vector<LinkSample> links;
    if (wants_mc(c.mode)) {
        McConfig mc = c.mc_config();
        links = at_point(point_label(scenario, labels), [&] { return simulate_links(mc, assoc, serving_ris); });
    }
    for (double p_dbm : grid) {
        RunConfig q = c;
        q.tx_power_dbm = p_dbm;
        SystemParams sp = q.system_params();
        auto lab = labels;
        lab.emplace_back("P_dbm", p_dbm);
        const std::string where = point_label(scenario, lab);
        double a = kNaN, ra = kNaN, m = kNaN, ci = kNaN, rm = kNaN;
        if (wants_analytic(c.mode)) {
            a = at_point(where, [&] { return coverage(sp, method, g); });
            if (with_rate) ra = at_point(where, [&] { return rate_fixed(sp, serving_ris); });
        }
        if (wants_mc(c.mode)) {
            const EmpiricalDistribution d = sinr_distribution(links, sp.inv_gamma_t());
            const Estimate e = estimate_coverage(d, g);
            m = e.value;
            ci = e.ci_halfwidth;
            if (with_rate) rm = estimate_rate(d).value;
        }
        curve.p_dbm.push_back(p_dbm);
        curve.analytic.push_back(a);
        curve.mc.push_back(m);
        std::vector<double> row = lead;
        row.insert(row.end(), {p_dbm, a, m, ci});
        if (with_rate) row.insert(row.end(), {ra, rm});
        out.row(row);
    }
    return curve;
}

inline std::string crossing_summary(const PowerCurve& c, double level, RunMode mode) {
    std::string s = "coverage " + fmt(level) + " reached at";
    if (wants_analytic(mode)) s += " " + fmt(crossing_up(c.p_dbm, c.analytic, level)) + " dBm (analytic)";
    if (wants_mc(mode)) s += " " + fmt(crossing_up(c.p_dbm, c.mc, level)) + " dBm (mc)";
    return s;
}

inline void run_fixed_density(const RunConfig& cfg, bool serving_ris, std::ostream& csv,
                              std::vector<std::string>& log) {
    const std::string scen = serving_ris ? "fig4" : "fig5";
    std::vector<std::string> header = {"lambda_t", "p_dbm", "coverage_analytic", "coverage_mc", "mc_ci"};
    if (serving_ris) header.insert(header.end(), {"rate_analytic", "rate_mc"});
    CsvOut out(csv, header);
    const std::vector<double> grid = serving_ris ? linear_grid(-40.0, 20.0, 2.0) : linear_grid(-30.0, 40.0, 2.0);
    for (double lam : {0.0, 1e-6, 1e-5, 1e-4, 1e-3}) {
        RunConfig c = cfg;
        c.lambda_t = lam;
        const PowerCurve pc =
            power_sweep(c, grid, serving_ris ? CoverageMethod::FixedRis : CoverageMethod::FixedNoRis,
                        Association::Fixed, serving_ris, scen, {{"lambda_t", lam}}, out, {lam}, serving_ris);
        std::string line = "lambda_t=" + fmt(lam) + ": " + crossing_summary(pc, 0.9, cfg.mode);
        if (serving_ris) {
            for (std::size_t i = 0; i < pc.p_dbm.size(); ++i)
                if (pc.p_dbm[i] == -24.0) {
                    line += "; at -24 dBm";
                    if (wants_analytic(cfg.mode)) line += " " + fmt(pc.analytic[i]) + " (analytic)";
                    if (wants_mc(cfg.mode)) line += " " + fmt(pc.mc[i]) + " (mc)";
                }
        }
        log.push_back(line);
    }
}

inline void run_fixed_probability(const RunConfig& cfg, std::ostream& csv, std::vector<std::string>& log) {
    CsvOut out(csv, {"p", "n_elements", "p_dbm", "coverage_analytic", "coverage_mc", "mc_ci"});
    const std::vector<double> grid = linear_grid(-40.0, 20.0, 2.0);
    for (std::size_t n : {32u, 64u}) {
        for (double p : {0.0, 0.5, 1.0}) {
            RunConfig c = cfg;
            c.p = p;
            c.n_elements = n;
            const PowerCurve pc = power_sweep(c, grid, CoverageMethod::FixedRis, Association::Fixed, true, "fig6",
                                              {{"p", p}, {"N", static_cast<double>(n)}}, out,
                                              {p, static_cast<double>(n)}, false);
            log.push_back("p=" + fmt(p) + " N=" + std::to_string(n) + ": " + crossing_summary(pc, 0.9, cfg.mode));
        }
    }
}

// ------------------------------------------------------------------ nearest

inline void run_nearest_density(const RunConfig& cfg, std::ostream& csv, std::vector<std::string>& log) {
    CsvOut out(csv, {"alpha", "lambda_t", "p_dbm", "coverage_analytic", "coverage_mc", "mc_ci"});
    const std::vector<double> grid = linear_grid(-40.0, 60.0, 5.0);
    struct Curve {
        double alpha;
        double lambda;
    };
    const std::vector<Curve> curves = {{cfg.alpha, 1e-5}, {cfg.alpha, 5e-5}, {cfg.alpha, 1e-4}, {cfg.alpha, 1e-3},
                                       {4.0, 1e-4}};
    for (const Curve& cv : curves) {
        RunConfig c = cfg;
        c.alpha = cv.alpha;
        c.lambda_t = cv.lambda;
        const CoverageMethod m = cv.alpha == 4.0 ? CoverageMethod::NearestAlpha4 : CoverageMethod::Nearest;
        const PowerCurve pc = power_sweep(c, grid, m, Association::Nearest, true, "fig7",
                                          {{"alpha", cv.alpha}, {"lambda_t", cv.lambda}}, out,
                                          {cv.alpha, cv.lambda}, false);
        std::string line = "alpha=" + fmt(cv.alpha) + " lambda_t=" + fmt(cv.lambda) + ": coverage at " +
                           fmt(pc.p_dbm.back()) + " dBm";
        if (wants_analytic(cfg.mode)) line += " " + fmt(pc.analytic.back()) + " (analytic)";
        if (wants_mc(cfg.mode)) line += " " + fmt(pc.mc.back()) + " (mc)";
        log.push_back(line);
    }
}

inline void run_nearest_probability(const RunConfig& cfg, std::ostream& csv, std::vector<std::string>& log) {
    CsvOut out(csv, {"p", "gamma_bar_db", "coverage_analytic", "coverage_mc", "mc_ci", "rate_analytic", "rate_mc"});
    const std::vector<double> thr = linear_grid(-10.0, 20.0, 2.0);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        RunConfig c = cfg;
        c.p = p;
        c.interference_limited = true;
        const SystemParams sp = c.system_params();
        const std::string where = point_label("fig8", {{"p", p}});
        double ra = kNaN, rm = kNaN;
        EmpiricalDistribution d;
        if (wants_analytic(cfg.mode)) ra = at_point(where, [&] { return rate_nearest(sp, true); });
        if (wants_mc(cfg.mode)) {
            d = at_point(where, [&] { return simulate_sinr(c.mc_config(), Association::Nearest); });
            rm = estimate_rate(d).value;
        }
        for (double g_db : thr) {
            const double g = db_to_linear(g_db);
            double a = kNaN, m = kNaN, ci = kNaN;
            if (wants_analytic(cfg.mode)) a = at_point(where, [&] { return coverage_nearest_intlimited(sp, g); });
            if (wants_mc(cfg.mode)) {
                const Estimate e = estimate_coverage(d, g);
                m = e.value;
                ci = e.ci_halfwidth;
            }
            out.row({p, g_db, a, m, ci, ra, rm});
        }
        std::string line = "p=" + fmt(p) + ": rate";
        if (wants_analytic(cfg.mode)) line += " " + fmt(ra) + " (analytic)";
        if (wants_mc(cfg.mode)) line += " " + fmt(rm) + " (mc)";
        line += " bit/s/Hz";
        log.push_back(line);
    }
}

// ------------------------------------------------------------------- custom

inline CoverageMethod custom_method(const RunConfig& c) {
    if (c.association == Association::Nearest)
        return c.interference_limited ? CoverageMethod::NearestIntLimited : CoverageMethod::Nearest;
    return c.serving_has_ris() ? CoverageMethod::FixedRis : CoverageMethod::FixedNoRis;
}

inline void run_custom(const RunConfig& cfg, std::ostream& csv, std::vector<std::string>& log, std::ostream* samples) {
    CsvOut out(csv, {"gamma_bar_db", "coverage_analytic", "coverage_mc", "mc_ci"});
    const SystemParams sp = cfg.system_params();
    const CoverageMethod method = custom_method(cfg);
    const bool ris = cfg.serving_has_ris();
    EmpiricalDistribution d;
    if (wants_mc(cfg.mode))
        d = at_point("custom", [&] { return simulate_sinr(cfg.mc_config(), cfg.association, ris); });
    if (samples && wants_mc(cfg.mode)) write_samples_csv(*samples, d);
    for (std::size_t i = 0; i <= 30; ++i) {
        const double g_db = -20.0 + 2.0 * static_cast<double>(i);
        const double g = db_to_linear(g_db);
        double a = kNaN, m = kNaN, ci = kNaN;
        if (wants_analytic(cfg.mode))
            a = at_point(point_label("custom", {{"gamma_bar_db", g_db}}), [&] { return coverage(sp, method, g); });
        if (wants_mc(cfg.mode)) {
            const Estimate e = estimate_coverage(d, g);
            m = e.value;
            ci = e.ci_halfwidth;
        }
        out.row({g_db, a, m, ci});
    }
    const double g = db_to_linear(cfg.gamma_bar_db);
    std::string line = std::string(to_string(method)) + ": coverage at " + fmt(cfg.gamma_bar_db) + " dB";
    if (wants_analytic(cfg.mode)) line += " " + fmt(coverage(sp, method, g)) + " (analytic)";
    if (wants_mc(cfg.mode)) {
        const Estimate e = estimate_coverage(d, g);
        line += " " + fmt(e.value) + " +- " + fmt(e.ci_halfwidth) + " (mc)";
        line += "; rate " + fmt(estimate_rate(d).value) + " bit/s/Hz (mc)";
    }
    log.push_back(line);
}

}  // namespace detail

/// Writes the scenario's CSV to `csv` and returns one summary line per curve. For the custom
/// scenario in an MC mode, `samples` (if given) receives the sorted SINR samples.
inline std::vector<std::string> run_scenario(const RunConfig& cfg, std::ostream& csv, std::ostream* samples = nullptr) {
    validate_config(cfg);
    std::vector<std::string> log;
    const std::string& s = cfg.scenario;
    if (s == "fig2") detail::run_signal_ccdf(cfg, csv, log);
    else if (s == "fig3") detail::run_interferer_ccdf(cfg, csv, log);
    else if (s == "fig4") detail::run_fixed_density(cfg, true, csv, log);
    else if (s == "fig5") detail::run_fixed_density(cfg, false, csv, log);
    else if (s == "fig6") detail::run_fixed_probability(cfg, csv, log);
    else if (s == "fig7") detail::run_nearest_density(cfg, csv, log);
    else if (s == "fig8") detail::run_nearest_probability(cfg, csv, log);
    else if (s == "custom") detail::run_custom(cfg, csv, log, samples);
    else throw config_error("unknown scenario '" + s + "'");
    return log;
}

}  // namespace risnet
