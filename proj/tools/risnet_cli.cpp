// risnet: evaluate and simulate coverage/rate scenarios, writing CSV.
//
//   risnet list-scenarios
//   risnet validate-config FILE [--key value ...]
//   risnet run SCENARIO [--config FILE] [--seed N] [--trials N] [--mode analytic|mc|both]
//                       [--out FILE] [--samples-out FILE] [--save-config FILE] [--key value ...]
//
// Every config key is also a flag with '_' spelled '-', e.g. --lambda-t 1e-4.
// Precedence: scenario preset < config file < flags.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risnet/config.hpp"
#include "risnet/scenarios.hpp"

namespace {

using namespace risnet;

std::string flag_name(const std::string& key) {
    std::string f = key;
    std::replace(f.begin(), f.end(), '_', '-');
    return "--" + f;
}

/// One string slot per config key; only flags that were given are applied.
struct KeyFlags {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void attach(CLI::App& app, const std::vector<std::string>& skip = {}) {
        for (const auto& k : config_keys()) {
            if (std::find(skip.begin(), skip.end(), k.name) != skip.end()) continue;
            options[k.name] = app.add_option(flag_name(k.name), values[k.name], k.help + " [" + k.unit + "]");
        }
    }

    void apply(RunConfig& c) const {
        for (const auto& [name, opt] : options)
            if (opt->count() > 0) set_config_value(c, name, values.at(name));
    }
};

std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    // Raw pairs rather than a RunConfig: the file may name the scenario, whose preset has to be
    // in place before the other values land on it.
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = std::string(detail::trim(line));
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ": line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key(detail::trim(std::string_view(t).substr(0, eq)));
        if (!find_config_key(key)) throw config_error(path + ": line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        pairs.emplace_back(key, std::string(detail::trim(std::string_view(t).substr(eq + 1))));
    }
    return pairs;
}

RunConfig resolve(const std::optional<std::string>& scenario, const std::string& config_path, const KeyFlags& flags) {
    std::vector<std::pair<std::string, std::string>> file;
    if (!config_path.empty()) file = read_pairs(config_path);
    std::string name = "custom";
    for (const auto& [k, v] : file)
        if (k == "scenario") name = v;
    if (scenario) name = *scenario;
    RunConfig c = scenario_preset(name);
    for (const auto& [k, v] : file) set_config_value(c, k, v);
    c.scenario = name;
    flags.apply(c);
    validate_config(c);
    return c;
}

int run(const RunConfig& cfg, const std::string& samples_out, const std::string& save_config) {
    if (!save_config.empty()) {
        std::ofstream os(save_config);
        if (!os) throw config_error("cannot write '" + save_config + "'");
        os << serialize_config(cfg);
    }
    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) throw config_error("cannot write '" + cfg.out + "'");
        csv = &file;
    }
    std::ofstream samples;
    if (!samples_out.empty()) {
        samples.open(samples_out);
        if (!samples) throw config_error("cannot write '" + samples_out + "'");
    }
    const auto lines = run_scenario(cfg, *csv, samples_out.empty() ? nullptr : &samples);
    std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
    for (const auto& l : lines) log << cfg.scenario << ": " << l << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage and rate of RIS-assisted networks: analytic evaluation and Monte Carlo simulation"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list-scenarios", "List the named scenarios");

    auto* validate = app.add_subcommand("validate-config", "Check a config file and print the resolved values");
    std::string validate_path;
    validate->add_option("config", validate_path, "config file")->required();
    KeyFlags validate_flags;
    validate_flags.attach(*validate);

    auto* runcmd = app.add_subcommand("run", "Run a scenario and write CSV");
    std::string scenario_arg, config_path, samples_out, save_config;
    runcmd->add_option("scenario", scenario_arg, "fig2..fig8 or custom");
    runcmd->add_option("--config", config_path, "config file (key = value lines)");
    runcmd->add_option("--samples-out", samples_out, "custom scenario: write SINR samples as CSV");
    runcmd->add_option("--save-config", save_config, "write the resolved config to this file");
    KeyFlags run_flags;
    run_flags.attach(*runcmd, {"scenario"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (list->parsed()) {
            for (const auto& s : scenarios()) std::cout << s.name << "\t" << s.description << '\n';
            return 0;
        }
        if (validate->parsed()) {
            const RunConfig c = resolve(std::nullopt, validate_path, validate_flags);
            std::cout << serialize_config(c);
            return 0;
        }
        const std::optional<std::string> scen =
            scenario_arg.empty() ? std::nullopt : std::optional<std::string>(scenario_arg);
        const RunConfig c = resolve(scen, config_path, run_flags);
        return run(c, samples_out, save_config);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
