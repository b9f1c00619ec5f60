#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "app/config.hpp"
#include "app/diag.hpp"
#include "app/run.hpp"
#include "app/study.hpp"
#include "tricam/errors.hpp"
#include "tricam/version.hpp"

namespace app = tricam::app;

namespace {

// Registers --<key> for every config key; only flags actually given end up in the map.
void add_key_flags(CLI::App* cmd, std::map<std::string, std::string>& overrides, bool study) {
    for (const auto& k : app::config_keys()) {
        const std::string name(k.name);
        const bool study_only = name == "sweep-axis" || name == "sweep-values" || name == "moll-grid-scale" ||
                                name == "parallel";
        if (study_only && !study) continue;
        std::string help(k.help);
        if (!k.default_value.empty()) help += " [" + std::string(k.default_value) + "]";
        if (name == "parallel" || name == "dealias") {
            // Bare flag means true; --dealias=false also works.
            cmd->add_option_function<std::string>(
                   "--" + name, [&overrides, name](const std::string& v) { overrides[name] = v; }, help)
                ->expected(0, 1)
                ->default_str("true");
            continue;
        }
        cmd->add_option_function<std::string>(
            "--" + name, [&overrides, name](const std::string& v) { overrides[name] = v; }, help);
    }
}

app::KeyValues load(const std::string& config_path, const std::map<std::string, std::string>& overrides) {
    app::KeyValues file;
    if (!config_path.empty()) file = app::read_config_file(config_path);
    return app::merge_config(file, app::KeyValues(overrides.begin(), overrides.end()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"tricam: v=0 sector of the three-component Camassa-Holm system"};
    cli.set_version_flag("--version", std::string(tricam::kVersion));
    cli.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> overrides;

    auto* run = cli.add_subcommand("run", "evolve one configuration and write diagnostics");
    run->add_option("--config", config_path, "key = value config file");
    add_key_flags(run, overrides, false);

    auto* study = cli.add_subcommand("study", "sweep one axis and report convergence and invariants");
    study->add_option("--config", config_path, "key = value config file");
    add_key_flags(study, overrides, true);

    auto* diag = cli.add_subcommand("diag", "re-check a stored snapshot");
    std::string snapshot;
    std::vector<std::string> checks;
    diag->add_option("snapshot", snapshot, "snapshot file (csv or binary)")->required();
    diag->add_option("--checks", checks, "sign, slope, h2, elliptic, l1, consistency, all")->delimiter(',');

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? 0 : app::kExitConfig;
    }

    try {
        if (*run) return app::cmd_run(app::make_run_config(load(config_path, overrides)), std::cout, std::cerr);
        if (*study) return app::cmd_study(app::make_study_config(load(config_path, overrides)), std::cout, std::cerr);
        if (*diag) return app::cmd_diag(snapshot, checks, std::cout, std::cerr);
    } catch (const app::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return app::kExitConfig;
    } catch (const tricam::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return app::kExitConfig;
    }
    return app::kExitOk;
}
