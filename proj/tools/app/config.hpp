#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tricam/dynamics.hpp"
#include "tricam/grid.hpp"
#include "tricam/initdata.hpp"

namespace tricam::app {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

// Rejected configuration. what() is a single machine-readable line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, std::string value, std::string reason);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct KeySpec {
    std::string_view name;
    std::string_view default_value;
    std::string_view help;
    bool hashed;  // part of the manifest hash
};
// Every recognised key; each one is also a --flag of the same name.
std::span<const KeySpec> config_keys() noexcept;

using KeyValues = std::map<std::string, std::string>;

// Flat "key = value" lines, '#' starts a comment. Underscores in keys are
// read as dashes. Unknown or repeated keys are errors.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);
// Defaults, then the file, then the overrides.
KeyValues merge_config(const KeyValues& file, const KeyValues& overrides);

enum class SnapshotFormat { None, Csv, Binary };

struct RunConfig {
    double domain_l = 20.0;
    std::size_t grid_n = 1024;
    double t_end = 5.0;
    double dt = 0.0;  // 0: derived from cfl and dt_max
    double dt_max = 0.1;
    double cfl = 0.3;
    CflPolicy cfl_policy = CflPolicy::Warn;
    std::string profile = "smoothed-peakon";
    ProfileParams params;
    double epsilon = 1.0;
    KernelBackend backend = KernelBackend::FourierSymbol;
    std::size_t stride = 1;
    SnapshotFormat snapshot = SnapshotFormat::Csv;
    std::size_t snapshot_stride = 0;  // in observer calls; 0 keeps first and last only
    bool dealias = false;
    double blowup_cap = 1e6;
    std::uint64_t seed = 0;
    std::string out;

    // Resolved key=value pairs, sorted, as given to the manifest.
    KeyValues resolved;
};

enum class SweepAxis { MollificationIndex, GridResolution, TimeStep };
std::string_view to_string(SweepAxis a) noexcept;

struct StudyConfig {
    RunConfig base;
    SweepAxis axis = SweepAxis::MollificationIndex;
    std::vector<double> values;
    std::size_t moll_grid_scale = 768;  // grid-n >= scale * moll-n on the mollification axis
    bool parallel = false;
};

RunConfig make_run_config(const KeyValues& kv);
StudyConfig make_study_config(const KeyValues& kv);

// The run configuration for one sweep point.
RunConfig sweep_point(const StudyConfig& study, double value);

Grid1D run_grid(const RunConfig& cfg);
State run_initial_state(const RunConfig& cfg);
SolverOptions run_solver_options(const RunConfig& cfg);

// Hashed keys as sorted "key=value" lines plus the code version.
std::string canonical_text(const RunConfig& cfg);
std::uint64_t fnv1a64(std::string_view text) noexcept;
std::string manifest_hash(const RunConfig& cfg);

}  // namespace tricam::app
