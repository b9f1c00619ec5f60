#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "tricam/diagnostics.hpp"

namespace tricam::app {

struct RunResult {
    int exit_code = kExitOk;
    std::string status = "ok";  // ok | blow-up | aborted
    std::string message;
    double dt = 0.0;
    std::size_t steps = 0;
    std::vector<DiagnosticsRecord> records;
    State initial;
    State final_state;  // last observed state
    std::filesystem::path dir;
};

// --out, else $TRICAM_OUT/<leaf>, else ./tricam_out/<leaf>.
std::filesystem::path output_dir(const RunConfig& cfg, const std::string& leaf);

// Time step actually used: the configured dt, or min(dt-max, cfl*dx/||b0||_inf).
double resolve_dt(const RunConfig& cfg, const State& s0, const Solver& solver);

// Runs one configuration and writes diagnostics.csv, manifest.txt and
// snapshots/ into dir. Blow-up returns kExitBlowUp with the partial files kept.
RunResult execute_run(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log);

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace tricam::app
