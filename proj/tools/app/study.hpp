#pragma once

#include <filesystem>
#include <limits>
#include <ostream>
#include <vector>

#include "config.hpp"
#include "tricam/diagnostics.hpp"

namespace tricam::app {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct StudyRow {
    double value = 0.0;
    std::string status;
    std::size_t grid_n = 0;
    double dt = 0.0;
    double terminal_error = kNaN;   // max(||a - a_ref||_inf, ||c - c_ref||_inf) at t_end against the finest run
    double successive_diff = kNaN;  // same norm against the next finer run
    double order = kNaN;            // log(d_i / d_{i+1}) / log(h_i / h_{i+1})
    double h1_initial_distance = kNaN;  // ||a0^n - a0||_{H^1}, mollification axis only
    double tv_ax_max = kNaN;
    double u0_l1 = kNaN;
    double c_t = kNaN;
    double envelope_margin = kNaN;  // min over u, w and p in {1, 1+eps, 2}
    RunVerdict verdict;
};

struct StudyReport {
    std::vector<StudyRow> rows;  // in sweep-value order
    double estimated_order = kNaN;
    double tv_bound = kNaN;
    std::vector<InvariantCheck> verdicts;
    bool all_passed() const noexcept;
};

StudyReport execute_study(const StudyConfig& st, const std::filesystem::path& dir, std::ostream& log);

int cmd_study(const StudyConfig& st, std::ostream& out, std::ostream& err);

}  // namespace tricam::app
