#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tricam/dynamics.hpp"
#include "tricam/field.hpp"

namespace tricam {

// H1 = int (a c + a_x c_x) dx.
double conserved_h1(const State& s);

// H2 in both forms: int u c_x dx and -int w a_x dx. Equal by parts on a
// periodic domain; their gap measures discretization health.
struct H2Forms {
    double form1 = 0.0;
    double form2 = 0.0;
};
H2Forms conserved_h2(const State& s);

// Pointwise sign and slope-domination measurements. Pure measurement: no
// thresholds are applied here.
struct SignSlope {
    double min_u = 0.0;
    double min_w = 0.0;
    double slope_excess_a = 0.0;  // max(|a_x| - a)
    double slope_excess_c = 0.0;  // max(|c_x| - c)
};
SignSlope sign_and_slope_check(const State& s);

struct BBounds {
    double b_h1 = 0.0;
    double b_sup = 0.0;
    double bx_sup = 0.0;
    double elliptic_residual = 0.0;  // ||4b - b_xx - source||_inf
    double source_sup = 0.0;         // ||source||_inf
};
// b is the field recovered for s (spectral derivatives are used for the residual).
BBounds b_bounds(const State& s, const Field& b);

// sum_i |f_{i+1} - f_i| with periodic wrap.
double total_variation(const Field& f);

// ||G2||_{H^1} measured from the discrete impulse response; the constant of
// ||G2 * r||_{H^1} <= C ||r||_{L^1}.
double g2_young_constant(const Grid1D& grid);

enum class Component : std::size_t { A = 0, C, B, U, W };
enum class NormSlot : std::size_t { L1 = 0, LOnePlusEps, L2, LInf };
std::string_view to_string(Component c) noexcept;

struct NormTable {
    std::array<std::array<double, 4>, 5> values{};
    double& at(Component c, NormSlot p) noexcept {
        return values[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)];
    }
    double at(Component c, NormSlot p) const noexcept {
        return values[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)];
    }
};

struct DiagnosticsRecord {
    double t = 0.0;
    double H1 = 0.0;
    double H2_form1 = 0.0;
    double H2_form2 = 0.0;
    double min_u = 0.0;
    double min_w = 0.0;
    double slope_excess_a = 0.0;
    double slope_excess_c = 0.0;
    NormTable norms;
    double b_h1 = 0.0;
    double b_sup = 0.0;
    double bx_sup = 0.0;
    double elliptic_residual = 0.0;
    double tv_ax = 0.0;
    double tv_bx = 0.0;

    // Not part of the CSV row.
    double epsilon = 1.0;
    double source_sup = 0.0;
    double b_form_gap = 0.0;   // ||recover_b - recover_b_uw||_inf
    double product_sup = 0.0;  // ||a_x c_x - a c||_inf
    double integral_a = 0.0;
    double integral_c = 0.0;
    double integral_u = 0.0;
    double integral_w = 0.0;
};

struct MeasureOptions {
    double epsilon = 1.0;  // exponent 1 + epsilon of the intermediate L^p norm
};

// Every monitored quantity for one time slice. b must be solver.recover_b(s.a, s.c).
DiagnosticsRecord measure(const State& s, const Field& b, const Solver& solver, const MeasureOptions& opts = {});

// Fixed CSV column order.
std::span<const std::string_view> diagnostics_columns() noexcept;
std::vector<double> csv_values(const DiagnosticsRecord& r);

// Gronwall envelope exp(t C_T) ||u0||_p with
// C_T = (3/2)(max_t ||b_x||_inf + max_t ||a_x c_x - a c||_inf) over the trajectory.
struct GrowthEnvelope {
    double c_t = 0.0;
    std::vector<double> times;
    std::vector<double> norm_series;
    std::vector<double> envelope_series;

    bool holds() const noexcept;
    // min over samples of envelope - norm (negative when violated).
    double min_margin() const noexcept;
};
// field must be Component::U or Component::W. Throws InvalidArgumentError
// for fewer than 2 records.
GrowthEnvelope growth_envelope(std::span<const DiagnosticsRecord> trajectory, Component field, NormSlot p);

// Thresholds for the invariant suite.
struct Tolerances {
    double h1_drift = 1e-6;        // relative
    double h2_drift = 1e-6;        // relative
    double h2_form_gap = 1e-8;     // absolute
    double sign = 1e-6;            // min u >= -sign * ||u||_inf
    double slope = 1e-6;           // slope excess <= slope * ||a||_inf
    double l1_identity = 1e-8;     // | ||a||_1 - ||u||_1 | when u >= 0
    double elliptic = 1e-8;        // residual <= elliptic * (1 + ||source||_inf)
    double b_forms = 1e-8;         // gap <= b_forms * ||b||_inf
};

struct InvariantCheck {
    std::string name;
    double measured = 0.0;
    double limit = 0.0;
    bool passed = false;
    std::string note;
};

struct RunVerdict {
    std::vector<InvariantCheck> checks;
    bool all_passed() const noexcept;
    const InvariantCheck* find(std::string_view name) const noexcept;
};

// Conservation, sign, slope, L1 identity, elliptic consistency and the
// L^1 / L^{1+eps} / L^2 growth envelopes of u and w over a recorded run.
RunVerdict check_run(std::span<const DiagnosticsRecord> trajectory, const Tolerances& tol = {});

}  // namespace tricam
