#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "tricam/field.hpp"
#include "tricam/kernels.hpp"

namespace tricam {

// The evolved pair (a, c) at time t. The middle component v is identically
// zero and b is recovered from (a, c) on demand.
struct State {
    double t = 0.0;
    Field a;
    Field c;
};

struct Rhs {
    Field da_dt;
    Field dc_dt;
};

// Nonlocal source pair: f enters through (1/2) d_x G1*f, g through (1/2) G1*g.
struct Forcing {
    Field f;
    Field g;
};

enum class CflPolicy { Warn, Error, Ignore };

struct SolverOptions {
    KernelBackend backend = KernelBackend::FourierSymbol;
    DerivativeBackend derivative = DerivativeBackend::Spectral;
    // 2/3-rule truncation of (a, c) before products and of the assembled rhs.
    bool dealias = false;
    double cfl = 0.3;
    CflPolicy cfl_policy = CflPolicy::Warn;
    double blowup_cap = 1e6;
    // Receives CFL warnings; nullptr discards them.
    std::function<void(const std::string&)> on_warning;
};

// Called with the state and its recovered b.
using Observer = std::function<void(const State&, const Field& b)>;

// u = a - a_xx (and w = c - c_xx) with the spectral second derivative.
Field compute_u(const Field& a);
inline Field compute_w(const Field& c) { return compute_u(c); }

// f1 = a_x b_x + a_x^2 c_x + 3ab - 3 a_x a c,  g1 = b a_x + 3a^2 c + 3a a_x c_x.
Forcing assemble_f1_g1(const Field& a, const Field& c, const Field& b);
// f2 = b_x c_x - a_x c_x^2 + 3bc + 3a c c_x,  g2 = b c_x - 3a c^2 - 3a_x c c_x.
Forcing assemble_f2_g2(const Field& a, const Field& c, const Field& b);

// Right side of 4b - b_xx = a_xx c_x - c_xx a_x + 3 a_x c - 3 a c_x.
Field elliptic_source(const Field& a, const Field& c);
// The same source rewritten through u and w: a_x w - c_x u + 2 a_x c - 2 a c_x.
Field elliptic_source_uw(const Field& a, const Field& c);

class Solver {
public:
    explicit Solver(SolverOptions options = {});

    const SolverOptions& options() const noexcept { return options_; }

    // b = G2 * elliptic_source(a, c).
    Field recover_b(const Field& a, const Field& c) const;
    // b = G2 * elliptic_source_uw(a, c); must agree with recover_b.
    Field recover_b_uw(const Field& a, const Field& c) const;

    // a_t = a_x b + (1/2) d_x G1*f1 + (1/2) G1*g1, and the c line with f2, g2.
    Rhs rhs(const State& s) const;

    // cfl * dx / max(1e-12, ||b||_inf) for the given b.
    double cfl_limit(const Field& b) const;

    // Classical four-stage Runge-Kutta. dt may be negative (backward in time).
    State step_rk4(const State& s, double dt) const;

    // Steps of |dt| toward t_end, the last one shortened to land exactly on
    // t_end. The observer sees the initial state, every `stride`-th step and
    // the final state. Throws BlowUpError if a sup norm exceeds the cap.
    State evolve(const State& s0, double t_end, double dt, const Observer& observer = {},
                 std::size_t stride = 1) const;

private:
    struct Eval {
        Rhs rhs;
        Field b;
    };
    Eval evaluate(const State& s) const;
    Eval evaluate_fused(const State& s) const;
    Eval evaluate_generic(const State& s) const;
    void check_cfl(const Field& b, double dt, double t) const;

    SolverOptions options_;
};

}  // namespace tricam
