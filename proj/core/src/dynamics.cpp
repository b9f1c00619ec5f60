#include "tricam/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "tricam/errors.hpp"
#include "tricam/spectral.hpp"

namespace tricam {

Field compute_u(const Field& a) {
    require_finite(a, "compute_u");
    return a - second_derivative(a);
}

namespace {

struct Derivs {
    Field x;
    Field xx;
};

Forcing forcing_1(const Field& a, const Field& ax, const Field& c, const Field& cx, const Field& b, const Field& bx) {
    Field f(a.grid()), g(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) {
        f[i] = ax[i] * bx[i] + ax[i] * ax[i] * cx[i] + 3.0 * a[i] * b[i] - 3.0 * ax[i] * a[i] * c[i];
        g[i] = b[i] * ax[i] + 3.0 * a[i] * a[i] * c[i] + 3.0 * a[i] * ax[i] * cx[i];
    }
    return {std::move(f), std::move(g)};
}

Forcing forcing_2(const Field& a, const Field& ax, const Field& c, const Field& cx, const Field& b, const Field& bx) {
    Field f(a.grid()), g(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) {
        f[i] = bx[i] * cx[i] - ax[i] * cx[i] * cx[i] + 3.0 * b[i] * c[i] + 3.0 * a[i] * c[i] * cx[i];
        g[i] = b[i] * cx[i] - 3.0 * a[i] * c[i] * c[i] - 3.0 * ax[i] * c[i] * cx[i];
    }
    return {std::move(f), std::move(g)};
}

Field source(const Field& a, const Derivs& da, const Field& c, const Derivs& dc) {
    Field r(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = da.xx[i] * dc.x[i] - dc.xx[i] * da.x[i] + 3.0 * da.x[i] * c[i] - 3.0 * a[i] * dc.x[i];
    }
    return r;
}

Derivs derivs_of(const Field& f, DerivativeBackend backend) {
    return {derivative(f, backend), second_derivative(f, backend)};
}

Field two_thirds_filter(const Field& f) {
    const Grid1D& g = f.grid();
    return spectral::apply_symbol(f, [&](double, std::size_t m) {
        return spectral::inside_two_thirds(g, m) ? 1.0 : 0.0;
    });
}

void require_state(const State& s, const char* what) {
    require_same_grid(s.a, s.c, what);
    require_finite(s.a, what);
    require_finite(s.c, what);
}

}  // namespace

Forcing assemble_f1_g1(const Field& a, const Field& c, const Field& b) {
    require_same_grid(a, c, "assemble_f1_g1");
    require_same_grid(a, b, "assemble_f1_g1");
    Forcing out = forcing_1(a, derivative(a), c, derivative(c), b, derivative(b));
    require_finite(out.f, "f1");
    require_finite(out.g, "g1");
    return out;
}

Forcing assemble_f2_g2(const Field& a, const Field& c, const Field& b) {
    require_same_grid(a, c, "assemble_f2_g2");
    require_same_grid(a, b, "assemble_f2_g2");
    Forcing out = forcing_2(a, derivative(a), c, derivative(c), b, derivative(b));
    require_finite(out.f, "f2");
    require_finite(out.g, "g2");
    return out;
}

Field elliptic_source(const Field& a, const Field& c) {
    require_same_grid(a, c, "elliptic_source");
    return source(a, derivs_of(a, DerivativeBackend::Spectral), c, derivs_of(c, DerivativeBackend::Spectral));
}

Field elliptic_source_uw(const Field& a, const Field& c) {
    require_same_grid(a, c, "elliptic_source_uw");
    const Field ax = derivative(a), cx = derivative(c);
    const Field u = compute_u(a), w = compute_w(c);
    Field r(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = ax[i] * w[i] - cx[i] * u[i] + 2.0 * ax[i] * c[i] - 2.0 * a[i] * cx[i];
    }
    return r;
}

Solver::Solver(SolverOptions options) : options_(std::move(options)) {
    if (!(options_.cfl > 0.0)) throw InvalidArgumentError("cfl must be positive");
    if (!(options_.blowup_cap > 0.0)) throw InvalidArgumentError("blow-up cap must be positive");
}

Field Solver::recover_b(const Field& a, const Field& c) const {
    require_same_grid(a, c, "recover_b");
    const Field r = source(a, derivs_of(a, options_.derivative), c, derivs_of(c, options_.derivative));
    require_finite(r, "recover_b source");
    return conv_g2(r, options_.backend);
}

Field Solver::recover_b_uw(const Field& a, const Field& c) const {
    const Field r = elliptic_source_uw(a, c);
    require_finite(r, "recover_b_uw source");
    return conv_g2(r, options_.backend);
}

Solver::Eval Solver::evaluate(const State& s) const {
    const bool fused = options_.backend == KernelBackend::FourierSymbol &&
                       options_.derivative == DerivativeBackend::Spectral;
    Eval e = fused ? evaluate_fused(s) : evaluate_generic(s);
    if (options_.dealias) {
        e.rhs.da_dt = two_thirds_filter(e.rhs.da_dt);
        e.rhs.dc_dt = two_thirds_filter(e.rhs.dc_dt);
    }
    require_finite(e.rhs.da_dt, "rhs a_t");
    require_finite(e.rhs.dc_dt, "rhs c_t");
    return e;
}

// All-spectral path: one forward transform per input, derivatives and kernel
// symbols applied mode by mode.
Solver::Eval Solver::evaluate_fused(const State& s) const {
    using cplx = std::complex<double>;
    const Grid1D& g = s.a.grid();
    spectral::Spectrum A = spectral::forward(s.a);
    spectral::Spectrum C = spectral::forward(s.c);
    if (options_.dealias) {
        for (std::size_t m = 0; m < A.size(); ++m) {
            if (!spectral::inside_two_thirds(g, m)) A[m] = C[m] = 0.0;
        }
    }
    auto with_symbol = [&](const spectral::Spectrum& in, auto&& sym) {
        spectral::Spectrum out(in.size());
        for (std::size_t m = 0; m < in.size(); ++m) out[m] = in[m] * sym(spectral::wavenumber(g, m), m);
        return spectral::inverse(out, g);
    };
    auto d1 = [&](double k, std::size_t m) { return spectral::is_nyquist(g, m) ? cplx(0.0) : cplx(0.0, k); };
    auto d2 = [](double k, std::size_t) { return cplx(-k * k); };
    auto id = [](double, std::size_t) { return cplx(1.0); };

    const Field a = options_.dealias ? with_symbol(A, id) : s.a;
    const Field c = options_.dealias ? with_symbol(C, id) : s.c;
    const Derivs da{with_symbol(A, d1), with_symbol(A, d2)};
    const Derivs dc{with_symbol(C, d1), with_symbol(C, d2)};

    const spectral::Spectrum R = spectral::forward(source(a, da, c, dc));
    const ExpKernel g2 = ExpKernel::g2();
    Field b = with_symbol(R, [&](double k, std::size_t) { return g2.symbol(k); });
    const Field bx = with_symbol(R, [&](double k, std::size_t m) { return d1(k, m) * g2.symbol(k); });

    const ExpKernel g1 = ExpKernel::g1();
    auto nonlocal = [&](const Forcing& fg) {
        const spectral::Spectrum F = spectral::forward(fg.f);
        const spectral::Spectrum G = spectral::forward(fg.g);
        spectral::Spectrum out(F.size());
        for (std::size_t m = 0; m < F.size(); ++m) {
            const double k = spectral::wavenumber(g, m);
            out[m] = 0.5 * (d1(k, m) * F[m] + G[m]) * g1.symbol(k);
        }
        return spectral::inverse(out, g);
    };
    Field at = nonlocal(forcing_1(a, da.x, c, dc.x, b, bx));
    Field ct = nonlocal(forcing_2(a, da.x, c, dc.x, b, bx));
    for (std::size_t i = 0; i < at.size(); ++i) {
        at[i] += da.x[i] * b[i];
        ct[i] += dc.x[i] * b[i];
    }
    return {{std::move(at), std::move(ct)}, std::move(b)};
}

Solver::Eval Solver::evaluate_generic(const State& s) const {
    const Field a = options_.dealias ? two_thirds_filter(s.a) : s.a;
    const Field c = options_.dealias ? two_thirds_filter(s.c) : s.c;
    const Derivs da = derivs_of(a, options_.derivative);
    const Derivs dc = derivs_of(c, options_.derivative);
    const Field r = source(a, da, c, dc);
    Field b = conv_g2(r, options_.backend);
    const Field bx = conv_g2_dx(r, options_.backend);
    const Forcing fg1 = forcing_1(a, da.x, c, dc.x, b, bx);
    const Forcing fg2 = forcing_2(a, da.x, c, dc.x, b, bx);
    Field at = 0.5 * conv_g1_dx(fg1.f, options_.backend) + 0.5 * conv_g1(fg1.g, options_.backend);
    Field ct = 0.5 * conv_g1_dx(fg2.f, options_.backend) + 0.5 * conv_g1(fg2.g, options_.backend);
    for (std::size_t i = 0; i < at.size(); ++i) {
        at[i] += da.x[i] * b[i];
        ct[i] += dc.x[i] * b[i];
    }
    return {{std::move(at), std::move(ct)}, std::move(b)};
}

Rhs Solver::rhs(const State& s) const {
    require_state(s, "rhs");
    return evaluate(s).rhs;
}

double Solver::cfl_limit(const Field& b) const {
    return options_.cfl * b.grid().dx / std::max(1e-12, b.sup_norm());
}

void Solver::check_cfl(const Field& b, double dt, double t) const {
    if (options_.cfl_policy == CflPolicy::Ignore) return;
    const double limit = cfl_limit(b);
    if (std::abs(dt) <= limit) return;
    std::ostringstream msg;
    msg.precision(6);
    msg << "cfl violation at t=" << t << ": |dt|=" << std::abs(dt) << " > " << limit;
    if (options_.cfl_policy == CflPolicy::Error) throw CflViolationError(msg.str());
    if (options_.on_warning) options_.on_warning(msg.str());
}

State Solver::step_rk4(const State& s, double dt) const {
    require_state(s, "step_rk4");
    if (dt == 0.0 || !std::isfinite(dt)) throw InvalidArgumentError("step_rk4: dt must be finite and non-zero");
    auto stage = [&](const Rhs& k, double h) {
        State out{s.t + h, s.a, s.c};
        for (std::size_t i = 0; i < out.a.size(); ++i) {
            out.a[i] += h * k.da_dt[i];
            out.c[i] += h * k.dc_dt[i];
        }
        return out;
    };
    const Eval e1 = evaluate(s);
    check_cfl(e1.b, dt, s.t);
    const Rhs k2 = evaluate(stage(e1.rhs, 0.5 * dt)).rhs;
    const Rhs k3 = evaluate(stage(k2, 0.5 * dt)).rhs;
    const Rhs k4 = evaluate(stage(k3, dt)).rhs;
    const Rhs& k1 = e1.rhs;
    State out{s.t + dt, s.a, s.c};
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        out.a[i] += w * (k1.da_dt[i] + 2.0 * k2.da_dt[i] + 2.0 * k3.da_dt[i] + k4.da_dt[i]);
        out.c[i] += w * (k1.dc_dt[i] + 2.0 * k2.dc_dt[i] + 2.0 * k3.dc_dt[i] + k4.dc_dt[i]);
    }
    if (!out.a.all_finite() || !out.c.all_finite()) {
        throw BlowUpError("non-finite state after step from t=" + std::to_string(s.t), s.t);
    }
    return out;
}

State Solver::evolve(const State& s0, double t_end, double dt, const Observer& observer, std::size_t stride) const {
    require_state(s0, "evolve");
    if (!std::isfinite(t_end)) throw InvalidArgumentError("evolve: t_end must be finite");
    if (!(std::abs(dt) > 0.0) || !std::isfinite(dt)) throw InvalidArgumentError("evolve: dt must be non-zero");
    if (stride == 0) stride = 1;
    auto observe = [&](const State& s) {
        if (observer) observer(s, recover_b(s.a, s.c));
    };
    observe(s0);
    const double span = t_end - s0.t;
    if (span == 0.0) return s0;
    const double h = std::copysign(std::abs(dt), span);
    // Full steps while at least one whole step remains (relative slack 1e-12).
    const auto full = static_cast<std::size_t>(std::floor(std::abs(span) / std::abs(h) * (1.0 + 1e-12)));
    State s = s0;
    std::size_t k = 0;
    auto check_blowup = [&](const State& st) {
        const double sa = st.a.sup_norm(), sc = st.c.sup_norm();
        if (sa > options_.blowup_cap || sc > options_.blowup_cap) {
            std::ostringstream msg;
            msg << "blow-up at t=" << st.t << ": ||a||_inf=" << sa << " ||c||_inf=" << sc << " cap "
                << options_.blowup_cap;
            throw BlowUpError(msg.str(), st.t);
        }
    };
    for (; k < full; ++k) {
        s = step_rk4(s, h);
        s.t = (k + 1 == full && std::abs(s0.t + (k + 1) * h - t_end) <= 1e-12 * std::abs(span))
                  ? t_end
                  : s0.t + static_cast<double>(k + 1) * h;
        check_blowup(s);
        if ((k + 1) % stride == 0 && s.t != t_end) observe(s);
    }
    if (s.t != t_end) {
        s = step_rk4(s, t_end - s.t);
        s.t = t_end;
        check_blowup(s);
    }
    observe(s);
    return s;
}

}  // namespace tricam
