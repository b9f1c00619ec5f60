#include "tricam/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tricam/errors.hpp"
#include "tricam/kernels.hpp"

namespace tricam {

double conserved_h1(const State& s) {
    require_same_grid(s.a, s.c, "conserved_h1");
    const Field ax = derivative(s.a), cx = derivative(s.c);
    return integrate(product(s.a, s.c) + product(ax, cx));
}

H2Forms conserved_h2(const State& s) {
    require_same_grid(s.a, s.c, "conserved_h2");
    const Field u = compute_u(s.a), w = compute_w(s.c);
    return {integrate(product(u, derivative(s.c))), -integrate(product(w, derivative(s.a)))};
}

namespace {

double slope_excess(const Field& f, const Field& fx) {
    double m = -kInfinity;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(fx[i]) - f[i]);
    return m;
}

}  // namespace

SignSlope sign_and_slope_check(const State& s) {
    require_same_grid(s.a, s.c, "sign_and_slope_check");
    return {compute_u(s.a).min(), compute_w(s.c).min(), slope_excess(s.a, derivative(s.a)),
            slope_excess(s.c, derivative(s.c))};
}

BBounds b_bounds(const State& s, const Field& b) {
    require_same_grid(s.a, b, "b_bounds");
    const Field bx = derivative(b);
    const Field src = elliptic_source(s.a, s.c);
    const Field residual = 4.0 * b - second_derivative(b) - src;
    return {h1_norm(b), b.sup_norm(), bx.sup_norm(), residual.sup_norm(), src.sup_norm()};
}

double total_variation(const Field& f) {
    require_finite(f, "total_variation");
    const std::size_t n = f.size();
    double tv = 0.0;
    for (std::size_t i = 0; i < n; ++i) tv += std::abs(f[(i + 1) % n] - f[i]);
    return tv;
}

double g2_young_constant(const Grid1D& grid) {
    Field impulse(grid);
    impulse[0] = 1.0 / grid.dx;
    return h1_norm(conv_g2(impulse));
}

std::string_view to_string(Component c) noexcept {
    switch (c) {
        case Component::A: return "a";
        case Component::C: return "c";
        case Component::B: return "b";
        case Component::U: return "u";
        case Component::W: return "w";
    }
    return "?";
}

DiagnosticsRecord measure(const State& s, const Field& b, const Solver& solver, const MeasureOptions& opts) {
    require_same_grid(s.a, s.c, "measure");
    require_same_grid(s.a, b, "measure");
    DiagnosticsRecord r;
    r.t = s.t;
    r.epsilon = opts.epsilon;
    const Field ax = derivative(s.a), cx = derivative(s.c);
    const Field u = compute_u(s.a), w = compute_w(s.c);

    r.H1 = integrate(product(s.a, s.c) + product(ax, cx));
    r.H2_form1 = integrate(product(u, cx));
    r.H2_form2 = -integrate(product(w, ax));

    r.min_u = u.min();
    r.min_w = w.min();
    r.slope_excess_a = slope_excess(s.a, ax);
    r.slope_excess_c = slope_excess(s.c, cx);

    const double p_mid = 1.0 + opts.epsilon;
    const std::pair<Component, const Field*> fields[] = {
        {Component::A, &s.a}, {Component::C, &s.c}, {Component::B, &b}, {Component::U, &u}, {Component::W, &w}};
    for (const auto& [comp, f] : fields) {
        r.norms.at(comp, NormSlot::L1) = lp_norm(*f, 1.0);
        r.norms.at(comp, NormSlot::LOnePlusEps) = lp_norm(*f, p_mid);
        r.norms.at(comp, NormSlot::L2) = lp_norm(*f, 2.0);
        r.norms.at(comp, NormSlot::LInf) = lp_norm(*f, kInfinity);
    }

    const Field bx = derivative(b);
    const Field src = elliptic_source(s.a, s.c);
    r.b_h1 = h1_norm(b);
    r.b_sup = b.sup_norm();
    r.bx_sup = bx.sup_norm();
    r.elliptic_residual = (4.0 * b - second_derivative(b) - src).sup_norm();
    r.source_sup = src.sup_norm();
    r.tv_ax = total_variation(ax);
    r.tv_bx = total_variation(bx);

    r.b_form_gap = max_abs_diff(b, solver.recover_b_uw(s.a, s.c));
    r.product_sup = (product(ax, cx) - product(s.a, s.c)).sup_norm();
    r.integral_a = integrate(s.a);
    r.integral_c = integrate(s.c);
    r.integral_u = integrate(u);
    r.integral_w = integrate(w);
    return r;
}

namespace {

constexpr std::string_view kColumns[] = {
    "t",        "H1",     "H2_form1", "H2_form2", "min_u", "min_w", "slope_excess_a", "slope_excess_c",
    "l1_u",     "l1_w",   "lp_u",     "lp_w",     "l2_a",  "l2_c",  "sup_a",          "sup_c",
    "b_h1",     "b_sup",  "bx_sup",   "elliptic_residual", "tv_ax", "tv_bx"};

}  // namespace

std::span<const std::string_view> diagnostics_columns() noexcept { return kColumns; }

std::vector<double> csv_values(const DiagnosticsRecord& r) {
    const auto& n = r.norms;
    return {r.t,
            r.H1,
            r.H2_form1,
            r.H2_form2,
            r.min_u,
            r.min_w,
            r.slope_excess_a,
            r.slope_excess_c,
            n.at(Component::U, NormSlot::L1),
            n.at(Component::W, NormSlot::L1),
            n.at(Component::U, NormSlot::LOnePlusEps),
            n.at(Component::W, NormSlot::LOnePlusEps),
            n.at(Component::A, NormSlot::L2),
            n.at(Component::C, NormSlot::L2),
            n.at(Component::A, NormSlot::LInf),
            n.at(Component::C, NormSlot::LInf),
            r.b_h1,
            r.b_sup,
            r.bx_sup,
            r.elliptic_residual,
            r.tv_ax,
            r.tv_bx};
}

bool GrowthEnvelope::holds() const noexcept {
    for (std::size_t i = 0; i < norm_series.size(); ++i) {
        if (!(norm_series[i] <= envelope_series[i])) return false;
    }
    return true;
}

double GrowthEnvelope::min_margin() const noexcept {
    double m = kInfinity;
    for (std::size_t i = 0; i < norm_series.size(); ++i) m = std::min(m, envelope_series[i] - norm_series[i]);
    return m;
}

GrowthEnvelope growth_envelope(std::span<const DiagnosticsRecord> trajectory, Component field, NormSlot p) {
    if (trajectory.size() < 2) throw InvalidArgumentError("growth_envelope needs at least 2 records");
    if (field != Component::U && field != Component::W) {
        throw InvalidArgumentError("growth_envelope applies to u or w");
    }
    GrowthEnvelope env;
    double bx_max = 0.0, prod_max = 0.0;
    for (const auto& r : trajectory) {
        bx_max = std::max(bx_max, r.bx_sup);
        prod_max = std::max(prod_max, r.product_sup);
    }
    env.c_t = 1.5 * (bx_max + prod_max);
    const double t0 = trajectory.front().t;
    const double n0 = trajectory.front().norms.at(field, p);
    for (const auto& r : trajectory) {
        env.times.push_back(r.t);
        env.norm_series.push_back(r.norms.at(field, p));
        env.envelope_series.push_back(std::exp((r.t - t0) * env.c_t) * n0);
    }
    return env;
}

bool RunVerdict::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

const InvariantCheck* RunVerdict::find(std::string_view name) const noexcept {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

double ratio(double num, double den, double floor) { return num / std::max(den, floor); }

}  // namespace

RunVerdict check_run(std::span<const DiagnosticsRecord> trajectory, const Tolerances& tol) {
    if (trajectory.empty()) throw InvalidArgumentError("check_run needs at least one record");
    RunVerdict v;
    auto add = [&](std::string name, double measured, double limit, std::string note = {}) {
        v.checks.push_back({std::move(name), measured, limit, measured <= limit, std::move(note)});
    };
    const DiagnosticsRecord& first = trajectory.front();
    constexpr double kFloor = 1e-12;

    double h1 = 0.0, h2 = 0.0, gap = 0.0, sign = 0.0, slope = 0.0, ell = 0.0, bform = 0.0, l1 = 0.0;
    std::size_t l1_applicable = 0;
    for (const auto& r : trajectory) {
        h1 = std::max(h1, ratio(std::abs(r.H1 - first.H1), std::abs(first.H1), kFloor));
        h2 = std::max(h2, ratio(std::abs(r.H2_form1 - first.H2_form1), std::abs(first.H2_form1), kFloor));
        gap = std::max(gap, std::abs(r.H2_form1 - r.H2_form2));
        const double u_sup = r.norms.at(Component::U, NormSlot::LInf);
        const double w_sup = r.norms.at(Component::W, NormSlot::LInf);
        const double su = ratio(std::max(0.0, -r.min_u), u_sup, 1e-300);
        const double sw = ratio(std::max(0.0, -r.min_w), w_sup, 1e-300);
        sign = std::max({sign, su, sw});
        slope = std::max({slope, ratio(std::max(0.0, r.slope_excess_a), r.norms.at(Component::A, NormSlot::LInf), 1e-300),
                          ratio(std::max(0.0, r.slope_excess_c), r.norms.at(Component::C, NormSlot::LInf), 1e-300)});
        // Only where u, w >= 0 do the norms reduce to the integrals.
        if (r.min_u >= 0.0 && r.min_w >= 0.0) {
            ++l1_applicable;
            l1 = std::max({l1, std::abs(r.norms.at(Component::A, NormSlot::L1) - r.norms.at(Component::U, NormSlot::L1)),
                           std::abs(r.norms.at(Component::C, NormSlot::L1) - r.norms.at(Component::W, NormSlot::L1))});
        }
        ell = std::max(ell, r.elliptic_residual / (1.0 + r.source_sup));
        bform = std::max(bform, ratio(r.b_form_gap, r.b_sup, kFloor));
    }
    add("h1_drift", h1, tol.h1_drift);
    add("h2_drift", h2, tol.h2_drift);
    add("h2_form_gap", gap, tol.h2_form_gap);
    add("sign_u_w", sign, tol.sign, "max(-min u)/||u||_inf over u and w");
    add("slope_a_c", slope, tol.slope, "max(|a_x|-a)/||a||_inf over a and c");
    {
        std::ostringstream note;
        note << l1_applicable << " of " << trajectory.size() << " samples with u, w >= 0";
        add("l1_identity", l1, tol.l1_identity, note.str());
    }
    add("elliptic_residual", ell, tol.elliptic);
    add("b_forms", bform, tol.b_forms);

    if (trajectory.size() >= 2) {
        const std::pair<Component, const char*> comps[] = {{Component::U, "u"}, {Component::W, "w"}};
        const std::pair<NormSlot, const char*> slots[] = {
            {NormSlot::L1, "L1"}, {NormSlot::LOnePlusEps, "L1+eps"}, {NormSlot::L2, "L2"}};
        for (const auto& [comp, cname] : comps) {
            for (const auto& [slot, sname] : slots) {
                const GrowthEnvelope env = growth_envelope(trajectory, comp, slot);
                double worst = 0.0;
                for (std::size_t i = 0; i < env.norm_series.size(); ++i) {
                    worst = std::max(worst, ratio(env.norm_series[i], env.envelope_series[i], 1e-300));
                }
                std::ostringstream note;
                note << "C_T=" << env.c_t;
                add(std::string("envelope_") + cname + "_" + sname, worst, 1.0, note.str());
            }
        }
    }
    return v;
}

}  // namespace tricam
