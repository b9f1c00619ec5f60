#include "diag.hpp"

#include <algorithm>
#include <iomanip>
#include <stdexcept>

#include "config.hpp"

namespace tricam::app {

namespace {

constexpr const char* kChecks[] = {"sign", "slope", "h2", "elliptic", "l1", "consistency"};

double rel(double num, double den) { return den > 0.0 ? num / den : (num > 0.0 ? kInfinity : 0.0); }

}  // namespace

std::vector<std::string> expand_checks(const std::vector<std::string>& requested) {
    std::vector<std::string> out;
    auto push = [&](const std::string& c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    for (const auto& r : requested) {
        if (r == "all") {
            for (const char* c : kChecks) push(c);
        } else if (std::find(std::begin(kChecks), std::end(kChecks), r) != std::end(kChecks)) {
            push(r);
        } else {
            throw std::invalid_argument("unknown check '" + r + "'");
        }
    }
    if (out.empty()) {
        for (const char* c : kChecks) push(c);
    }
    return out;
}

InvariantCheck diag_check(const SnapshotData& s, const std::string& name, const Tolerances& tol) {
    InvariantCheck c;
    c.name = name;
    if (name == "sign") {
        c.measured = std::max(rel(std::max(0.0, -s.u.min()), s.u.sup_norm()),
                              rel(std::max(0.0, -s.w.min()), s.w.sup_norm()));
        c.limit = tol.sign;
        c.note = "stored u, w: -min / sup";
    } else if (name == "slope") {
        const State st{s.t, s.a, s.c};
        const SignSlope ss = sign_and_slope_check(st);
        c.measured = std::max(rel(std::max(0.0, ss.slope_excess_a), s.a.sup_norm()),
                              rel(std::max(0.0, ss.slope_excess_c), s.c.sup_norm()));
        c.limit = tol.slope;
        c.note = "max(|a_x| - a) / sup a, same for c";
    } else if (name == "h2") {
        const double f1 = integrate(product(s.u, derivative(s.c)));
        const double f2 = -integrate(product(s.w, derivative(s.a)));
        c.measured = std::abs(f1 - f2);
        c.limit = tol.h2_form_gap;
        c.note = "|int u c_x + int w a_x|";
    } else if (name == "elliptic") {
        const Field src = elliptic_source(s.a, s.c);
        const Field res = 4.0 * s.b - second_derivative(s.b) - src;
        c.measured = res.sup_norm() / (1.0 + src.sup_norm());
        c.limit = tol.elliptic;
        c.note = "||4b - b_xx - source|| / (1 + ||source||)";
    } else if (name == "l1") {
        const bool nonneg = s.u.min() >= -tol.sign * s.u.sup_norm() && s.w.min() >= -tol.sign * s.w.sup_norm();
        c.limit = tol.l1_identity;
        if (nonneg) {
            c.measured = std::max(std::abs(lp_norm(s.a, 1.0) - lp_norm(s.u, 1.0)),
                                  std::abs(lp_norm(s.c, 1.0) - lp_norm(s.w, 1.0)));
            c.note = "| ||a||_1 - ||u||_1 |, same for c";
        } else {
            c.measured = 0.0;
            c.note = "not applicable: u or w negative";
        }
    } else if (name == "consistency") {
        const Solver solver;
        const double du = rel(max_abs_diff(s.u, compute_u(s.a)), 1.0 + s.u.sup_norm());
        const double dw = rel(max_abs_diff(s.w, compute_w(s.c)), 1.0 + s.w.sup_norm());
        const double db = rel(max_abs_diff(s.b, solver.recover_b(s.a, s.c)), 1.0 + s.b.sup_norm());
        c.measured = std::max({du, dw, db});
        c.limit = tol.b_forms;
        c.note = "stored u, w, b against a - a_xx, c - c_xx, recovered b";
    } else {
        throw std::invalid_argument("unknown check '" + name + "'");
    }
    c.passed = c.measured <= c.limit;
    return c;
}

int cmd_diag(const std::filesystem::path& file, const std::vector<std::string>& checks, std::ostream& out,
             std::ostream& err) {
    std::vector<std::string> names;
    SnapshotData snap;
    try {
        names = expand_checks(checks);
        snap = read_snapshot(file);
    } catch (const std::exception& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitConfig;
    }
    bool ok = true;
    out << "diag " << file.string() << " t=" << format_double(snap.t) << " n=" << snap.grid.n << '\n';
    for (const auto& name : names) {
        const InvariantCheck c = diag_check(snap, name);
        ok = ok && c.passed;
        out << "  " << std::left << std::setw(12) << c.name << (c.passed ? "pass" : "FAIL") << "  measured="
            << std::scientific << std::setprecision(3) << c.measured << " tolerance=" << c.limit << std::defaultfloat
            << "  " << c.note << '\n';
    }
    return ok ? kExitOk : kExitAssertion;
}

}  // namespace tricam::app
