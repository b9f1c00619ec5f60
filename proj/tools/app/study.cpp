#include "study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include "io.hpp"
#include "run.hpp"

namespace tricam::app {

namespace fs = std::filesystem;

namespace {

struct PointResult {
    RunResult run;
    RunConfig cfg;
    std::string log;
};

PointResult run_point(const StudyConfig& st, double value, const fs::path& dir) {
    PointResult p;
    p.cfg = sweep_point(st, value);
    std::ostringstream log;
    try {
        p.run = execute_run(p.cfg, dir, log);
    } catch (const std::exception& e) {
        p.run.exit_code = kExitBlowUp;
        p.run.status = "aborted";
        p.run.message = e.what();
    }
    p.log = log.str();
    return p;
}

// Sup distance of the terminal (a, c), sampling the finer grid at the coarser nodes.
double terminal_distance(const RunResult& x, const RunResult& y) {
    if (x.status != "ok" || y.status != "ok") return kNaN;
    const Grid1D& gx = x.final_state.a.grid();
    const Grid1D& gy = y.final_state.a.grid();
    if (gx.x_min != gy.x_min || gx.x_max != gy.x_max) return kNaN;
    const bool x_coarse = gx.n <= gy.n;
    const State& coarse = x_coarse ? x.final_state : y.final_state;
    const State& fine = x_coarse ? y.final_state : x.final_state;
    const std::size_t nc = coarse.a.size(), nf = fine.a.size();
    if (nf % nc != 0) return kNaN;
    const std::size_t r = nf / nc;
    double d = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
        d = std::max({d, std::abs(coarse.a[i] - fine.a[i * r]), std::abs(coarse.c[i] - fine.c[i * r])});
    }
    return d;
}

// Resolution parameter h of a sweep point; smaller is finer.
double resolution(SweepAxis axis, double value) {
    return axis == SweepAxis::TimeStep ? value : 1.0 / value;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream ss;
    ss << std::setprecision(6) << v;
    return ss.str();
}

}  // namespace

bool StudyReport::all_passed() const noexcept {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const InvariantCheck& c) { return c.passed; });
}

StudyReport execute_study(const StudyConfig& st, const fs::path& dir, std::ostream& log) {
    fs::create_directories(dir);
    std::vector<fs::path> dirs;
    for (double v : st.values) {
        std::ostringstream name;
        name << to_string(st.axis) << '-' << std::setprecision(12) << v;
        dirs.push_back(dir / name.str());
    }
    std::vector<PointResult> points(st.values.size());
    if (st.parallel) {
        std::vector<std::future<PointResult>> futures;
        for (std::size_t i = 0; i < st.values.size(); ++i) {
            futures.push_back(std::async(std::launch::async, run_point, std::cref(st), st.values[i], dirs[i]));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) points[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < st.values.size(); ++i) points[i] = run_point(st, st.values[i], dirs[i]);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        log << points[i].log;
        if (points[i].run.exit_code != kExitOk) {
            log << "sweep point " << st.values[i] << ": " << points[i].run.status << ": " << points[i].run.message
                << '\n';
        }
    }

    StudyReport rep;
    const std::size_t n = points.size();
    // Coarse-to-fine ordering: time-step values ascend toward coarse, the others toward fine.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = st.axis == SweepAxis::TimeStep ? n - 1 - i : i;
    const std::size_t finest = order.back();

    rep.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        StudyRow& row = rep.rows[i];
        const RunResult& r = points[i].run;
        row.value = st.values[i];
        row.status = r.status;
        row.grid_n = points[i].cfg.grid_n;
        row.dt = r.dt;
        if (i != finest) row.terminal_error = terminal_distance(r, points[finest].run);
        if (r.records.size() >= 2) {
            row.verdict = check_run(r.records);
            double tv = 0.0;
            for (const auto& rec : r.records) tv = std::max(tv, rec.tv_ax);
            row.tv_ax_max = tv;
            row.u0_l1 = r.records.front().norms.at(Component::U, NormSlot::L1);
            double margin = kInfinity;
            for (Component c : {Component::U, Component::W}) {
                for (NormSlot p : {NormSlot::L1, NormSlot::LOnePlusEps, NormSlot::L2}) {
                    const GrowthEnvelope env = growth_envelope(r.records, c, p);
                    margin = std::min(margin, env.min_margin());
                    row.c_t = env.c_t;
                }
            }
            row.envelope_margin = margin;
        }
        if (st.axis == SweepAxis::MollificationIndex && r.initial.a.size() > 0) {
            PeakonParams pk{points[i].cfg.params.a_peakons, 1.0};
            row.h1_initial_distance = h1_norm(r.initial.a - peakon_field(pk, r.initial.a.grid()));
        }
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        rep.rows[order[j]].successive_diff = terminal_distance(points[order[j]].run, points[order[j + 1]].run);
    }
    for (std::size_t j = 0; j + 2 < n; ++j) {
        const double d0 = rep.rows[order[j]].successive_diff, d1 = rep.rows[order[j + 1]].successive_diff;
        const double h0 = resolution(st.axis, st.values[order[j]]);
        const double h1 = resolution(st.axis, st.values[order[j + 1]]);
        rep.rows[order[j + 1]].order = std::log(d0 / d1) / std::log(h0 / h1);
    }
    if (n >= 3) rep.estimated_order = rep.rows[order[n - 2]].order;

    auto add = [&](std::string name, double measured, double limit, bool passed, std::string note = {}) {
        rep.verdicts.push_back({std::move(name), measured, limit, passed, std::move(note)});
    };

    std::size_t failed_runs = 0;
    for (const auto& row : rep.rows) failed_runs += row.status != "ok";
    add("runs_completed", static_cast<double>(failed_runs), 0.0, failed_runs == 0);

    // Per-run invariants, aggregated as the worst sweep point.
    if (!rep.rows.empty() && !rep.rows.front().verdict.checks.empty()) {
        for (const auto& proto : rep.rows.front().verdict.checks) {
            double worst = 0.0;
            bool ok = true;
            std::string failing;
            for (const auto& row : rep.rows) {
                const InvariantCheck* c = row.verdict.find(proto.name);
                if (!c) continue;
                worst = std::max(worst, c->measured);
                if (!c->passed) {
                    ok = false;
                    failing += (failing.empty() ? "" : ",") + fmt(row.value);
                }
            }
            add(proto.name, worst, proto.limit, ok, failing.empty() ? "" : "fails at " + failing);
        }
    }

    if (st.axis == SweepAxis::TimeStep) {
        const double p = rep.estimated_order;
        add("rk4_order", p, 0.3, std::abs(p - 4.0) <= 0.3, "|order - 4| <= 0.3");
    }
    if (st.axis == SweepAxis::MollificationIndex) {
        bool decreasing = true;
        for (std::size_t i = 1; i < n; ++i) {
            if (!(rep.rows[i].h1_initial_distance < rep.rows[i - 1].h1_initial_distance)) decreasing = false;
        }
        add("initial_h1_distance_decreasing", rep.rows.back().h1_initial_distance, 0.0, decreasing,
            "||a0^n - a0||_H1 strictly decreasing in n");
        // TV(a_x) <= ||a||_1 + ||u||_1 <= 2 exp(T C_T) ||u0||_1, one constant for the whole cascade.
        double c_t = 0.0, u0 = 0.0, tv = 0.0;
        for (const auto& row : rep.rows) {
            c_t = std::max(c_t, std::isnan(row.c_t) ? 0.0 : row.c_t);
            u0 = std::max(u0, std::isnan(row.u0_l1) ? 0.0 : row.u0_l1);
            tv = std::max(tv, std::isnan(row.tv_ax_max) ? 0.0 : row.tv_ax_max);
        }
        rep.tv_bound = 2.0 * std::exp(st.base.t_end * c_t) * u0;
        add("tv_uniform_bound", tv, rep.tv_bound, tv <= rep.tv_bound, "max TV(a_x) over the cascade");
    }
    return rep;
}

int cmd_study(const StudyConfig& st, std::ostream& out, std::ostream& err) {
    const fs::path dir = output_dir(st.base, "study");
    const StudyReport rep = execute_study(st, dir, err);

    std::ofstream csv(dir / "summary.csv");
    csv << "value,status,grid_n,dt,terminal_error,successive_diff,order,h1_initial_distance,tv_ax_max,"
           "envelope_margin\n";
    out << "study " << to_string(st.axis) << " -> " << dir.string() << '\n';
    out << std::left << std::setw(10) << "value" << std::setw(9) << "status" << std::setw(8) << "grid_n"
        << std::setw(13) << "dt" << std::setw(13) << "term_err" << std::setw(13) << "succ_diff" << std::setw(10)
        << "order" << std::setw(13) << "h1_dist0" << std::setw(13) << "tv_ax_max" << "env_margin\n";
    for (const auto& r : rep.rows) {
        csv << format_double(r.value) << ',' << r.status << ',' << r.grid_n << ',' << format_double(r.dt) << ','
            << format_double(r.terminal_error) << ',' << format_double(r.successive_diff) << ','
            << format_double(r.order) << ',' << format_double(r.h1_initial_distance) << ','
            << format_double(r.tv_ax_max) << ',' << format_double(r.envelope_margin) << '\n';
        out << std::left << std::setw(10) << fmt(r.value) << std::setw(9) << r.status << std::setw(8) << r.grid_n
            << std::setw(13) << fmt(r.dt) << std::setw(13) << fmt(r.terminal_error) << std::setw(13)
            << fmt(r.successive_diff) << std::setw(10) << fmt(r.order) << std::setw(13)
            << fmt(r.h1_initial_distance) << std::setw(13) << fmt(r.tv_ax_max) << fmt(r.envelope_margin) << '\n';
    }
    std::ofstream verdicts(dir / "verdicts.txt");
    out << "estimated order: " << fmt(rep.estimated_order) << '\n';
    for (const auto& c : rep.verdicts) {
        std::ostringstream line;
        line << std::left << std::setw(32) << c.name << (c.passed ? "pass" : "FAIL") << "  measured=" << fmt(c.measured)
             << " limit=" << fmt(c.limit);
        if (!c.note.empty()) line << "  " << c.note;
        out << line.str() << '\n';
        verdicts << line.str() << '\n';
    }
    return rep.all_passed() ? kExitOk : kExitAssertion;
}

}  // namespace tricam::app
