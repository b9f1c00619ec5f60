#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "io.hpp"
#include "tricam/errors.hpp"
#include "tricam/version.hpp"

namespace tricam::app {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

void write_manifest(const fs::path& dir, const RunConfig& cfg, const RunResult& r, const std::string& started,
                    double wall) {
    std::ofstream m(dir / "manifest.txt");
    m << "# tricam run manifest\n";
    m << "version=" << kVersion << '\n';
    m << "manifest_hash=" << manifest_hash(cfg) << '\n';
    for (const auto& [k, v] : cfg.resolved) m << k << '=' << v << '\n';
    m << "out=" << dir.string() << '\n';
    m << "dt_used=" << format_double(r.dt) << '\n';
    m << "steps=" << r.steps << '\n';
    m << "rows=" << r.records.size() << '\n';
    m << "status=" << r.status << '\n';
    if (!r.message.empty()) m << "message=" << r.message << '\n';
    m << "started_utc=" << started << '\n';
    m << "wall_seconds=" << std::fixed << std::setprecision(3) << wall << '\n';
}

}  // namespace

fs::path output_dir(const RunConfig& cfg, const std::string& leaf) {
    if (!cfg.out.empty()) return cfg.out;
    if (const char* env = std::getenv("TRICAM_OUT"); env && *env) return fs::path(env) / leaf;
    return fs::path("tricam_out") / leaf;
}

double resolve_dt(const RunConfig& cfg, const State& s0, const Solver& solver) {
    if (cfg.dt > 0.0) return cfg.dt;
    return std::min(cfg.dt_max, solver.cfl_limit(solver.recover_b(s0.a, s0.c)));
}

RunResult execute_run(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    const auto t_start = std::chrono::steady_clock::now();
    const std::string started = utc_now();
    RunResult r;
    r.dir = dir;
    fs::create_directories(dir);
    if (cfg.snapshot != SnapshotFormat::None) fs::create_directories(dir / "snapshots");
    const std::string hash = manifest_hash(cfg);

    SolverOptions opts = run_solver_options(cfg);
    opts.on_warning = [&log](const std::string& w) { log << "warning: " << w << '\n'; };
    const Solver solver(opts);
    r.initial = run_initial_state(cfg);
    r.final_state = r.initial;
    r.dt = resolve_dt(cfg, r.initial, solver);
    r.steps = static_cast<std::size_t>(std::ceil(cfg.t_end / r.dt * (1.0 - 1e-12)));
    write_manifest(dir, cfg, r, started, 0.0);

    DiagnosticsCsv csv(dir / "diagnostics.csv", hash);
    const MeasureOptions mopts{cfg.epsilon};
    std::size_t calls = 0;
    auto observer = [&](const State& s, const Field& b) {
        r.records.push_back(measure(s, b, solver, mopts));
        csv.write(r.records.back());
        r.final_state = s;
        const bool last = s.t == cfg.t_end;
        const bool take = calls == 0 || last || (cfg.snapshot_stride > 0 && calls % cfg.snapshot_stride == 0);
        if (cfg.snapshot != SnapshotFormat::None && take) {
            char name[32];
            std::snprintf(name, sizeof name, "snap_%06zu.%s", calls,
                          cfg.snapshot == SnapshotFormat::Csv ? "csv" : "bin");
            const SnapshotData snap = make_snapshot(s, b);
            if (cfg.snapshot == SnapshotFormat::Csv) write_snapshot_csv(dir / "snapshots" / name, snap, hash);
            else write_snapshot_binary(dir / "snapshots" / name, snap);
        }
        ++calls;
    };

    try {
        solver.evolve(r.initial, cfg.t_end, r.dt, observer, cfg.stride);
    } catch (const BlowUpError& e) {
        r.exit_code = kExitBlowUp;
        r.status = "blow-up";
        r.message = e.what();
    } catch (const CflViolationError& e) {
        r.exit_code = kExitBlowUp;
        r.status = "aborted";
        r.message = e.what();
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(dir, cfg, r, started, wall);
    return r;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const fs::path dir = output_dir(cfg, "run");
    const RunResult r = execute_run(cfg, dir, err);
    out << "run " << r.status << ": " << r.records.size() << " rows, dt=" << format_double(r.dt) << ", out=" << dir.string()
        << '\n';
    if (r.exit_code != kExitOk) {
        err << "error: " << r.message << '\n';
        return r.exit_code;
    }
    const RunVerdict v = check_run(r.records);
    for (const auto& c : v.checks) {
        out << "  " << std::left << std::setw(20) << c.name << (c.passed ? " pass " : " FAIL ") << std::scientific
            << std::setprecision(3) << c.measured << " <= " << c.limit << std::defaultfloat;
        if (!c.note.empty()) out << "  (" << c.note << ')';
        out << '\n';
    }
    return kExitOk;
}

}  // namespace tricam::app
