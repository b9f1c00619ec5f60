#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tricam/diagnostics.hpp"

namespace tricam::app {

// "%.17g"; round-trips every double.
std::string format_double(double v);

// diagnostics.csv: a "# manifest_hash=..." comment, the header, one row per record.
// Rows are flushed as they are written so an aborted run keeps what it had.
class DiagnosticsCsv {
public:
    DiagnosticsCsv(const std::filesystem::path& path, std::string_view manifest_hash);
    void write(const DiagnosticsRecord& r);

private:
    std::ofstream out_;
};

// One time slice as written to disk; u and w are stored, not recomputed.
struct SnapshotData {
    double t = 0.0;
    Grid1D grid;
    Field a, c, b, u, w;
};

SnapshotData make_snapshot(const State& s, const Field& b);

// CSV layout:
//   # t=<t> x_min=<x_min> x_max=<x_max> n=<n> manifest_hash=<h>
//   x,a,c,b,u,w
//   one row per node
void write_snapshot_csv(const std::filesystem::path& path, const SnapshotData& s, std::string_view manifest_hash);

// Binary layout, little-endian:
//   8 bytes  magic "TRICAMS1"
//   uint64   n
//   float64  x_min, x_max, t
//   float64  a[n], c[n], b[n], u[n], w[n]
inline constexpr char kSnapshotMagic[9] = "TRICAMS1";
void write_snapshot_binary(const std::filesystem::path& path, const SnapshotData& s);

class SnapshotParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
// Detects the format from the first bytes. Throws SnapshotParseError.
SnapshotData read_snapshot(const std::filesystem::path& path);

}  // namespace tricam::app
