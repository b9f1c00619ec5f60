#include "io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "tricam/errors.hpp"

namespace tricam::app {

namespace {

template <class T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
        std::memcpy(&v, b, sizeof(T));
    }
    return v;
}

template <class T>
void put(std::ostream& out, T v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw SnapshotParseError("truncated binary snapshot");
    return to_little(v);
}

double parse_number(std::string_view s, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw SnapshotParseError(std::string("bad number in ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

std::string_view header_value(std::string_view line, std::string_view key) {
    const std::string pat = std::string(key) + "=";
    std::size_t pos = 0;
    while ((pos = line.find(pat, pos)) != std::string_view::npos) {
        if (pos == 0 || line[pos - 1] == ' ') break;
        ++pos;
    }
    if (pos == std::string_view::npos) throw SnapshotParseError("snapshot header lacks " + std::string(key));
    const auto start = pos + pat.size();
    const auto end = line.find(' ', start);
    return line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
}

void require_finite_fields(const SnapshotData& s) {
    const char* names[] = {"a", "c", "b", "u", "w"};
    const Field* fields[] = {&s.a, &s.c, &s.b, &s.u, &s.w};
    for (int k = 0; k < 5; ++k) {
        if (!fields[k]->all_finite()) throw SnapshotParseError(std::string("non-finite value in column ") + names[k]);
    }
}

Grid1D snapshot_grid(double x_min, double x_max, double n) {
    if (!(n >= static_cast<double>(kMinGridPoints)) || n != static_cast<double>(static_cast<std::size_t>(n))) {
        throw SnapshotParseError("snapshot grid size must be an integer >= 16");
    }
    try {
        return make_grid(x_min, x_max, static_cast<std::size_t>(n));
    } catch (const Error& e) {
        throw SnapshotParseError(e.what());
    }
}

SnapshotData read_csv(std::istream& in) {
    std::string line;
    std::getline(in, line);
    if (line.empty() || line[0] != '#') throw SnapshotParseError("snapshot CSV must start with a '# t=...' line");
    SnapshotData s;
    s.t = parse_number(header_value(line, "t"), "t");
    s.grid = snapshot_grid(parse_number(header_value(line, "x_min"), "x_min"),
                           parse_number(header_value(line, "x_max"), "x_max"),
                           parse_number(header_value(line, "n"), "n"));
    std::getline(in, line);
    if (line != "x,a,c,b,u,w") throw SnapshotParseError("snapshot CSV header must be x,a,c,b,u,w");
    std::vector<double> cols[5];
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::string_view rest = line;
        double vals[6];
        for (int k = 0; k < 6; ++k) {
            const auto comma = rest.find(',');
            if ((k < 5) != (comma != std::string_view::npos)) {
                throw SnapshotParseError("row " + std::to_string(row + 1) + " does not have 6 columns");
            }
            vals[k] = parse_number(rest.substr(0, comma), "row");
            rest = k < 5 ? rest.substr(comma + 1) : std::string_view{};
        }
        for (int k = 0; k < 5; ++k) cols[k].push_back(vals[k + 1]);
        ++row;
    }
    if (row != s.grid.n) {
        throw SnapshotParseError("snapshot has " + std::to_string(row) + " rows, header says " +
                                 std::to_string(s.grid.n));
    }
    s.a = Field(s.grid, std::move(cols[0]));
    s.c = Field(s.grid, std::move(cols[1]));
    s.b = Field(s.grid, std::move(cols[2]));
    s.u = Field(s.grid, std::move(cols[3]));
    s.w = Field(s.grid, std::move(cols[4]));
    require_finite_fields(s);
    return s;
}

SnapshotData read_binary(std::istream& in) {
    const auto n = get<std::uint64_t>(in);
    const double x_min = get<double>(in), x_max = get<double>(in);
    SnapshotData s;
    s.t = get<double>(in);
    if (n > (std::uint64_t{1} << 32)) throw SnapshotParseError("binary snapshot size is implausible");
    s.grid = snapshot_grid(x_min, x_max, static_cast<double>(n));
    Field* fields[] = {&s.a, &s.c, &s.b, &s.u, &s.w};
    for (Field* f : fields) {
        std::vector<double> v(n);
        for (auto& x : v) x = get<double>(in);
        *f = Field(s.grid, std::move(v));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw SnapshotParseError("trailing bytes in binary snapshot");
    require_finite_fields(s);
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DiagnosticsCsv::DiagnosticsCsv(const std::filesystem::path& path, std::string_view manifest_hash) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# manifest_hash=" << manifest_hash << '\n';
    bool first = true;
    for (auto col : diagnostics_columns()) {
        out_ << (first ? "" : ",") << col;
        first = false;
    }
    out_ << '\n' << std::flush;
}

void DiagnosticsCsv::write(const DiagnosticsRecord& r) {
    bool first = true;
    for (double v : csv_values(r)) {
        out_ << (first ? "" : ",") << format_double(v);
        first = false;
    }
    out_ << '\n' << std::flush;
}

SnapshotData make_snapshot(const State& s, const Field& b) {
    return {s.t, s.a.grid(), s.a, s.c, b, compute_u(s.a), compute_w(s.c)};
}

void write_snapshot_csv(const std::filesystem::path& path, const SnapshotData& s, std::string_view manifest_hash) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# t=" << format_double(s.t) << " x_min=" << format_double(s.grid.x_min)
        << " x_max=" << format_double(s.grid.x_max) << " n=" << s.grid.n << " manifest_hash=" << manifest_hash
        << "\nx,a,c,b,u,w\n";
    for (std::size_t i = 0; i < s.grid.n; ++i) {
        out << format_double(s.grid.x(i)) << ',' << format_double(s.a[i]) << ',' << format_double(s.c[i]) << ','
            << format_double(s.b[i]) << ',' << format_double(s.u[i]) << ',' << format_double(s.w[i]) << '\n';
    }
}

void write_snapshot_binary(const std::filesystem::path& path, const SnapshotData& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(kSnapshotMagic, 8);
    put<std::uint64_t>(out, s.grid.n);
    put(out, s.grid.x_min);
    put(out, s.grid.x_max);
    put(out, s.t);
    for (const Field* f : {&s.a, &s.c, &s.b, &s.u, &s.w}) {
        for (double v : f->values()) put(out, v);
    }
}

SnapshotData read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotParseError("cannot open " + path.string());
    char magic[8] = {};
    in.read(magic, 8);
    if (in.gcount() == 8 && std::memcmp(magic, kSnapshotMagic, 8) == 0) return read_binary(in);
    in.clear();
    in.seekg(0);
    return read_csv(in);
}

}  // namespace tricam::app
