#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "tricam/errors.hpp"
#include "tricam/version.hpp"

namespace tricam::app {

namespace {

constexpr KeySpec kKeys[] = {
    {"domain-l", "20", "half length L of the periodic box [-L, L)", true},
    {"grid-n", "1024", "number of grid points", true},
    {"t-end", "5", "final time", true},
    {"dt", "auto", "time step; auto = min(dt-max, cfl*dx/||b0||_inf)", true},
    {"dt-max", "0.1", "upper bound of the automatic time step", true},
    {"cfl", "0.3", "CFL number against ||b||_inf", true},
    {"cfl-policy", "warn", "warn | error | ignore", true},
    {"profile", "smoothed-peakon", "gaussian-bump | smoothed-peakon | two-bump | random-bumps", true},
    {"moll-n", "1", "mollification index of smoothed-peakon", true},
    {"a-peakons", "1:-3,0.5:2", "amplitude:position list for a", true},
    {"c-peakons", "0.8:-1,1:4", "amplitude:position list for c", true},
    {"u-bumps", "1:-3:0.7,0.6:2:0.7", "amplitude:center:sigma list for u0", true},
    {"w-bumps", "0.8:-1:0.7,1:4:0.7", "amplitude:center:sigma list for w0", true},
    {"epsilon", "1", "exponent offset of the L^{1+eps} norm", true},
    {"backend", "fourier", "fourier | scan", true},
    {"stride", "1", "steps between diagnostics rows", true},
    {"snapshot", "csv", "none | csv | binary", true},
    {"snapshot-stride", "0", "diagnostics rows between snapshots; 0 = first and last", true},
    {"dealias", "false", "2/3-rule truncation of products", true},
    {"blowup-cap", "1e6", "abort when a sup norm exceeds this", true},
    {"seed", "0", "seed of the random-bumps profile", true},
    {"out", "", "output directory (default $TRICAM_OUT or ./tricam_out)", false},
    {"sweep-axis", "mollification-index", "mollification-index | grid-resolution | time-step", false},
    {"sweep-values", "8,16,32,64", "strictly increasing list, at least 3 entries", false},
    {"moll-grid-scale", "768", "grid-n >= scale * moll-n on the mollification axis", false},
    {"parallel", "false", "run sweep points concurrently", false},
};

std::string quote(std::string_view v) {
    std::string s = "\"";
    for (char ch : v) {
        if (ch == '"' || ch == '\\') s += '\\';
        s += ch;
    }
    return s + "\"";
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string k) {
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

bool known_key(std::string_view k) {
    return std::any_of(std::begin(kKeys), std::end(kKeys), [&](const KeySpec& s) { return s.name == k; });
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || v.empty()) throw ConfigError(key, v, "not a number");
    if (!std::isfinite(out)) throw ConfigError(key, v, "must be finite");
    return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
        throw ConfigError(key, v, "not a non-negative integer");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key, v, "not a boolean");
}

double positive(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    if (!(d > 0.0)) throw ConfigError(key, v, "must be > 0");
    return d;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
    return parts;
}

std::vector<std::vector<double>> parse_tuples(const std::string& key, const std::string& v, std::size_t arity) {
    std::vector<std::vector<double>> out;
    for (const auto& item : split(v, ',')) {
        const auto fields = split(item, ':');
        if (fields.size() != arity) {
            throw ConfigError(key, v, "each entry needs " + std::to_string(arity) + " ':'-separated numbers");
        }
        std::vector<double> t;
        for (const auto& f : fields) t.push_back(parse_double(key, f));
        out.push_back(std::move(t));
    }
    if (out.empty()) throw ConfigError(key, v, "empty list");
    return out;
}

std::vector<Peakon> parse_peakons(const std::string& key, const std::string& v, double half) {
    std::vector<Peakon> out;
    for (const auto& t : parse_tuples(key, v, 2)) {
        if (t[0] < 0.0) throw ConfigError(key, v, "negative amplitude");
        if (!(t[1] > -half && t[1] < half)) throw ConfigError(key, v, "position outside (-L, L)");
        out.push_back({t[0], t[1]});
    }
    return out;
}

std::vector<GaussianBump> parse_bumps(const std::string& key, const std::string& v) {
    std::vector<GaussianBump> out;
    for (const auto& t : parse_tuples(key, v, 3)) {
        if (t[0] < 0.0) throw ConfigError(key, v, "negative amplitude");
        if (!(t[2] > 0.0)) throw ConfigError(key, v, "sigma must be > 0");
        out.push_back({t[0], t[1], t[2]});
    }
    return out;
}

std::vector<GaussianBump> random_bumps(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> amp(0.3, 1.2), center(-6.0, 6.0), sigma(0.5, 1.2);
    std::vector<GaussianBump> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double a = amp(rng), c = center(rng), s = sigma(rng);
        out.push_back({a, c, s});
    }
    return out;
}

// 2/n must span at least 8 cells of the run grid.
void check_mollifier_resolved(const RunConfig& cfg) {
    if (cfg.params.kind != ProfileKind::SmoothedPeakon) return;
    const double dx = 2.0 * cfg.domain_l / static_cast<double>(cfg.grid_n);
    if (2.0 / cfg.params.moll_n < 8.0 * dx) {
        throw ConfigError("moll-n", std::to_string(cfg.params.moll_n),
                          "mollifier support spans fewer than 8 cells; raise grid-n");
    }
}

}  // namespace

ConfigError::ConfigError(std::string key, std::string value, std::string reason)
    : std::runtime_error("config error: key=" + key + " value=" + quote(value) + " reason=" + quote(reason)),
      key_(std::move(key)) {}

std::span<const KeySpec> config_keys() noexcept { return kKeys; }

KeyValues parse_config_text(std::string_view text) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno), body, "expected key = value");
        }
        const std::string key = normalize_key(trim(body.substr(0, eq)));
        const std::string value = trim(body.substr(eq + 1));
        if (!known_key(key)) throw ConfigError(key, value, "unknown key");
        if (!kv.emplace(key, value).second) throw ConfigError(key, value, "repeated key");
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

KeyValues merge_config(const KeyValues& file, const KeyValues& overrides) {
    KeyValues kv;
    for (const auto& k : kKeys) kv[std::string(k.name)] = std::string(k.default_value);
    for (const auto& [k, v] : file) kv[normalize_key(k)] = v;
    for (const auto& [k, v] : overrides) {
        const std::string key = normalize_key(k);
        if (!known_key(key)) throw ConfigError(key, v, "unknown key");
        kv[key] = v;
    }
    return kv;
}

std::string_view to_string(SweepAxis a) noexcept {
    switch (a) {
        case SweepAxis::MollificationIndex: return "mollification-index";
        case SweepAxis::GridResolution: return "grid-resolution";
        case SweepAxis::TimeStep: return "time-step";
    }
    return "?";
}

RunConfig make_run_config(const KeyValues& kv_in) {
    const KeyValues kv = merge_config({}, kv_in);
    auto get = [&](const char* k) -> const std::string& { return kv.at(k); };
    RunConfig cfg;

    cfg.domain_l = positive("domain-l", get("domain-l"));
    cfg.grid_n = parse_unsigned("grid-n", get("grid-n"));
    if (cfg.grid_n < kMinGridPoints) throw ConfigError("grid-n", get("grid-n"), "must be >= 16");
    cfg.t_end = positive("t-end", get("t-end"));
    if (get("dt") != "auto") cfg.dt = positive("dt", get("dt"));
    cfg.dt_max = positive("dt-max", get("dt-max"));
    cfg.cfl = positive("cfl", get("cfl"));

    const std::string& pol = get("cfl-policy");
    if (pol == "warn") cfg.cfl_policy = CflPolicy::Warn;
    else if (pol == "error") cfg.cfl_policy = CflPolicy::Error;
    else if (pol == "ignore") cfg.cfl_policy = CflPolicy::Ignore;
    else throw ConfigError("cfl-policy", pol, "expected warn | error | ignore");

    cfg.profile = get("profile");
    const std::uint64_t moll = parse_unsigned("moll-n", get("moll-n"));
    if (moll < 1 || moll > 1'000'000) throw ConfigError("moll-n", get("moll-n"), "must be in [1, 1e6]");
    cfg.params.moll_n = static_cast<int>(moll);
    cfg.params.a_peakons = parse_peakons("a-peakons", get("a-peakons"), cfg.domain_l);
    cfg.params.c_peakons = parse_peakons("c-peakons", get("c-peakons"), cfg.domain_l);
    cfg.params.u_bumps = parse_bumps("u-bumps", get("u-bumps"));
    cfg.params.w_bumps = parse_bumps("w-bumps", get("w-bumps"));
    cfg.seed = parse_unsigned("seed", get("seed"));
    if (cfg.profile == "random-bumps") {
        std::mt19937_64 rng(cfg.seed);
        cfg.params.kind = ProfileKind::TwoBump;
        cfg.params.u_bumps = random_bumps(rng, 2);
        cfg.params.w_bumps = random_bumps(rng, 2);
    } else {
        try {
            cfg.params.kind = parse_profile_kind(cfg.profile);
        } catch (const Error&) {
            throw ConfigError("profile", cfg.profile,
                              "expected gaussian-bump | smoothed-peakon | two-bump | random-bumps");
        }
    }
    if (cfg.params.kind == ProfileKind::TwoBump &&
        (cfg.params.u_bumps.size() < 2 || cfg.params.w_bumps.size() < 2)) {
        throw ConfigError("u-bumps", get("u-bumps"), "two-bump needs two entries for u and w");
    }

    cfg.epsilon = positive("epsilon", get("epsilon"));
    const std::string& be = get("backend");
    if (be == "fourier") cfg.backend = KernelBackend::FourierSymbol;
    else if (be == "scan") cfg.backend = KernelBackend::RecursiveScan;
    else throw ConfigError("backend", be, "expected fourier | scan");

    cfg.stride = parse_unsigned("stride", get("stride"));
    if (cfg.stride < 1) throw ConfigError("stride", get("stride"), "must be >= 1");
    const std::string& snap = get("snapshot");
    if (snap == "none") cfg.snapshot = SnapshotFormat::None;
    else if (snap == "csv") cfg.snapshot = SnapshotFormat::Csv;
    else if (snap == "binary") cfg.snapshot = SnapshotFormat::Binary;
    else throw ConfigError("snapshot", snap, "expected none | csv | binary");
    cfg.snapshot_stride = parse_unsigned("snapshot-stride", get("snapshot-stride"));
    cfg.dealias = parse_bool("dealias", get("dealias"));
    cfg.blowup_cap = positive("blowup-cap", get("blowup-cap"));
    cfg.out = get("out");

    check_mollifier_resolved(cfg);
    for (const auto& k : kKeys) {
        if (k.hashed) cfg.resolved[std::string(k.name)] = kv.at(std::string(k.name));
    }
    if (cfg.profile == "random-bumps") {
        // Record what the seed expanded to.
        std::ostringstream u, w;
        for (std::size_t i = 0; i < 2; ++i) {
            const auto& a = cfg.params.u_bumps[i];
            const auto& b = cfg.params.w_bumps[i];
            u << (i ? "," : "") << format_number(a.amplitude) << ':' << format_number(a.center) << ':'
              << format_number(a.sigma);
            w << (i ? "," : "") << format_number(b.amplitude) << ':' << format_number(b.center) << ':'
              << format_number(b.sigma);
        }
        cfg.resolved["u-bumps"] = u.str();
        cfg.resolved["w-bumps"] = w.str();
    }
    return cfg;
}

StudyConfig make_study_config(const KeyValues& kv_in) {
    const KeyValues kv = merge_config({}, kv_in);
    StudyConfig st;
    st.base = make_run_config(kv);

    const std::string& axis = kv.at("sweep-axis");
    if (axis == "mollification-index") st.axis = SweepAxis::MollificationIndex;
    else if (axis == "grid-resolution") st.axis = SweepAxis::GridResolution;
    else if (axis == "time-step") st.axis = SweepAxis::TimeStep;
    else throw ConfigError("sweep-axis", axis, "expected mollification-index | grid-resolution | time-step");

    const std::string& raw = kv.at("sweep-values");
    for (const auto& item : split(raw, ',')) st.values.push_back(positive("sweep-values", item));
    if (st.values.size() < 3) throw ConfigError("sweep-values", raw, "need at least 3 values");
    for (std::size_t i = 1; i < st.values.size(); ++i) {
        if (!(st.values[i] > st.values[i - 1])) throw ConfigError("sweep-values", raw, "must be strictly increasing");
    }
    if (st.axis != SweepAxis::TimeStep) {
        for (double v : st.values) {
            if (v != std::floor(v)) throw ConfigError("sweep-values", raw, "must be integers on this axis");
        }
    }
    if (st.axis == SweepAxis::GridResolution && st.values.front() < static_cast<double>(kMinGridPoints)) {
        throw ConfigError("sweep-values", raw, "grid sizes must be >= 16");
    }
    st.moll_grid_scale = parse_unsigned("moll-grid-scale", kv.at("moll-grid-scale"));
    st.parallel = parse_bool("parallel", kv.at("parallel"));
    if (st.axis == SweepAxis::MollificationIndex) {
        if (st.base.params.kind != ProfileKind::SmoothedPeakon) {
            throw ConfigError("profile", st.base.profile, "the mollification axis needs smoothed-peakon");
        }
    }
    // Validate every sweep point before any run starts.
    for (double v : st.values) (void)sweep_point(st, v);
    return st;
}

RunConfig sweep_point(const StudyConfig& study, double value) {
    KeyValues kv = study.base.resolved;
    kv["out"] = study.base.out;
    switch (study.axis) {
        case SweepAxis::MollificationIndex: {
            const auto n = static_cast<std::size_t>(value);
            kv["moll-n"] = std::to_string(n);
            kv["grid-n"] = std::to_string(std::max(study.base.grid_n, study.moll_grid_scale * n));
            break;
        }
        case SweepAxis::GridResolution:
            kv["grid-n"] = std::to_string(static_cast<std::size_t>(value));
            break;
        case SweepAxis::TimeStep:
            kv["dt"] = format_number(value);
            break;
    }
    return make_run_config(kv);
}

Grid1D run_grid(const RunConfig& cfg) { return make_symmetric_grid(cfg.domain_l, cfg.grid_n); }

State run_initial_state(const RunConfig& cfg) {
    return initial_state(admissible_profiles(cfg.params, run_grid(cfg)));
}

SolverOptions run_solver_options(const RunConfig& cfg) {
    SolverOptions o;
    o.backend = cfg.backend;
    o.dealias = cfg.dealias;
    o.cfl = cfg.cfl;
    o.cfl_policy = cfg.cfl_policy;
    o.blowup_cap = cfg.blowup_cap;
    return o;
}

std::string canonical_text(const RunConfig& cfg) {
    std::string text = "version=" + std::string(kVersion) + "\n";
    for (const auto& [k, v] : cfg.resolved) text += k + "=" + v + "\n";
    return text;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string manifest_hash(const RunConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_text(cfg))));
    return buf;
}

}  // namespace tricam::app
