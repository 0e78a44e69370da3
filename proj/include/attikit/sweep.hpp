#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "attikit/algorithms.hpp"

namespace attikit {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Truncation-order rule: either fixed, or an offset above the sample count.
struct MtRule {
    bool relative = true;
    int value = 9;

    int resolve(int samples) const { return relative ? samples + value : value; }

    std::string str() const
    {
        return relative ? "N+" + std::to_string(value) : std::to_string(value);
    }

    static MtRule parse(const std::string& text)
    {
        try {
            if (text.rfind("N+", 0) == 0) return {true, std::stoi(text.substr(2))};
            return {false, std::stoi(text)};
        } catch (const std::exception&) {
            throw ConfigError("m_T: expected 'N+<k>' or '<k>', got '" + text + "'");
        }
    }
};

inline StopRule parse_stop_rule(const std::string& text)
{
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (kind == "dpc") return StopRule::dpc(std::stod(arg));
        if (kind == "hot") return StopRule::hot(std::stod(arg));
        if (kind == "maxiter") return StopRule::max_iter(std::stoi(arg));
    } catch (const std::exception&) {
        throw ConfigError("stop: bad argument in '" + text + "'");
    }
    throw ConfigError("stop: expected dpc:<tol>, hot:<tol> or maxiter:<k>, got '" + text + "'");
}

inline std::string stop_rule_str(const StopRule& rule)
{
    char buf[64];
    if (rule.kind == StopRule::Kind::MaxIter) {
        std::snprintf(buf, sizeof buf, "maxiter:%d", rule.max_iterations);
    } else {
        std::snprintf(buf, sizeof buf, "%s:%g", to_string(rule.kind), rule.tolerance);
    }
    return buf;
}

struct SweepConfig {
    std::vector<AlgoId> algorithms;
    std::vector<double> fc_hz;
    std::vector<int> sample_counts = {8};
    double alpha_rad = 1.0 * 3.14159265358979323846 / 180.0;
    double fs_hz = 1000.0;
    double duration_s = 1.0;
    std::optional<MtRule> truncation;    // family default when absent
    std::optional<StopRule> stop;        // family default when absent
    std::optional<int> fit_degree;       // N-1 when absent
    NoiseParams noise;
    std::string out_path;

    void validate() const
    {
        if (algorithms.empty()) throw ConfigError("algorithms: must not be empty");
        if (fc_hz.empty()) throw ConfigError("fc_hz: must not be empty");
        for (double fc : fc_hz) {
            if (!(fc > 0.0)) throw ConfigError("fc_hz: values must be positive");
        }
        if (sample_counts.empty()) throw ConfigError("N: must not be empty");
        for (int n : sample_counts) {
            if (n < 1) throw ConfigError("N: values must be >= 1");
        }
        if (!(fs_hz > 0.0)) throw ConfigError("fs_hz: must be positive");
        if (!(alpha_rad >= 0.0)) throw ConfigError("alpha_deg: must be >= 0");
        if (!(duration_s > 0.0)) throw ConfigError("duration_s: must be positive");
        if (noise.arw < 0.0) throw ConfigError("arw_deg_per_sqrt_h: must be >= 0");
        if (stop) {
            for (AlgoId id : algorithms) {
                const AlgoFamily fam = family_of(id);
                if (fam == AlgoFamily::Classic) continue;
                const bool taylor = fam == AlgoFamily::Taylor;
                if (taylor && stop->kind == StopRule::Kind::Dpc) {
                    throw ConfigError(std::string("stop: dpc does not apply to ") + to_string(id));
                }
                if (!taylor && stop->kind == StopRule::Kind::Hot) {
                    throw ConfigError(std::string("stop: hot does not apply to ") + to_string(id));
                }
            }
        }
    }
};

// Flat key=value text; '#' starts a comment, repeated keys extend list fields.
inline SweepConfig parse_config(const std::string& text)
{
    SweepConfig cfg;
    cfg.sample_counts.clear();
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "algorithm") {
                const auto id = parse_algo(value);
                if (!id) throw ConfigError("algorithm: unknown id '" + value + "'");
                cfg.algorithms.push_back(*id);
            } else if (key == "fc_hz") {
                cfg.fc_hz.push_back(std::stod(value));
            } else if (key == "N") {
                cfg.sample_counts.push_back(std::stoi(value));
            } else if (key == "alpha_deg") {
                cfg.alpha_rad = std::stod(value) * 3.14159265358979323846 / 180.0;
            } else if (key == "fs_hz") {
                cfg.fs_hz = std::stod(value);
            } else if (key == "duration_s") {
                cfg.duration_s = std::stod(value);
            } else if (key == "m_T") {
                cfg.truncation = MtRule::parse(value);
            } else if (key == "stop") {
                cfg.stop = parse_stop_rule(value);
            } else if (key == "fit_degree") {
                cfg.fit_degree = std::stoi(value);
            } else if (key == "arw_deg_per_sqrt_h") {
                cfg.noise.arw = std::stod(value) * (3.14159265358979323846 / 180.0) / 60.0;
            } else if (key == "seed") {
                cfg.noise.seed = std::stoull(value);
            } else if (key == "out") {
                cfg.out_path = value;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(key + ": bad value '" + value + "'");
        }
    }
    if (cfg.sample_counts.empty()) cfg.sample_counts.push_back(8);
    return cfg;
}

inline SweepConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

struct SweepRow {
    std::string algorithm;
    double fc_hz = 0.0;
    double fs_hz = 0.0;
    int samples = 0;
    int fit_degree = 0;
    int truncation = 0;
    std::string stop;
    double iters_mean = 0.0;
    double drift_rad = 0.0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;

    bool operator==(const SweepRow& o) const
    {
        return algorithm == o.algorithm && fc_hz == o.fc_hz && fs_hz == o.fs_hz &&
               samples == o.samples && fit_degree == o.fit_degree && truncation == o.truncation &&
               stop == o.stop && iters_mean == o.iters_mean && drift_rad == o.drift_rad &&
               seed == o.seed && wall_ms == o.wall_ms;
    }
};

inline constexpr const char* kCsvHeader =
    "algorithm,fc_hz,fs_hz,N,n,m_T,stop,iters_mean,drift_rad,seed,wall_ms";

namespace detail {

inline std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string format_csv(const std::vector<SweepRow>& rows)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += r.algorithm;
        out += ',' + detail::format_double(r.fc_hz);
        out += ',' + detail::format_double(r.fs_hz);
        out += ',' + std::to_string(r.samples);
        out += ',' + std::to_string(r.fit_degree);
        out += ',' + std::to_string(r.truncation);
        out += ',' + r.stop;
        out += ',' + detail::format_double(r.iters_mean);
        out += ',' + detail::format_double(r.drift_rad);
        out += ',' + std::to_string(r.seed);
        out += ',' + detail::format_double(r.wall_ms);
        out += '\n';
    }
    return out;
}

inline void emit_csv(const std::vector<SweepRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    out << format_csv(rows);
    if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

inline std::vector<SweepRow> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("parse_csv: missing or unexpected header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cells.size() != 11) throw std::runtime_error("parse_csv: bad row '" + line + "'");
        SweepRow r;
        r.algorithm = cells[0];
        r.fc_hz = std::stod(cells[1]);
        r.fs_hz = std::stod(cells[2]);
        r.samples = std::stoi(cells[3]);
        r.fit_degree = std::stoi(cells[4]);
        r.truncation = std::stoi(cells[5]);
        r.stop = cells[6];
        r.iters_mean = std::stod(cells[7]);
        r.drift_rad = std::stod(cells[8]);
        r.seed = std::stoull(cells[9]);
        r.wall_ms = std::stod(cells[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace detail {

struct SweepCell {
    AlgoId id;
    double fc = 0.0;
    int samples = 0;
};

inline AlgoConfig cell_algo_config(const SweepConfig& cfg, const SweepCell& cell)
{
    AlgoConfig algo = default_config(cell.id, cell.samples);
    if (cfg.truncation) algo.truncation_degree = cfg.truncation->resolve(cell.samples);
    if (cfg.stop && family_of(cell.id) != AlgoFamily::Classic) algo.stop = *cfg.stop;
    if (cfg.fit_degree) algo.fit_degree = *cfg.fit_degree;
    return algo;
}

}  // namespace detail

/// Runs every (algorithm, N, fc) cell of the sweep; rows come back in the
/// nesting order algorithm, then N, then fc, whatever the worker count.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, int jobs = 1)
{
    cfg.validate();
    std::vector<detail::SweepCell> cells;
    for (AlgoId id : cfg.algorithms) {
        const int forced = forced_sample_count(id);
        const std::vector<int> counts = forced ? std::vector<int>{forced} : cfg.sample_counts;
        for (int n : counts) {
            for (double fc : cfg.fc_hz) cells.push_back({id, fc, n});
        }
    }

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const auto& cell = cells[i];
            SweepRow row;
            row.algorithm = to_string(cell.id);
            row.fc_hz = cell.fc;
            row.fs_hz = cfg.fs_hz;
            row.samples = cell.samples;
            const AlgoConfig algo = detail::cell_algo_config(cfg, cell);
            row.fit_degree = algo.fit_degree >= 0 ? algo.fit_degree : cell.samples - 1;
            row.truncation = family_of(cell.id) == AlgoFamily::Classic ? 0 : algo.truncation_degree;
            row.stop = family_of(cell.id) == AlgoFamily::Classic ? "none" : stop_rule_str(algo.stop);
            row.seed = cfg.noise.seed;
            ConingParamsd params;
            params.alpha = cfg.alpha_rad;
            params.fc = cell.fc;
            params.fs = cfg.fs_hz;
            params.samples_per_update = cell.samples;
            params.duration = cfg.duration_s;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const DriftResult res = accumulate_drift(params, algo, cfg.noise);
                row.drift_rad = res.drift_rad;
                row.iters_mean = res.mean_iterations;
            } catch (const SolverFailure&) {
                row.drift_rad = std::numeric_limits<double>::quiet_NaN();
                row.iters_mean = 0.0;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            const auto t1 = std::chrono::steady_clock::now();
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            rows[i] = std::move(row);
        }
    };

    const int thread_count =
        std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

// --- scenario presets --------------------------------------------------------

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {"fig3", "fig5", "fig6", "fig7",
                                                   "fig9", "fig10", "fig12"};
    return names;
}

/// Bundled sweep configurations for the benchmark scenarios; a preset may
/// expand to several sweeps whose rows are concatenated in order.
inline std::vector<SweepConfig> preset_configs(const std::string& name)
{
    SweepConfig base;
    base.fc_hz = {10.0};
    base.sample_counts = {8};

    std::vector<SweepConfig> out;
    if (name == "fig3") {
        // iterated quaternion solver over the first seven sweeps, two sample counts
        for (int k = 1; k <= 7; ++k) {
            SweepConfig c = base;
            c.algorithms = {AlgoId::QuatFIter};
            c.sample_counts = {3, 8};
            c.truncation = MtRule{true, 9};
            c.stop = StopRule::max_iter(k);
            out.push_back(c);
        }
    } else if (name == "fig5") {
        for (int k : {5, 2}) {
            SweepConfig c = base;
            c.algorithms = {AlgoId::QuatFIterNp, AlgoId::QuatFIter};
            c.fc_hz = {10.0, 50.0};
            c.truncation = MtRule{true, k};
            out.push_back(c);
        }
    } else if (name == "fig6") {
        // iteration progression of the monomial fixed point vs the series
        for (int k = 1; k <= 15; ++k) {
            SweepConfig c = base;
            c.algorithms = {AlgoId::QuatFIterNp, AlgoId::QuatTaylor};
            c.truncation = MtRule{true, 9};
            c.stop = StopRule::max_iter(k);
            out.push_back(c);
        }
    } else if (name == "fig7") {
        SweepConfig c = base;
        c.algorithms = {AlgoId::RotTaylorT2s, AlgoId::RotTaylor, AlgoId::Classic2,
                        AlgoId::Classic3};
        c.sample_counts = {2, 3, 5, 8};
        c.truncation = MtRule{true, 9};
        out.push_back(c);
    } else if (name == "fig9" || name == "fig12") {
        SweepConfig c = base;
        c.fc_hz = {1, 2, 5, 10, 20, 30, 50, 70, 100, 140, 200};
        if (name == "fig12") {
            c.duration_s = 10.0;
            c.noise.arw = 0.001 * (3.14159265358979323846 / 180.0) / 60.0;
        }
        c.algorithms = {AlgoId::QuatFIterNp, AlgoId::RodFIterNp, AlgoId::RotTaylor,
                        AlgoId::Classic2, AlgoId::Classic3};
        c.truncation = MtRule{true, 9};
        out.push_back(c);
        c.algorithms = {AlgoId::QuatFIter};
        c.truncation = MtRule{true, 1};
        out.push_back(c);
    } else if (name == "fig10") {
        for (int k : {29, 49}) {
            SweepConfig c = base;
            c.algorithms = {AlgoId::QuatFIterNp, AlgoId::RodFIterNp, AlgoId::RotTaylor};
            c.fc_hz = {100.0};
            c.duration_s = 0.016;  // two update intervals
            c.truncation = MtRule{true, k};
            out.push_back(c);
        }
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return out;
}

inline std::vector<SweepRow> run_preset(const std::string& name, std::uint64_t seed, int jobs = 1)
{
    std::vector<SweepRow> rows;
    for (SweepConfig cfg : preset_configs(name)) {
        cfg.noise.seed = seed;
        auto part = run_sweep(cfg, jobs);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

}  // namespace attikit
