// Command-line front end: fit inspection, single-interval stepping, and the
// drift-sweep harness with CSV output.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>

#include "attikit/sweep.hpp"

namespace {

using namespace attikit;

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

struct MotionArgs {
    double fc_hz = 10.0;
    double alpha_deg = 1.0;
    double fs_hz = 1000.0;
    int samples = 8;
    double arw_deg_sqrt_h = 0.0;
    std::uint64_t seed = 0;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--fc", fc_hz, "coning frequency, Hz")->capture_default_str();
        cmd->add_option("--alpha-deg", alpha_deg, "cone half-angle, deg")->capture_default_str();
        cmd->add_option("--fs", fs_hz, "gyro sampling frequency, Hz")->capture_default_str();
        cmd->add_option("--samples,-N", samples, "samples per update interval")
            ->capture_default_str();
        cmd->add_option("--arw", arw_deg_sqrt_h, "angle random walk, deg/sqrt(h)")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "noise stream seed")->capture_default_str();
    }

    ConingParamsd params(double duration) const
    {
        ConingParamsd p;
        p.alpha = alpha_deg * kDegToRad;
        p.fc = fc_hz;
        p.fs = fs_hz;
        p.samples_per_update = samples;
        p.duration = duration;
        return p;
    }

    NoiseParams noise() const { return {arw_deg_sqrt_h * kDegToRad / 60.0, seed}; }
};

void print_quat(const char* label, const Quatd& q)
{
    std::printf("%s [%.17g, %.17g, %.17g, %.17g]\n", label, q[0], q[1], q[2], q[3]);
}

int run_fit(const MotionArgs& motion, const std::string& kind, const std::string& basis,
            int degree, double start)
{
    const GyroKind gk = kind == "rate" ? GyroKind::Rate : GyroKind::Increment;
    const auto p = motion.params(1.0);
    const auto batch = synth_batch(p, start, gk, motion.noise());
    const int n = degree >= 0 ? degree : batch.count() - 1;
    std::printf("# %s fit, N=%d, degree=%d, interval [%.17g, %.17g] s\n", basis.c_str(),
                batch.count(), n, start, start + batch.span());
    if (basis == "normal") {
        const auto poly = gk == GyroKind::Rate ? fit_normal_rates(batch, n)
                                               : fit_normal_increments(batch, n);
        for (int i = 0; i <= poly.degree(); ++i) {
            std::printf("t^%-2d  %.17g  %.17g  %.17g\n", i, poly[i][0], poly[i][1], poly[i][2]);
        }
    } else {
        const auto poly = gk == GyroKind::Rate ? fit_cheb_rates(batch, n)
                                               : fit_cheb_increments(batch, n);
        for (int i = 0; i <= poly.degree(); ++i) {
            std::printf("F_%-2d  %.17g  %.17g  %.17g\n", i, poly[i][0], poly[i][1], poly[i][2]);
        }
    }
    return 0;
}

int run_step(const MotionArgs& motion, const std::string& algo_name, const std::string& mt_text,
             const std::string& stop_text, int interval)
{
    const auto id = parse_algo(algo_name);
    if (!id) {
        std::cerr << "unknown algorithm '" << algo_name << "'\n";
        return 2;
    }
    const int n_samples = forced_sample_count(*id) ? forced_sample_count(*id) : motion.samples;
    auto p = motion.params(1.0);
    p.samples_per_update = n_samples;

    AlgoConfig cfg = default_config(*id, n_samples);
    if (!mt_text.empty()) cfg.truncation_degree = MtRule::parse(mt_text).resolve(n_samples);
    if (!stop_text.empty()) cfg.stop = parse_stop_rule(stop_text);

    const double start = interval * p.update_dt();
    const auto batch = synth_batch(p, start, GyroKind::Increment, motion.noise());
    const Quatd q_prev = coning_true_quat(p, start);
    const auto result = run_interval(batch, cfg, q_prev);
    const Quatd truth = coning_true_quat(p, start + p.update_dt());

    print_quat("estimate:", quat_normalized(result.attitude));
    print_quat("truth:   ", truth);
    std::printf("error_rad: %.17g\n", attitude_error(truth, quat_normalized(result.attitude)));
    std::printf("iterations: %d%s\n", result.iterations, result.converged ? "" : " (not converged)");
    return result.converged ? 0 : 1;
}

int write_rows(const std::vector<SweepRow>& rows, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::fputs(format_csv(rows).c_str(), stdout);
    } else {
        emit_csv(rows, out_path);
        std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"strapdown attitude integrator benchmark"};
    app.require_subcommand(1);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "dump fitted rate-polynomial coefficients");
    MotionArgs fit_motion;
    fit_motion.add_to(fit_cmd);
    std::string fit_kind = "increment";
    std::string fit_basis = "normal";
    int fit_degree = -1;
    double fit_start = 0.0;
    fit_cmd->add_option("--kind", fit_kind, "rate|increment")
        ->check(CLI::IsMember({"rate", "increment"}))
        ->capture_default_str();
    fit_cmd->add_option("--basis", fit_basis, "normal|cheb")
        ->check(CLI::IsMember({"normal", "cheb"}))
        ->capture_default_str();
    fit_cmd->add_option("--degree", fit_degree, "fit degree (default N-1)");
    fit_cmd->add_option("--start", fit_start, "interval start time, s")->capture_default_str();

    // step
    auto* step_cmd = app.add_subcommand("step", "integrate one update interval");
    MotionArgs step_motion;
    step_motion.add_to(step_cmd);
    std::string step_algo = "QuatFIter";
    std::string step_mt;
    std::string step_stop;
    int step_interval = 0;
    step_cmd->add_option("--algo", step_algo, "algorithm id")->capture_default_str();
    step_cmd->add_option("--m-T", step_mt, "truncation order, 'N+<k>' or '<k>'");
    step_cmd->add_option("--stop", step_stop, "dpc:<tol> | hot:<tol> | maxiter:<k>");
    step_cmd->add_option("--interval", step_interval, "update-interval index")
        ->capture_default_str();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a configured drift sweep");
    std::string sweep_config_path;
    std::string sweep_out;
    std::uint64_t sweep_seed = 0;
    bool sweep_seed_set = false;
    int jobs = 1;
    sweep_cmd->add_option("--config", sweep_config_path, "key=value config file")->required();
    sweep_cmd->add_option("--out", sweep_out, "output CSV path ('-' for stdout)");
    sweep_cmd->add_option("--seed", sweep_seed, "override the config seed")
        ->each([&](const std::string&) { sweep_seed_set = true; });
    sweep_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();

    // preset
    auto* preset_cmd = app.add_subcommand("preset", "run a bundled benchmark scenario");
    std::string preset_name;
    std::string preset_out;
    std::uint64_t preset_seed = 0;
    bool list_presets = false;
    preset_cmd->add_option("name", preset_name, "preset name");
    preset_cmd->add_flag("--list", list_presets, "list preset names");
    preset_cmd->add_option("--out", preset_out, "output CSV path ('-' for stdout)");
    preset_cmd->add_option("--seed", preset_seed, "noise stream seed")->capture_default_str();
    preset_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit_cmd) return run_fit(fit_motion, fit_kind, fit_basis, fit_degree, fit_start);
        if (*step_cmd) {
            return run_step(step_motion, step_algo, step_mt, step_stop, step_interval);
        }
        if (*sweep_cmd) {
            SweepConfig cfg = load_config(sweep_config_path);
            if (sweep_seed_set) cfg.noise.seed = sweep_seed;
            if (!sweep_out.empty()) cfg.out_path = sweep_out;
            return write_rows(run_sweep(cfg, jobs), cfg.out_path);
        }
        if (*preset_cmd) {
            if (list_presets) {
                for (const auto& name : preset_names()) std::printf("%s\n", name.c_str());
                return 0;
            }
            if (preset_name.empty()) {
                std::cerr << "preset: name required (or --list)\n";
                return 2;
            }
            return write_rows(run_preset(preset_name, preset_seed, jobs), preset_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
