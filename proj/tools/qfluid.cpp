// qfluid: command-line driver for the feedback-loop fluid simulations.
//
// Exit codes: 0 ok, 1 usage error, 2 run diverged, 3 comparison failed.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qfluid/core.hpp"
#include "qfluid/diagnostics.hpp"
#include "qfluid/integrator.hpp"
#include "qfluid/output.hpp"
#include "qfluid/presets.hpp"
#include "qfluid/reference_solver.hpp"
#include "qfluid/settings.hpp"

namespace fs = std::filesystem;
using namespace qfluid;

namespace {

enum Exit { ok = 0, usage = 1, diverged = 2, compare_failed = 3 };

struct Flags {
    std::optional<std::string> preset;
    std::optional<std::string> config;
    std::optional<std::size_t> steps;
    std::optional<double> dt, dx, D, omega, a, kp, M, noise_amplitude;
    std::optional<std::size_t> n;
    std::optional<std::string> estimator, noise, split;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> snapshot_every;
    std::optional<std::string> out;
    bool print_config = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--preset", f.preset, "Start from a named preset (see 'presets')");
    sub->add_option("--config", f.config, "key = value file applied after the preset");
    sub->add_option("--steps", f.steps, "Number of time steps");
    sub->add_option("--dt", f.dt, "Time step");
    sub->add_option("--dx", f.dx, "Grid spacing");
    sub->add_option("--n", f.n, "Number of grid points");
    sub->add_option("--D", f.D, "Generalized quantum constant");
    sub->add_option("--omega", f.omega, "Harmonic angular frequency");
    sub->add_option("--a", f.a, "Oscillation amplitude");
    sub->add_option("--kp", f.kp, "Pressure amplitude (squared sound speed)");
    sub->add_option("--M", f.M, "Total mass");
    sub->add_option("--estimator", f.estimator, "gauss | fd | oracle | none");
    sub->add_option("--noise", f.noise, "none | initial | per-step");
    sub->add_option("--noise-amplitude", f.noise_amplitude, "alpha ~ U[0, amplitude)");
    sub->add_option("--split", f.split, "kdk | forward");
    sub->add_option("--seed", f.seed, "RNG seed");
    sub->add_option("--snapshot-every", f.snapshot_every, "Snapshot cadence in steps (0 = off)");
    sub->add_option("--out", f.out, "Output directory (default: $QFLUID_OUT, else stdout)");
    sub->add_flag("--print-config", f.print_config, "Print the resolved settings and exit");
}

Settings resolve(const Flags& f, Settings base) {
    Settings s = f.preset ? Settings::from(find_preset(*f.preset).scenario) : base;
    if (f.config) apply_config_file(s, *f.config);
    if (f.steps) s.config.steps = *f.steps;
    if (f.dt) s.config.dt = *f.dt;
    if (f.dx) s.dx = *f.dx;
    if (f.n) s.n = *f.n;
    if (f.D) s.params.D = *f.D;
    if (f.omega) s.params.omega = *f.omega;
    if (f.a) s.params.a = *f.a;
    if (f.kp) s.params.kp = *f.kp;
    if (f.M) s.params.M = *f.M;
    if (f.estimator) s.config.estimator = parse_estimator(*f.estimator);
    if (f.noise) s.config.noise = parse_noise_mode(*f.noise);
    if (f.noise_amplitude) s.config.noise_amplitude = *f.noise_amplitude;
    if (f.split) s.config.split = parse_time_split(*f.split);
    if (f.seed) s.config.seed = *f.seed;
    if (f.snapshot_every) s.config.snapshot_every = *f.snapshot_every;
    s.params.validate();
    s.config.validate();
    return s;
}

std::optional<fs::path> output_dir(const Flags& f) {
    if (f.out) return fs::path(*f.out);
    if (const char* env = std::getenv("QFLUID_OUT"); env && *env) return fs::path(env);
    return std::nullopt;
}

void warn_if_outside(const Settings& s, const SpatialGrid& grid) {
    if (!packet_fits(s.params, grid)) {
        std::cerr << "warning: packet centre +- 5 sigma does not fit inside the grid\n";
    }
}

void print_summary(std::ostream& os, const RunRecord& r) {
    const auto& s = r.summary;
    os << "steps_survived=" << s.steps_survived << " status=" << to_string(s.final_status)
       << " max_center_error=" << format_number(s.max_center_error)
       << " max_var_error=" << format_number(s.max_var_error) << '\n';
}

int cmd_run(const Flags& f) {
    const Settings s = resolve(f, Settings::from(default_scenario()));
    if (f.print_config) {
        std::cout << to_config_text(s);
        return ok;
    }
    const SpatialGrid grid = s.grid();
    warn_if_outside(s, grid);
    const RunRecord rec = run(s.config, s.params, grid);
    if (const auto dir = output_dir(f)) {
        write_run(*dir, rec, grid);
    } else {
        write_diagnostics_csv(std::cout, rec);
    }
    print_summary(std::cerr, rec);
    return rec.diverged() ? diverged : ok;
}

FluidState state_from(const Snapshot& snap) {
    FluidState st;
    st.t = snap.t;
    st.V = snap.V;
    st.ln_rho.resize(snap.rho.size());
    std::transform(snap.rho.begin(), snap.rho.end(), st.ln_rho.begin(),
                   [](double r) { return std::log(r); });
    return st;
}

int cmd_compare(const Flags& f, double tol, const std::string& reference) {
    Settings base = Settings::from(default_scenario());
    base.config.estimator = Estimator::oracle_exact;
    base.config.steps = static_cast<std::size_t>(
        std::lround(base.params.period() / (4.0 * base.config.dt)));
    Settings s = resolve(f, base);
    s.config.snapshot_every = 1;
    if (f.print_config) {
        std::cout << to_config_text(s);
        return ok;
    }
    const SpatialGrid grid = s.grid();
    warn_if_outside(s, grid);
    const RunRecord fb = run(s.config, s.params, grid);

    RunRecord ref;
    if (reference == "self") {
        ref = fb;
    } else {
        const WaveState w0 = fluid_to_wave(state_from(fb.snapshots.front()), grid, s.params);
        ref = run_reference(w0, grid, s.params, s.config.dt, fb.summary.steps_survived, 1);
    }

    std::string csv = "step,t,l2\n";
    double worst = 0.0;
    for (const auto& sa : fb.snapshots) {
        const auto it = std::find_if(ref.snapshots.begin(), ref.snapshots.end(),
                                     [&](const Snapshot& sb) { return sb.step == sa.step; });
        if (it == ref.snapshots.end()) continue;
        const double d = l2_density_distance(sa.rho, it->rho, grid.dx());
        worst = std::max(worst, d);
        csv += std::to_string(sa.step) + ',' + format_number(sa.t) + ',' + format_number(d) + '\n';
    }
    if (const auto dir = output_dir(f)) {
        fs::create_directories(*dir);
        std::ofstream(*dir / "compare.csv") << csv;
    } else {
        std::cout << csv;
    }
    const bool pass = worst <= tol && !fb.diverged();
    std::cerr << (pass ? "PASS" : "FAIL") << " max_l2=" << format_number(worst)
              << " tol=" << format_number(tol) << " steps=" << fb.summary.steps_survived
              << " reference=" << reference << '\n';
    if (fb.diverged()) return diverged;
    return pass ? ok : compare_failed;
}

void set_param(Settings& s, const std::string& name, double v) {
    if (name == "seed") {
        s.config.seed = static_cast<std::uint64_t>(v);
    } else if (name == "steps") {
        s.config.steps = static_cast<std::size_t>(v);
    } else {
        apply_setting(s, name, format_number(v));
    }
}

int cmd_sweep(const Flags& f, const std::string& param, const std::vector<double>& values,
              unsigned jobs) {
    if (values.empty()) throw InvalidArgument("sweep needs at least one value");
    const Settings base = resolve(f, Settings::from(default_scenario()));
    std::vector<Settings> cases;
    for (double v : values) {
        Settings s = base;
        set_param(s, param, v);
        s.params.validate();
        s.config.validate();
        cases.push_back(s);
    }
    if (f.print_config) {
        std::cout << to_config_text(base);
        return ok;
    }

    std::vector<RunSummary> results(cases.size());
    std::vector<std::string> errors(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            try {
                results[i] = run(cases[i].config, cases[i].params, cases[i].grid()).summary;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cases.size()));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string csv = "param,value,steps_survived,status,max_center_error,max_var_error\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (!errors[i].empty()) throw InvalidArgument(errors[i]);
        const auto& r = results[i];
        csv += param + ',' + format_number(values[i]) + ',' + std::to_string(r.steps_survived) +
               ',' + std::string(to_string(r.final_status)) + ',' +
               format_number(r.max_center_error) + ',' + format_number(r.max_var_error) + '\n';
    }
    if (const auto dir = output_dir(f)) {
        fs::create_directories(*dir);
        std::ofstream(*dir / "sweep.csv") << csv;
    } else {
        std::cout << csv;
    }
    return ok;
}

int cmd_presets() {
    for (const auto& p : presets()) {
        std::printf("%-5s %3zu steps  %s\n", p.name.c_str(), p.scenario.config.steps,
                    p.summary.c_str());
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-like fluid via density feedback"};
    app.require_subcommand(1);

    Flags run_flags, cmp_flags, sweep_flags;
    auto* run_cmd = app.add_subcommand("run", "Run one feedback simulation");
    add_common(run_cmd, run_flags);

    auto* cmp_cmd = app.add_subcommand("compare", "Feedback loop against the wave-equation solver");
    add_common(cmp_cmd, cmp_flags);
    double tol = 0.05;
    std::string reference = "schrodinger";
    cmp_cmd->add_option("--tol", tol, "Pass threshold on the max relative L2 distance");
    cmp_cmd->add_option("--reference", reference, "schrodinger | self")
        ->check(CLI::IsMember({"schrodinger", "self"}));

    auto* sweep_cmd = app.add_subcommand("sweep", "Vary one parameter, one summary row per value");
    add_common(sweep_cmd, sweep_flags);
    std::string param;
    std::vector<double> values;
    unsigned jobs = 0;
    sweep_cmd->add_option("--param", param, "Parameter to vary")
        ->required()
        ->check(CLI::IsMember({"D", "omega", "a", "kp", "M", "dt", "noise_amplitude", "seed",
                               "steps", "fd_trust", "coupling_floor"}));
    sweep_cmd->add_option("--values", values, "Comma-separated values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--jobs", jobs, "Worker threads (0 = hardware)");

    app.add_subcommand("presets", "List the figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*run_cmd) return cmd_run(run_flags);
        if (*cmp_cmd) return cmd_compare(cmp_flags, tol, reference);
        if (*sweep_cmd) return cmd_sweep(sweep_flags, param, values, jobs);
        return cmd_presets();
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
}
