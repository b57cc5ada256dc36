// gangfreq: frequency and core-count selection for malleable gang-scheduled
// sporadic task systems. Subcommands: validate, minfreq, optimize, schedule,
// gen, experiment.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gangfreq/analysis.hpp"
#include "gangfreq/errors.hpp"
#include "gangfreq/experiment.hpp"
#include "gangfreq/format.hpp"
#include "gangfreq/generator.hpp"
#include "gangfreq/optimizer.hpp"
#include "gangfreq/power.hpp"
#include "gangfreq/schedule.hpp"
#include "gangfreq/task_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;  // validation failure or infeasibility
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using namespace gangfreq;

int run_validate(const std::string& tasks_path) {
    const TaskSystem system = load_tasks_file(tasks_path);
    std::cout << "tasks: " << system.size() << "\n";
    std::cout << "speedup_capacity: " << system.capacity() << "\n";
    std::cout << "total_utilization: " << format_real(system.total_utilization()) << "\n";
    for (int i = 0; i < system.size(); ++i) {
        const Task& t = system.task(i);
        std::cout << "task " << i + 1 << ": u=" << format_real(t.utilization())
                  << " min_frequency_on_" << system.capacity() << "_cores="
                  << format_real(t.utilization() / t.speedup.gamma(system.capacity()))
                  << "\n";
    }
    std::cout << "valid\n";
    return kExitOk;
}

int run_minfreq(const std::string& tasks_path, int cores) {
    const TaskSystem system = load_tasks_file(tasks_path);
    std::cout << format_real(minimum_feasible_frequency(system, cores)) << "\n";
    return kExitOk;
}

int run_optimize(const std::string& tasks_path, const std::string& power_path,
                 int cores_max, const std::string& mode) {
    const TaskSystem system = load_tasks_file(tasks_path);
    const PowerModel power = PowerModel::parse_file(power_path);
    for (const PowerDiagnostic& d : power.diagnostics())
        std::cerr << "power matrix note: " << d.message << "\n";
    const int m_max = cores_max > 0 ? cores_max
                                    : std::min(system.capacity(), power.core_counts());

    if (mode == "enumerate") {
        const FrequencyPlan plan = optimize_discrete(system, power, m_max);
        std::cout << "chosen: cores=" << plan.active_cores
                  << " f_phys=" << format_real(plan.f_quantized)
                  << " watts=" << format_real(plan.power_watts) << "\n";
        return kExitOk;
    }

    const OptimizeResult result = optimize(system, power, m_max);
    std::cout << "cores,f_min_norm,f_phys,watts\n";
    for (const PlanRow& row : result.table) {
        std::cout << row.cores << ',' << format_real(row.f_min) << ',';
        if (row.f_quantized)
            std::cout << format_real(*row.f_quantized) << ',' << format_real(*row.watts);
        else
            std::cout << "-,-";
        std::cout << "\n";
    }
    std::cout << "chosen: cores=" << result.plan.active_cores
              << " f_min=" << format_real(result.plan.f_min_continuous)
              << " f_phys=" << format_real(result.plan.f_quantized)
              << " watts=" << format_real(result.plan.power_watts) << "\n";
    return kExitOk;
}

int run_schedule(const std::string& tasks_path, int cores, double freq, double quantum,
                 double horizon, bool force, const std::string& out_path) {
    const TaskSystem system = load_tasks_file(tasks_path);
    const CanonicalAssignment assignment =
        build_canonical(system, cores, freq, quantum, force);
    const ScheduleTrace trace = simulate(assignment, system, horizon);

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + out_path + "' for writing");
        write_trace(out, trace);
        if (!out) throw IoError("failed writing '" + out_path + "'");
    }
    write_verdict_summary(std::cout, trace);
    return trace.verdict.ok() ? kExitOk : kExitInvalid;
}

int run_gen(int n, double util, double umax, double ucap, std::uint64_t seed,
            std::int64_t pmin, std::int64_t pmax, const std::string& speedup, int capacity,
            const std::string& out_path) {
    GenSpec spec;
    spec.n = n;
    spec.u_target = util;
    spec.u_max = umax;
    spec.u_cap = ucap > 0 ? ucap : std::numeric_limits<double>::infinity();
    spec.seed = seed;
    spec.period_min = pmin;
    spec.period_max = pmax;
    spec.speedup = SpeedupSource::parse(speedup);
    spec.capacity = capacity;
    const TaskSystem system = uunifast_discard_max(spec);
    if (out_path.empty() || out_path == "-")
        save_tasks(system, std::cout);
    else
        save_tasks_file(system, out_path);
    return kExitOk;
}

int run_experiment(const std::string& config_path, const std::string& out_dir) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config file '" + config_path + "'");
    const std::string config_dir =
        std::filesystem::path(config_path).parent_path().string();
    const SweepConfig config = parse_sweep_config(in, config_dir);
    const PowerModel power = PowerModel::parse_file(config.power_matrix);
    const SweepResult result = run_sweep(config, power);
    emit_sweep(result, config, out_dir);
    std::cout << "grid points: " << result.cells.size() << "\n";
    std::cout << "wrote " << out_dir << "/savings.csv and " << out_dir
              << "/manifest.json\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency/core-count selection for malleable gang scheduling"};
    app.require_subcommand(1);

    std::string tasks_path, power_path, out_path, config_path, out_dir;
    std::string mode = "exact", speedup = "amdahl:0.7";
    int cores = 0, cores_max = 0, n = 8, capacity = 8;
    double freq = 1.0, quantum = 0.0, horizon = 0.0;
    double util = 0.0, umax = 0.0, ucap = 0.0;
    std::uint64_t seed = 1;
    std::int64_t pmin = 4, pmax = 32;
    bool force = false;

    auto* validate = app.add_subcommand("validate", "check a task file against the model");
    validate->add_option("--tasks", tasks_path, "task file")->required();

    auto* minfreq = app.add_subcommand("minfreq", "minimum feasible frequency on m cores");
    minfreq->add_option("--tasks", tasks_path, "task file")->required();
    minfreq->add_option("--cores", cores, "core count")->required();

    auto* optimize = app.add_subcommand("optimize", "minimum-power (cores, frequency) plan");
    optimize->add_option("--tasks", tasks_path, "task file")->required();
    optimize->add_option("--power", power_path, "power matrix file")->required();
    optimize->add_option("--cores-max", cores_max, "largest core count to consider");
    optimize->add_option("--mode", mode, "exact|enumerate")
        ->check(CLI::IsMember({"exact", "enumerate"}));

    auto* schedule = app.add_subcommand("schedule", "build and verify the canonical schedule");
    schedule->add_option("--tasks", tasks_path, "task file")->required();
    schedule->add_option("--cores", cores, "core count")->required();
    schedule->add_option("--freq", freq, "normalized frequency")->required();
    schedule->add_option("--quantum", quantum, "slot length (default gcd(periods)/16)");
    schedule->add_option("--horizon", horizon, "simulation horizon (default hyperperiod)");
    schedule->add_flag("--force", force, "build even when infeasible (clips shares)");
    schedule->add_option("--out", out_path, "trace output file");

    auto* gen = app.add_subcommand("gen", "generate a random task system");
    gen->add_option("--n", n, "task count")->required();
    gen->add_option("--util", util, "total utilization")->required();
    gen->add_option("--umax", umax, "utilization pinned on task 1")->required();
    gen->add_option("--ucap", ucap, "per-task utilization ceiling (default: none)");
    gen->add_option("--seed", seed, "RNG seed")->required();
    gen->add_option("--speedup", speedup, "amdahl:<p> or list:<g1,g2,...>")->required();
    gen->add_option("--capacity", capacity, "speedup vector length (default 8)");
    gen->add_option("--period-min", pmin, "smallest period (default 4)");
    gen->add_option("--period-max", pmax, "largest period (default 32)");
    gen->add_option("--out", out_path, "output task file ('-' for stdout)");

    auto* experiment = app.add_subcommand("experiment", "run a power-savings sweep");
    experiment->add_option("--config", config_path, "sweep config file")->required();
    experiment->add_option("--out-dir", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(tasks_path);
        if (app.got_subcommand(minfreq)) return run_minfreq(tasks_path, cores);
        if (app.got_subcommand(optimize))
            return run_optimize(tasks_path, power_path, cores_max, mode);
        if (app.got_subcommand(schedule))
            return run_schedule(tasks_path, cores, freq, quantum, horizon, force, out_path);
        if (app.got_subcommand(gen)) {
            if (gen->count("--capacity") == 0) {
                const SpeedupSource source = SpeedupSource::parse(speedup);
                if (source.kind == SpeedupSource::Kind::List)
                    capacity = static_cast<int>(source.gammas.size());
            }
            return run_gen(n, util, umax, ucap, seed, pmin, pmax, speedup, capacity, out_path);
        }
        if (app.got_subcommand(experiment)) return run_experiment(config_path, out_dir);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
