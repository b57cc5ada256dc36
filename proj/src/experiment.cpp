#include "gangfreq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gangfreq/errors.hpp"
#include "gangfreq/format.hpp"
#include "gangfreq/rng.hpp"

namespace gangfreq {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kDataFormatVersion = "1";

std::vector<double> parse_real_grid(const json& node, const char* what) {
    std::vector<double> values;
    if (node.is_array()) {
        for (const json& v : node) {
            if (!v.is_number()) throw ValidationError(std::string("config: ") + what +
                                                      " entries must be numbers");
            values.push_back(v.get<double>());
        }
    } else if (node.is_object()) {
        const double from = node.at("from").get<double>();
        const double to = node.at("to").get<double>();
        const double step = node.at("step").get<double>();
        if (!(step > 0.0)) throw ValidationError(std::string("config: ") + what +
                                                 " step must be positive");
        for (int i = 0;; ++i) {
            const double v = from + i * step;
            if (v > to + step * 0.5) break;
            values.push_back(v);
        }
    } else {
        throw ValidationError(std::string("config: ") + what +
                              " must be an array or {from, to, step}");
    }
    if (values.empty()) throw ValidationError(std::string("config: ") + what + " is empty");
    return values;
}

std::uint64_t fnv1a(std::uint64_t hash, const std::string& text) {
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

// Smallest grid frequency admissible for the non-parallel baseline:
// sum(u_i)/f <= m, plus u_i <= f per task in strict mode. The sum uses the
// same per-task-quotient arithmetic as the feasibility test, so a system
// whose boundary lands exactly on a grid frequency prices identically on
// the baseline and parallel sides (with unit single-core speedups the two
// predicates are the same expression).
std::optional<int> baseline_grid_index(const TaskSystem& ts, int m, BaselineMode mode,
                                       const PowerModel& power) {
    for (int i = 0; i < power.frequency_count(); ++i) {
        const double g = power.normalized(i);
        bool capped = false;
        if (mode == BaselineMode::Strict)
            for (const Task& t : ts.tasks())
                if (t.utilization() > g) {
                    capped = true;
                    break;
                }
        if (capped) continue;
        double sum = 0.0;
        for (const Task& t : ts.tasks()) sum += t.utilization() / g;
        if (static_cast<double>(m) >= sum) return i;
    }
    return std::nullopt;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in, const std::string& config_dir) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config: top-level object required");

    SweepConfig cfg;
    try {
        cfg.n = doc.at("n").get<int>();
        cfg.trials = doc.at("trials").get<long>();
        cfg.seed = doc.at("seed").get<std::uint64_t>();
        cfg.u_targets = parse_real_grid(doc.at("u_target"), "u_target");
        for (double v : parse_real_grid(doc.at("m"), "m")) {
            if (v != std::floor(v)) throw ValidationError("config: m values must be integers");
            cfg.m_values.push_back(static_cast<int>(v));
        }
        cfg.u_max_values = parse_real_grid(doc.at("u_max"), "u_max");
        if (doc.contains("u_cap")) cfg.u_cap = doc.at("u_cap").get<double>();
        const json& pr = doc.at("period_range");
        if (!pr.is_array() || pr.size() != 2)
            throw ValidationError("config: period_range must be [min, max]");
        cfg.period_min = pr[0].get<std::int64_t>();
        cfg.period_max = pr[1].get<std::int64_t>();
        cfg.speedup = doc.at("speedup").get<std::string>();
        cfg.power_matrix = doc.at("power_matrix").get<std::string>();
        const std::string baseline = doc.value("baseline", std::string("strict"));
        if (baseline == "strict")
            cfg.baseline = BaselineMode::Strict;
        else if (baseline == "paper")
            cfg.baseline = BaselineMode::Paper;
        else
            throw ValidationError("config: baseline must be 'strict' or 'paper'");
        const std::string mode = doc.value("mode", std::string("exact"));
        if (mode == "exact")
            cfg.mode = PlanMode::Exact;
        else if (mode == "enumerate")
            cfg.mode = PlanMode::Enumerate;
        else
            throw ValidationError("config: mode must be 'exact' or 'enumerate'");
        if (doc.contains("discard_budget"))
            cfg.discard_budget = doc.at("discard_budget").get<long>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }

    SpeedupSource::parse(cfg.speedup);  // validate the spelling now
    if (cfg.trials < 0) throw ValidationError("config: trials must be non-negative");

    if (!cfg.power_matrix.empty() && config_dir != "" &&
        !std::filesystem::path(cfg.power_matrix).is_absolute())
        cfg.power_matrix = (std::filesystem::path(config_dir) / cfg.power_matrix).string();
    return cfg;
}

std::uint64_t config_fingerprint(const SweepConfig& cfg) {
    std::ostringstream canon;
    canon << "n=" << cfg.n << ";trials=" << cfg.trials << ";seed=" << cfg.seed << ";u=";
    for (double v : cfg.u_targets) canon << format_real(v) << ',';
    canon << ";m=";
    for (int v : cfg.m_values) canon << v << ',';
    canon << ";umax=";
    for (double v : cfg.u_max_values) canon << format_real(v) << ',';
    canon << ";ucap=" << format_real(cfg.u_cap) << ";periods=" << cfg.period_min << '-'
          << cfg.period_max << ";speedup=" << cfg.speedup
          << ";power=" << cfg.power_matrix
          << ";baseline=" << (cfg.baseline == BaselineMode::Strict ? "strict" : "paper")
          << ";mode=" << (cfg.mode == PlanMode::Exact ? "exact" : "enumerate")
          << ";budget=" << cfg.discard_budget;
    return fnv1a(1469598103934665603ULL, canon.str());
}

// Identity of the matrix the sweep actually consumed, independent of where
// it was loaded from.
std::uint64_t power_model_fingerprint(const PowerModel& power) {
    std::ostringstream canon;
    canon << "ref=" << format_real(power.reference_frequency()) << ";";
    for (int i = 0; i < power.frequency_count(); ++i) {
        canon << format_real(power.frequency(i)) << ':';
        for (int k = 1; k <= power.core_counts(); ++k)
            canon << format_real(power.watts(i, k)) << ',';
        canon << ';';
    }
    return fnv1a(1469598103934665603ULL, canon.str());
}

SweepResult run_sweep(const SweepConfig& cfg, const PowerModel& power) {
    const SpeedupSource source = SpeedupSource::parse(cfg.speedup);
    int max_m = 0;
    for (int m : cfg.m_values) {
        if (m < 1) throw ValidationError("config: m values must be positive");
        max_m = std::max(max_m, m);
    }
    if (power.core_counts() < max_m)
        throw ValidationError("config: power matrix covers fewer cores than the grid needs");

    const double top_norm =
        power.frequency(power.frequency_count() - 1) / power.reference_frequency();
    double u_cap = cfg.u_cap;
    if (!(u_cap > 0.0))  // speedup-implied schedulability ceiling
        u_cap = source.materialize(max_m).gamma(max_m) * top_norm;

    SweepResult result;
    result.fingerprint = config_fingerprint(cfg);
    result.power_fingerprint = power_model_fingerprint(power);
    result.seed = cfg.seed;
    result.baseline = cfg.baseline;
    result.mode = cfg.mode;

    for (double u_target : cfg.u_targets) {
        for (int m : cfg.m_values) {
            for (double u_max : cfg.u_max_values) {
                GridCell cell;
                cell.u_target = u_target;
                cell.m = m;
                cell.u_max = u_max;
                cell.trials = cfg.trials;

                std::vector<double> savings;
                savings.reserve(static_cast<std::size_t>(cfg.trials));
                double base_sum = 0.0, par_sum = 0.0;

                // Key the trial stream on the grid-point values so results
                // do not depend on grid enumeration or evaluation order.
                std::uint64_t cell_key = Rng::mix(0x5eedc0de, static_cast<std::uint64_t>(m));
                std::uint64_t bits;
                std::memcpy(&bits, &u_target, sizeof bits);
                cell_key = Rng::mix(cell_key, bits);
                std::memcpy(&bits, &u_max, sizeof bits);
                cell_key = Rng::mix(cell_key, bits);

                for (long trial = 0; trial < cfg.trials; ++trial) {
                    GenSpec gen;
                    gen.n = cfg.n;
                    gen.u_target = u_target;
                    gen.u_max = u_max;
                    gen.u_cap = u_cap;
                    gen.seed = Rng::mix(cfg.seed, Rng::mix(cell_key,
                                                           static_cast<std::uint64_t>(trial)));
                    gen.period_min = cfg.period_min;
                    gen.period_max = cfg.period_max;
                    gen.speedup = source;
                    gen.capacity = max_m;
                    gen.discard_budget = cfg.discard_budget;
                    const TaskSystem system = uunifast_discard_max(gen);

                    const std::optional<int> base_index =
                        baseline_grid_index(system, m, cfg.baseline, power);
                    if (!base_index) {
                        ++cell.infeasible_baseline;
                        continue;
                    }

                    double parallel_watts;
                    try {
                        parallel_watts = cfg.mode == PlanMode::Exact
                                             ? optimize(system, power, m).plan.power_watts
                                             : optimize_discrete(system, power, m).power_watts;
                    } catch (const InfeasibleError&) {
                        // Baseline priced but no parallel point fits; possible
                        // in paper mode, whose baseline ignores u_i <= f.
                        ++cell.infeasible_parallel;
                        continue;
                    }
                    const double baseline_watts = power.watts(*base_index, m);
                    savings.push_back(baseline_watts - parallel_watts);
                    base_sum += baseline_watts;
                    par_sum += parallel_watts;
                }

                cell.counted = static_cast<long>(savings.size());
                if (cell.counted > 0) {
                    double sum = 0.0;
                    for (double s : savings) sum += s;
                    cell.mean_savings = sum / static_cast<double>(cell.counted);
                    double sq = 0.0;
                    for (double s : savings) {
                        const double d = s - cell.mean_savings;
                        sq += d * d;
                    }
                    cell.stddev = std::sqrt(sq / static_cast<double>(cell.counted));
                    cell.mean_baseline = base_sum / static_cast<double>(cell.counted);
                    cell.mean_parallel = par_sum / static_cast<double>(cell.counted);
                }
                result.cells.push_back(cell);
            }
        }
    }
    return result;
}

std::string sweep_data_string(const SweepResult& result) {
    std::ostringstream out;
    out << "u_target,m,u_max,mean_savings_w,stddev_w,infeasible_baseline\n";
    for (const GridCell& c : result.cells) {
        out << format_real(c.u_target) << ',' << c.m << ',' << format_real(c.u_max) << ','
            << format_real(c.mean_savings) << ',' << format_real(c.stddev) << ','
            << c.infeasible_baseline << '\n';
    }
    return out.str();
}

std::string sweep_manifest_string(const SweepResult& result, const SweepConfig& config) {
    long parallel_skipped = 0;
    for (const GridCell& c : result.cells) parallel_skipped += c.infeasible_parallel;
    char fingerprint[32], power_fp[32];
    std::snprintf(fingerprint, sizeof fingerprint, "%016llx",
                  static_cast<unsigned long long>(result.fingerprint));
    std::snprintf(power_fp, sizeof power_fp, "%016llx",
                  static_cast<unsigned long long>(result.power_fingerprint));
    std::ostringstream out;
    out << "{\n";
    out << "  \"tool\": \"gangfreq\",\n";
    out << "  \"tool_version\": \"" << kToolVersion << "\",\n";
    out << "  \"data_format_version\": \"" << kDataFormatVersion << "\",\n";
    out << "  \"seed\": " << result.seed << ",\n";
    out << "  \"config_fingerprint\": \"" << fingerprint << "\",\n";
    out << "  \"power_model_fingerprint\": \"" << power_fp << "\",\n";
    out << "  \"baseline\": \"" << (result.baseline == BaselineMode::Strict ? "strict" : "paper")
        << "\",\n";
    out << "  \"mode\": \"" << (result.mode == PlanMode::Exact ? "exact" : "enumerate")
        << "\",\n";
    out << "  \"speedup\": \"" << config.speedup << "\",\n";
    out << "  \"grid_points\": " << result.cells.size() << ",\n";
    out << "  \"trials_per_point\": " << config.trials << ",\n";
    out << "  \"infeasible_parallel_total\": " << parallel_skipped << "\n";
    out << "}\n";
    return out.str();
}

void emit_sweep(const SweepResult& result, const SweepConfig& config,
                const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");

    const auto write_file = [&](const std::string& name, const std::string& contents) {
        const std::string path = (std::filesystem::path(out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << contents;
        if (!out) throw IoError("failed writing '" + path + "'");
    };
    write_file("savings.csv", sweep_data_string(result));
    write_file("manifest.json", sweep_manifest_string(result, config));
}

}  // namespace gangfreq
