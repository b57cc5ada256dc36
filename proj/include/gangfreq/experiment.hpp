#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gangfreq/generator.hpp"
#include "gangfreq/optimizer.hpp"
#include "gangfreq/power.hpp"

namespace gangfreq {

enum class PlanMode { Exact, Enumerate };

// Power-savings sweep: for a grid of (total utilization, available cores,
// pinned maximum utilization), generate task systems, select the parallel
// operating point, price the non-parallel baseline through the same power
// model, and average the per-trial savings.
struct SweepConfig {
    int n = 8;
    long trials = 50;
    std::uint64_t seed = 1;
    std::vector<double> u_targets;
    std::vector<int> m_values;
    std::vector<double> u_max_values;
    double u_cap = 0.0;  // <= 0: derive from the speedup ceiling at the top frequency
    std::int64_t period_min = 4;
    std::int64_t period_max = 32;
    std::string speedup = "amdahl:0.7";
    std::string power_matrix;  // path, resolved against the config directory
    BaselineMode baseline = BaselineMode::Strict;
    PlanMode mode = PlanMode::Exact;
    long discard_budget = 100000;
};

// JSON config document; see README for the field list. Relative paths are
// resolved against config_dir.
SweepConfig parse_sweep_config(std::istream& in, const std::string& config_dir);

// Stable fingerprint of every config field (FNV-1a over the canonical
// serialization); changes iff the config changes.
std::uint64_t config_fingerprint(const SweepConfig& config);

struct GridCell {
    double u_target;
    int m;
    double u_max;
    long trials = 0;
    long counted = 0;  // trials contributing to the mean
    double mean_savings = 0.0;
    double stddev = 0.0;  // population std dev over counted trials
    long infeasible_baseline = 0;
    long infeasible_parallel = 0;  // baseline priced but no parallel plan fits
    double mean_baseline = 0.0;
    double mean_parallel = 0.0;
};

struct SweepResult {
    std::uint64_t fingerprint = 0;        // of the config
    std::uint64_t power_fingerprint = 0;  // of the power matrix actually used
    std::uint64_t seed = 0;
    BaselineMode baseline = BaselineMode::Strict;
    PlanMode mode = PlanMode::Exact;
    std::vector<GridCell> cells;
};

// Fully deterministic in (config, seed): per-trial streams are derived from
// the grid-point values, so any evaluation order gives identical results.
SweepResult run_sweep(const SweepConfig& config, const PowerModel& power);

// Writes <out_dir>/savings.csv (one row per grid point) and
// <out_dir>/manifest.json (seed, config fingerprint, versions, totals).
void emit_sweep(const SweepResult& result, const SweepConfig& config,
                const std::string& out_dir);

std::string sweep_data_string(const SweepResult& result);
std::string sweep_manifest_string(const SweepResult& result, const SweepConfig& config);

}  // namespace gangfreq
