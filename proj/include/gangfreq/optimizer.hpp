#pragma once

#include <optional>
#include <vector>

#include "gangfreq/analysis.hpp"
#include "gangfreq/power.hpp"
#include "gangfreq/task.hpp"

namespace gangfreq {

// Per-task staircase values used by the closed-form frequency bound; entry i
// must lie in [0, m-1].
struct KappaVector {
    std::vector<int> kappas;
};

// Closed-form bound: the frequency at which the system's fractional demand,
// evaluated with the staircase pinned at `kappas`, equals m. With the
// correct vector this is the minimum feasible frequency. Uses gamma(0) = 0.
// Throws ValidationError if the denominator m - sum(kappa_i - ...) is not
// positive (a kappa vector inconsistent with m cores).
double kappa_frequency_bound(const TaskSystem& system, int m, const KappaVector& kappas);

struct MinFreqStats {
    long feasibility_calls = 0;
    std::vector<int> kappas;
};

// Smallest frequency at which the system is feasible on m cores. Resolves
// each task's staircase value with at most ceil(log2 m) + 1 feasibility
// probes (binary search, valid because feasibility is sustainable in f),
// then evaluates the closed-form bound.
double minimum_feasible_frequency(const TaskSystem& system, int m,
                                  MinFreqStats* stats = nullptr);

enum class BaselineMode { Paper, Strict };

// Minimum frequency for an optimal non-parallel scheduler on m cores.
// Paper mode solves U <= m*f, giving U/m. Strict mode additionally honors
// the per-task constraint u_i <= f that holds when jobs cannot parallelize,
// giving max(U/m, max_i u_i).
double nonparallel_min_frequency(const TaskSystem& system, int m,
                                 BaselineMode mode = BaselineMode::Strict);

// One row of the per-core-count selection table. f_quantized and watts are
// empty when the continuous minimum exceeds the top discrete frequency.
struct PlanRow {
    int cores;
    double f_min;
    std::optional<double> f_quantized;  // physical units
    std::optional<double> watts;
};

// Selected operating point: active core count, continuous minimum frequency,
// its discrete quantization (physical units), and the predicted power.
struct FrequencyPlan {
    int active_cores;
    double f_min_continuous;
    double f_quantized;
    double power_watts;
};

struct OptimizeResult {
    FrequencyPlan plan;
    std::vector<PlanRow> table;
};

// For each core count 1..m_max: compute the continuous minimum frequency,
// quantize it up to the nearest discrete frequency, evaluate power, and
// return the minimum-power combination. Ties break toward fewer cores,
// then lower frequency. Throws InfeasibleError when every core count is
// unattainable at the top discrete frequency.
OptimizeResult optimize(const TaskSystem& system, const PowerModel& power, int m_max);

// Enumeration variant: evaluates the feasibility test at every (discrete
// frequency, core count) pair and picks the minimum-power feasible pair,
// same tie-breaking. Robust to power data that is not monotone in f. The
// returned f_min_continuous is the chosen grid frequency in normalized
// units (no continuous minimum is computed in this mode).
FrequencyPlan optimize_discrete(const TaskSystem& system, const PowerModel& power, int m_max);

}  // namespace gangfreq
