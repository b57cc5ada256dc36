#pragma once

#include "gangfreq/task.hpp"

namespace gangfreq {

// Frequency-parametric schedulability analysis. Frequencies are normalized
// reals (1.0 = reference speed); the mapping to physical GHz lives in the
// power model. All comparisons use exact IEEE semantics with no epsilon;
// callers that need tolerance apply it at the frequency level.

// Half-open frequency band [lo, hi) over which a task's dedicated-processor
// count is constant. hi may be +inf. lo_exclusive marks the saturated band
// (0, hi), whose mathematical left endpoint is u / gamma(m+1) = 0.
struct FrequencyBand {
    double lo;
    double hi;
    bool lo_exclusive = false;

    bool contains(double f) const {
        return (lo_exclusive ? f > lo : f >= lo) && f < hi;
    }
};

// Processor demand of one task at a frequency: `dedicated` processors held
// full-time plus a `share` of one extra. saturated means the task cannot be
// scheduled at this frequency even on all capacity() cores, in which case
// dedicated == capacity and share == 0.
struct ProcessorDemand {
    int dedicated;
    double share;
    bool saturated;

    double total() const { return dedicated + share; }
};

struct SystemDemand {
    double total;
    bool saturated;
};

// Smallest k such that the task fits on k+1 cores at frequency f: 0 when
// u <= gamma(1)*f, otherwise max{k | gamma(k)*f < u}. A result equal to the
// vector capacity means the task is unschedulable at f. Binary search over
// the sorted gammas.
int dedicated_processors(const Task& task, double f);

// Inverse of the staircase: the band of frequencies on which
// dedicated_processors(task, f) == kappa, for kappa in [0, capacity].
FrequencyBand frequency_band(const Task& task, int kappa);

// Fractional processor demand of one task / of the whole system.
ProcessorDemand processor_demand(const Task& task, double f);
SystemDemand system_demand(const TaskSystem& system, double f);

// Exact feasibility test on m cores at frequency f: true iff no task is
// saturated and m >= total fractional demand.
bool feasible(const TaskSystem& system, int m, double f);

// Returns the system with every speedup entry multiplied by f. Feasibility
// of the original at f equals feasibility of the result at 1.
TaskSystem scale_speedups(const TaskSystem& system, double f);

}  // namespace gangfreq
