#include "gangfreq/analysis.hpp"

#include <cmath>
#include <limits>

#include "gangfreq/errors.hpp"

namespace gangfreq {

namespace {

void require_positive_frequency(double f) {
    if (!(f > 0.0)) throw ValidationError("frequency must be positive");
}

}  // namespace

int dedicated_processors(const Task& task, double f) {
    require_positive_frequency(f);
    const double u = task.utilization();
    const std::vector<double>& g = task.speedup.values();
    const int m = static_cast<int>(g.size());

    // fits(k) <=> gamma(k)*f < u, monotone decreasing in k. The product form
    // mirrors the definition; dividing by f instead would round differently.
    auto fits = [&](int k) { return g[static_cast<std::size_t>(k - 1)] * f < u; };

    if (!fits(1)) return 0;
    int lo = 1, hi = m;
    while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        if (fits(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

FrequencyBand frequency_band(const Task& task, int kappa) {
    const int m = task.speedup.capacity();
    if (kappa < 0 || kappa > m)
        throw ValidationError("frequency_band: processor count out of range");
    const double u = task.utilization();

    if (kappa == 0)
        return {u / task.speedup.gamma(1), std::numeric_limits<double>::infinity(), false};
    if (kappa == m)  // left endpoint u / gamma(m+1) = 0, excluded
        return {0.0, u / task.speedup.gamma(m), true};
    return {u / task.speedup.gamma(kappa + 1), u / task.speedup.gamma(kappa), false};
}

ProcessorDemand processor_demand(const Task& task, double f) {
    const int kappa = dedicated_processors(task, f);
    const int m = task.speedup.capacity();
    if (kappa == m) return {m, 0.0, true};

    const double u = task.utilization();
    const double g_lo = task.speedup.gamma(kappa);
    const double g_hi = task.speedup.gamma(kappa + 1);
    const double share = (u - g_lo * f) / ((g_hi - g_lo) * f);
    return {kappa, share, false};
}

SystemDemand system_demand(const TaskSystem& system, double f) {
    double sum = 0.0;
    bool saturated = false;
    for (const Task& task : system.tasks()) {
        const ProcessorDemand demand = processor_demand(task, f);
        saturated = saturated || demand.saturated;
        sum += demand.total();
    }
    return {sum, saturated};
}

bool feasible(const TaskSystem& system, int m, double f) {
    if (m < 1 || m > system.capacity())
        throw ValidationError("feasible: core count must lie in [1, capacity]");
    const SystemDemand demand = system_demand(system, f);
    return !demand.saturated && static_cast<double>(m) >= demand.total;
}

TaskSystem scale_speedups(const TaskSystem& system, double f) {
    require_positive_frequency(f);
    std::vector<Task> scaled;
    scaled.reserve(system.tasks().size());
    for (const Task& task : system.tasks()) {
        std::vector<double> gammas = task.speedup.values();
        for (double& g : gammas) g *= f;
        scaled.push_back(Task{task.exec_time, task.period,
                              SpeedupVector::validate(std::move(gammas))});
    }
    return TaskSystem::create(std::move(scaled));
}

}  // namespace gangfreq
