#include "gangfreq/optimizer.hpp"

#include <algorithm>

#include "gangfreq/errors.hpp"

namespace gangfreq {

double kappa_frequency_bound(const TaskSystem& system, int m, const KappaVector& kappas) {
    if (m < 1 || m > system.capacity())
        throw ValidationError("frequency bound: core count must lie in [1, capacity]");
    if (static_cast<int>(kappas.kappas.size()) != system.size())
        throw ValidationError("frequency bound: one staircase value per task required");

    double numerator = 0.0;
    double correction = 0.0;
    for (int i = 0; i < system.size(); ++i) {
        const int kappa = kappas.kappas[static_cast<std::size_t>(i)];
        if (kappa < 0 || kappa >= m)
            throw ValidationError("frequency bound: staircase values must lie in [0, m-1]");
        const Task& t = system.task(i);
        const double g_lo = t.speedup.gamma(kappa);
        const double g_hi = t.speedup.gamma(kappa + 1);
        const double diff = g_hi - g_lo;
        numerator += t.utilization() / diff;
        correction += kappa - g_lo / diff;
    }
    const double denominator = m - correction;
    if (!(denominator > 0.0))
        throw ValidationError("frequency bound: staircase vector inconsistent with core count "
                              "(non-positive denominator)");
    return numerator / denominator;
}

double minimum_feasible_frequency(const TaskSystem& system, int m, MinFreqStats* stats) {
    if (m < 1 || m > system.capacity())
        throw ValidationError("minimum frequency: core count must lie in [1, capacity]");

    long calls = 0;
    auto probe = [&](double f) {
        ++calls;
        return feasible(system, m, f);
    };

    // For each task, find the staircase value it holds at the minimum
    // frequency. Feasibility is sustainable in f, so the probe at the band
    // edge u/gamma(kappa+1) is monotone in kappa and binary search applies.
    KappaVector kv;
    kv.kappas.resize(static_cast<std::size_t>(system.size()));
    for (int i = 0; i < system.size(); ++i) {
        const Task& t = system.task(i);
        const double u = t.utilization();
        if (probe(u / t.speedup.gamma(m))) {
            kv.kappas[static_cast<std::size_t>(i)] = m - 1;
            continue;
        }
        // First kappa in [0, m-1] whose band edge is infeasible; kappa = m-1
        // qualifies (just probed), so the search range is never empty.
        int lo = 0, hi = m - 1;
        while (lo < hi) {
            const int mid = lo + (hi - lo) / 2;
            if (!probe(u / t.speedup.gamma(mid + 1)))
                hi = mid;
            else
                lo = mid + 1;
        }
        kv.kappas[static_cast<std::size_t>(i)] = lo;
    }

    const double f_min = kappa_frequency_bound(system, m, kv);
    if (stats) {
        stats->feasibility_calls = calls;
        stats->kappas = kv.kappas;
    }
    return f_min;
}

double nonparallel_min_frequency(const TaskSystem& system, int m, BaselineMode mode) {
    if (m < 1) throw ValidationError("baseline frequency: core count must be positive");
    double f = system.total_utilization() / static_cast<double>(m);
    if (mode == BaselineMode::Strict)
        for (const Task& t : system.tasks()) f = std::max(f, t.utilization());
    return f;
}

OptimizeResult optimize(const TaskSystem& system, const PowerModel& power, int m_max) {
    if (m_max < 1 || m_max > system.capacity())
        throw ValidationError("optimize: core-count limit must lie in [1, capacity]");
    if (power.core_counts() < m_max)
        throw ValidationError("optimize: power model must cover core counts 1..m_max");

    OptimizeResult result;
    bool have_best = false;
    FrequencyPlan best{};
    for (int cores = 1; cores <= m_max; ++cores) {
        const double f_min = minimum_feasible_frequency(system, cores);
        PlanRow row{cores, f_min, std::nullopt, std::nullopt};
        // Quantize up to the first discrete frequency the feasibility test
        // accepts. The closed form carries ulp-level rounding, and systems
        // whose boundary lands exactly on a grid frequency are common, so
        // the raw >= comparison would sometimes skip a feasible grid point;
        // starting one guard-band below and probing keeps this row equal to
        // the enumeration oracle.
        std::optional<int> qi = power.quantize_index(f_min * (1.0 - 1e-12));
        while (qi && *qi < power.frequency_count() &&
               !feasible(system, cores, power.normalized(*qi))) {
            if (*qi + 1 >= power.frequency_count())
                qi = std::nullopt;
            else
                qi = *qi + 1;
        }
        if (qi) {
            row.f_quantized = power.frequency(*qi);
            row.watts = power.watts(*qi, cores);
            // Strict < keeps the first minimum: fewer cores win ties.
            if (!have_best || *row.watts < best.power_watts) {
                best = FrequencyPlan{cores, f_min, *row.f_quantized, *row.watts};
                have_best = true;
            }
        }
        result.table.push_back(row);
    }
    if (!have_best)
        throw InfeasibleError("optimize: no discrete frequency and core count can schedule "
                              "the system");
    result.plan = best;
    return result;
}

FrequencyPlan optimize_discrete(const TaskSystem& system, const PowerModel& power, int m_max) {
    if (m_max < 1 || m_max > system.capacity())
        throw ValidationError("optimize: core-count limit must lie in [1, capacity]");
    if (power.core_counts() < m_max)
        throw ValidationError("optimize: power model must cover core counts 1..m_max");

    bool have_best = false;
    FrequencyPlan best{};
    for (int cores = 1; cores <= m_max; ++cores) {
        for (int fi = 0; fi < power.frequency_count(); ++fi) {
            const double f_norm = power.normalized(fi);
            if (!feasible(system, cores, f_norm)) continue;
            const double watts = power.watts(fi, cores);
            // (cores, frequency)-lexicographic scan; strict < fixes the
            // fewer-cores-then-lower-frequency tie rule.
            if (!have_best || watts < best.power_watts) {
                best = FrequencyPlan{cores, f_norm, power.frequency(fi), watts};
                have_best = true;
            }
        }
    }
    if (!have_best)
        throw InfeasibleError("optimize: no discrete frequency and core count can schedule "
                              "the system");
    return best;
}

}  // namespace gangfreq
