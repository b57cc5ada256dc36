#pragma once

// Shared helpers and independent oracles for the test suites. Everything in
// here deliberately avoids the library's own search paths: the staircase
// oracle is a linear scan and the minimum-frequency oracle is bisection on
// the feasibility test.

#include <algorithm>
#include <cmath>
#include <vector>

#include "gangfreq/analysis.hpp"
#include "gangfreq/rng.hpp"
#include "gangfreq/task.hpp"

namespace testsupport {

using gangfreq::Rng;
using gangfreq::SpeedupVector;
using gangfreq::Task;
using gangfreq::TaskSystem;

// The two-task demo system used throughout: u = (1.5, 0.75), capacity 3.
inline TaskSystem demo_system() {
    return TaskSystem::create({
        Task{6.0, 4, SpeedupVector::validate({1.0, 1.5, 2.0})},
        Task{3.0, 4, SpeedupVector::validate({1.0, 1.2, 1.3})},
    });
}

// Linear-scan evaluation of the staircase definition.
inline int dedicated_processors_linear(const Task& task, double f) {
    const double u = task.utilization();
    const std::vector<double>& g = task.speedup.values();
    int k = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j] * f < u) k = static_cast<int>(j) + 1;
    return k;
}

struct RandomSystemOptions {
    int n_min = 2, n_max = 8;
    int m_min = 2, m_max = 8;
    double amdahl_min = 0.3, amdahl_max = 0.95;
    double u_frac_min = 0.5, u_frac_max = 0.9;  // of the summed top speedups
    std::int64_t period_min = 1, period_max = 20;
};

// Random system with per-task Amdahl vectors; capacity equals the platform
// size. Total utilization is a fraction of the summed top speedups, split
// by normalized random weights.
inline TaskSystem random_system(Rng& rng, const RandomSystemOptions& opt = {}) {
    const int n = static_cast<int>(rng.uniform_int(opt.n_min, opt.n_max));
    const int m = static_cast<int>(rng.uniform_int(opt.m_min, opt.m_max));

    std::vector<SpeedupVector> vectors;
    double top_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        vectors.push_back(
            SpeedupVector::amdahl(rng.uniform(opt.amdahl_min, opt.amdahl_max), m));
        top_sum += vectors.back().gamma(m);
    }

    const double u_total = rng.uniform(opt.u_frac_min, opt.u_frac_max) * top_sum;
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        weights.push_back(rng.uniform(0.1, 1.0));
        weight_sum += weights.back();
    }

    std::vector<Task> tasks;
    for (int i = 0; i < n; ++i) {
        const double u = u_total * weights[static_cast<std::size_t>(i)] / weight_sum;
        const std::int64_t period = rng.uniform_int(opt.period_min, opt.period_max);
        tasks.push_back(Task{u * static_cast<double>(period), period,
                             vectors[static_cast<std::size_t>(i)]});
    }
    return TaskSystem::create(std::move(tasks));
}

// Bracket from the band structure: below max_i u_i/gamma(i, m) some task is
// saturated; at sum_i u_i/gamma(i, 1) every staircase value is 0 and the
// demand is exactly 1 processor.
inline double lower_bracket(const TaskSystem& ts, int m) {
    double lo = 0.0;
    for (const Task& t : ts.tasks())
        lo = std::max(lo, t.utilization() / t.speedup.gamma(m));
    return lo;
}

inline double upper_bracket(const TaskSystem& ts) {
    double hi = 0.0;
    for (const Task& t : ts.tasks()) hi += t.utilization() / t.speedup.gamma(1);
    return hi;
}

// Bisection on the feasibility predicate; the reference for the closed-form
// algorithm.
inline double bisect_min_frequency(const TaskSystem& ts, int m, int iterations = 200) {
    double lo = lower_bracket(ts, m);
    double hi = std::max(upper_bracket(ts), lo);
    if (gangfreq::feasible(ts, m, lo)) return lo;
    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval collapsed to adjacent doubles
        if (gangfreq::feasible(ts, m, mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Every staircase jump frequency u_i/gamma(i, k) of the system.
inline std::vector<double> jump_frequencies(const TaskSystem& ts) {
    std::vector<double> edges;
    for (const Task& t : ts.tasks())
        for (int k = 1; k <= t.speedup.capacity(); ++k)
            edges.push_back(t.utilization() / t.speedup.gamma(k));
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace testsupport
