#pragma once

#include <cstdint>
#include <vector>

#include "gangfreq/speedup.hpp"

namespace gangfreq {

// Implicit-deadline sporadic task: worst-case execution time, period
// (= relative deadline), and its speedup vector. Periods are integral so
// that hyperperiods exist for the schedule verifier.
struct Task {
    double exec_time;
    std::int64_t period;
    SpeedupVector speedup;

    double utilization() const { return exec_time / static_cast<double>(period); }
};

// Non-empty collection of tasks whose speedup vectors share one capacity.
// Immutable after construction; safe to share across readers.
class TaskSystem {
public:
    static TaskSystem create(std::vector<Task> tasks);

    int size() const { return static_cast<int>(tasks_.size()); }
    int capacity() const { return tasks_.front().speedup.capacity(); }
    const Task& task(int i) const { return tasks_[static_cast<std::size_t>(i)]; }
    const std::vector<Task>& tasks() const { return tasks_; }
    double total_utilization() const { return total_utilization_; }

private:
    explicit TaskSystem(std::vector<Task> tasks);

    std::vector<Task> tasks_;
    double total_utilization_;
};

}  // namespace gangfreq
