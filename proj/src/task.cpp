#include "gangfreq/task.hpp"

#include <cmath>
#include <sstream>

#include "gangfreq/errors.hpp"

namespace gangfreq {

TaskSystem TaskSystem::create(std::vector<Task> tasks) {
    if (tasks.empty()) throw ValidationError("task system must contain at least one task");

    const int cap = tasks.front().speedup.capacity();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        std::ostringstream where;
        where << "task " << i + 1 << ": ";
        if (!(t.exec_time > 0.0) || !std::isfinite(t.exec_time))
            throw ValidationError(where.str() + "execution time must be a positive real");
        if (t.period <= 0)
            throw ValidationError(where.str() + "period must be a positive integer");
        if (t.speedup.capacity() != cap)
            throw ValidationError(where.str() + "all speedup vectors must share one capacity");
    }
    return TaskSystem(std::move(tasks));
}

TaskSystem::TaskSystem(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
    double total = 0.0;
    for (const Task& t : tasks_) total += t.utilization();
    total_utilization_ = total;
}

}  // namespace gangfreq
