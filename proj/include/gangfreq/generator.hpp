#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gangfreq/task.hpp"

namespace gangfreq {

// Where generated tasks get their speedup vectors: an Amdahl fraction
// ("amdahl:0.7") or an explicit list ("list:1.0,1.5,2.0"). One source is
// shared by every task in a generated system.
struct SpeedupSource {
    enum class Kind { Amdahl, List };

    Kind kind = Kind::Amdahl;
    double parallel_fraction = 0.0;
    std::vector<double> gammas;

    static SpeedupSource parse(const std::string& text);
    SpeedupVector materialize(int capacity) const;
    std::string text() const;  // canonical spelling, for manifests
};

struct GenSpec {
    int n = 1;
    double u_target = 0.0;
    // Utilization pinned on the first task; absent = classic mode where all
    // n utilizations come from the recurrence.
    std::optional<double> u_max;
    double u_cap = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::int64_t period_min = 1;
    std::int64_t period_max = 1;
    SpeedupSource speedup;
    int capacity = 1;  // speedup-vector length to materialize
    long discard_budget = 100000;
};

// UUnifast with whole-vector discard and a pinned maximum-utilization task:
// task 1 receives u_max exactly; the remaining mass u_target - u_max is
// split by the UUnifast recurrence, regenerating the entire draw whenever
// any drawn utilization exceeds u_cap. Periods are uniform integers from
// [period_min, period_max]; e_i = u_i * p_i. Deterministic in the seed.
// Throws GenerationExhausted when the discard budget runs out.
TaskSystem uunifast_discard_max(const GenSpec& spec);

}  // namespace gangfreq
