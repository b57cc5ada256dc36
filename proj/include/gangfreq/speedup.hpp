#pragma once

#include <limits>
#include <vector>

#include "gangfreq/errors.hpp"

namespace gangfreq {

// Per-processor-count execution-rate multipliers of one task. A job running
// on k cores at frequency f completes t * gamma(k) * f units of work over a
// t-length interval. Entries are validated against:
//   - strict increase: 0 < gamma(1) < ... < gamma(m)
//   - sub-linear speedup ratio: 1 < gamma(j')/gamma(j) < j'/j for j < j'
//   - work-limited parallelism: marginal speedup never grows with k
// gamma(0) == 0 and gamma(m+1) == +inf are implicit sentinels, never stored.
class SpeedupVector {
public:
    // Checks all three restrictions over every index pair and throws
    // SpeedupError (with the offending pair) on the first violation.
    // allow_ratio_boundary relaxes only the upper ratio bound to <=, for
    // exploratory data that sits exactly on gamma(j')/gamma(j) == j'/j.
    static SpeedupVector validate(std::vector<double> gammas,
                                  bool allow_ratio_boundary = false);

    // Amdahl's-law vector gamma(k) = 1 / ((1-p) + p/k) for k = 1..capacity;
    // a synthetic stand-in for measured speedup curves. parallel_fraction
    // must lie strictly in (0, 1).
    static SpeedupVector amdahl(double parallel_fraction, int capacity);

    int capacity() const { return static_cast<int>(gammas_.size()); }

    // k in [0, capacity()+1]; the sentinel indices return 0 and +inf.
    double gamma(int k) const {
        if (k <= 0) return 0.0;
        if (k > capacity()) return std::numeric_limits<double>::infinity();
        return gammas_[static_cast<std::size_t>(k - 1)];
    }

    const std::vector<double>& values() const { return gammas_; }

    bool operator==(const SpeedupVector& other) const = default;

private:
    explicit SpeedupVector(std::vector<double> gammas) : gammas_(std::move(gammas)) {}

    std::vector<double> gammas_;
};

}  // namespace gangfreq
