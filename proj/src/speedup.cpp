#include "gangfreq/speedup.hpp"

#include <cmath>
#include <sstream>

namespace gangfreq {

namespace {

[[noreturn]] void fail(SpeedupError::Kind kind, int j, int jp, const std::string& what) {
    std::ostringstream msg;
    msg << "speedup vector: " << what;
    if (j > 0 || jp > 0) msg << " (entries " << j << ", " << jp << ")";
    throw SpeedupError(kind, j, jp, msg.str());
}

}  // namespace

SpeedupVector SpeedupVector::validate(std::vector<double> gammas, bool allow_ratio_boundary) {
    const int m = static_cast<int>(gammas.size());
    if (m == 0) fail(SpeedupError::Kind::Empty, 0, 0, "must be non-empty");

    auto at = [&](int k) { return k == 0 ? 0.0 : gammas[static_cast<std::size_t>(k - 1)]; };

    for (int j = 0; j < m; ++j) {
        if (!(at(j) < at(j + 1)) || !std::isfinite(at(j + 1)))
            fail(SpeedupError::Kind::NotIncreasing, j, j + 1,
                 "entries must be finite and strictly increasing from 0");
    }

    // Sub-linear speedup ratio, checked as gamma(j') * j < gamma(j) * j' to
    // avoid division. The lower bound (ratio > 1) is implied by monotonicity.
    for (int j = 1; j < m; ++j) {
        for (int jp = j + 1; jp <= m; ++jp) {
            const double lhs = at(jp) * j;
            const double rhs = at(j) * jp;
            const bool ok = allow_ratio_boundary ? lhs <= rhs : lhs < rhs;
            if (!ok)
                fail(SpeedupError::Kind::RatioBound, j, jp,
                     "speedup ratio must stay below the processor-count ratio");
        }
    }

    // Work-limited parallelism: gamma(j'+1) - gamma(j') <= gamma(j+1) - gamma(j)
    // for 0 <= j < j' < m, with gamma(0) = 0.
    for (int j = 0; j + 1 < m; ++j) {
        for (int jp = j + 1; jp < m; ++jp) {
            if (at(jp + 1) - at(jp) > at(j + 1) - at(j))
                fail(SpeedupError::Kind::WorkLimit, j, jp,
                     "marginal speedup must not grow with the processor count");
        }
    }

    return SpeedupVector(std::move(gammas));
}

SpeedupVector SpeedupVector::amdahl(double parallel_fraction, int capacity) {
    if (!(parallel_fraction > 0.0) || !(parallel_fraction < 1.0))
        throw ValidationError("amdahl: parallel fraction must lie strictly in (0, 1)");
    if (capacity < 1) throw ValidationError("amdahl: capacity must be positive");

    std::vector<double> gammas;
    gammas.reserve(static_cast<std::size_t>(capacity));
    const double serial = 1.0 - parallel_fraction;
    for (int k = 1; k <= capacity; ++k)
        gammas.push_back(1.0 / (serial + parallel_fraction / k));
    return validate(std::move(gammas));
}

}  // namespace gangfreq
