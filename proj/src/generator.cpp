#include "gangfreq/generator.hpp"

#include <cmath>
#include <sstream>

#include "gangfreq/errors.hpp"
#include "gangfreq/format.hpp"
#include "gangfreq/rng.hpp"

namespace gangfreq {

SpeedupSource SpeedupSource::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    SpeedupSource src;
    if (head == "amdahl") {
        if (colon == std::string::npos)
            throw ValidationError("speedup source: expected amdahl:<fraction>");
        src.kind = Kind::Amdahl;
        try {
            src.parallel_fraction = std::stod(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw ValidationError("speedup source: malformed amdahl fraction");
        }
        if (!(src.parallel_fraction > 0.0) || !(src.parallel_fraction < 1.0))
            throw ValidationError("speedup source: amdahl fraction must lie in (0, 1)");
        return src;
    }
    if (head == "list") {
        src.kind = Kind::List;
        std::stringstream ss(text.substr(colon + 1));
        std::string field;
        while (std::getline(ss, field, ',')) {
            try {
                src.gammas.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ValidationError("speedup source: malformed list entry '" + field + "'");
            }
        }
        if (src.gammas.empty()) throw ValidationError("speedup source: empty list");
        SpeedupVector::validate(src.gammas);  // fail fast, with the real reason
        return src;
    }
    throw ValidationError("speedup source: expected amdahl:<p> or list:<g1,g2,...>");
}

SpeedupVector SpeedupSource::materialize(int capacity) const {
    if (kind == Kind::Amdahl) return SpeedupVector::amdahl(parallel_fraction, capacity);
    if (static_cast<int>(gammas.size()) < capacity)
        throw ValidationError("speedup source: list shorter than the required capacity");
    return SpeedupVector::validate(
        std::vector<double>(gammas.begin(), gammas.begin() + capacity));
}

std::string SpeedupSource::text() const {
    std::ostringstream out;
    if (kind == Kind::Amdahl) {
        out << "amdahl:" << format_real(parallel_fraction);
    } else {
        out << "list:";
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            if (i > 0) out << ',';
            out << format_real(gammas[i]);
        }
    }
    return out.str();
}

namespace {

void check_spec(const GenSpec& spec) {
    if (spec.n < 1) throw ValidationError("generator: task count must be positive");
    if (!(spec.u_target > 0.0)) throw ValidationError("generator: total utilization must be positive");
    if (spec.period_min < 1 || spec.period_max < spec.period_min)
        throw ValidationError("generator: period range must satisfy 1 <= min <= max");
    if (spec.capacity < 1) throw ValidationError("generator: capacity must be positive");
    if (spec.u_max) {
        if (!(*spec.u_max > 0.0))
            throw ValidationError("generator: pinned utilization must be positive");
        if (*spec.u_max > spec.u_target * (1.0 + 1e-12))
            throw ValidationError("generator: pinned utilization exceeds the total");
        const double rest = spec.u_target - *spec.u_max;
        if (rest > static_cast<double>(spec.n - 1) * spec.u_cap * (1.0 + 1e-12))
            throw ValidationError("generator: remaining mass cannot fit under the cap");
        if (spec.n == 1 && rest > 1e-12)
            throw ValidationError("generator: single task requires u_max == u_target");
    } else {
        if (spec.u_target > static_cast<double>(spec.n) * spec.u_cap * (1.0 + 1e-12))
            throw ValidationError("generator: utilization cannot fit under the cap");
    }
}

}  // namespace

TaskSystem uunifast_discard_max(const GenSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);

    const int drawn = spec.u_max ? spec.n - 1 : spec.n;
    const double mass = spec.u_max ? spec.u_target - *spec.u_max : spec.u_target;

    for (long attempt = 0; attempt < spec.discard_budget; ++attempt) {
        std::vector<double> utils;
        utils.reserve(static_cast<std::size_t>(spec.n));
        if (spec.u_max) utils.push_back(*spec.u_max);

        // UUnifast recurrence over the remaining mass (Bini & Buttazzo).
        double sum = mass;
        for (int i = 1; i < drawn; ++i) {
            const double next =
                sum * std::pow(rng.uniform01(), 1.0 / static_cast<double>(drawn - i));
            utils.push_back(sum - next);
            sum = next;
        }
        if (drawn > 0) utils.push_back(sum);

        // Whole-vector discard: any drawn utilization over the cap (or a
        // degenerate zero draw) rejects the entire vector.
        bool ok = true;
        for (std::size_t i = spec.u_max ? 1 : 0; i < utils.size(); ++i)
            if (!(utils[i] > 0.0) || utils[i] > spec.u_cap) ok = false;
        if (!ok) continue;

        std::vector<Task> tasks;
        tasks.reserve(utils.size());
        for (double u : utils) {
            const std::int64_t period = rng.uniform_int(spec.period_min, spec.period_max);
            tasks.push_back(Task{u * static_cast<double>(period), period,
                                 spec.speedup.materialize(spec.capacity)});
        }
        return TaskSystem::create(std::move(tasks));
    }
    throw GenerationExhausted("generator: discard budget exhausted; the spec is over-constrained");
}

}  // namespace gangfreq
