#include "gangfreq/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "gangfreq/analysis.hpp"
#include "gangfreq/errors.hpp"
#include "gangfreq/format.hpp"

namespace gangfreq {

namespace {

constexpr double kShareFoldTolerance = 1e-12;  // share == 1 up to FP noise
// Pool spill accepted silently; matches the 1e-9 demand acceptance band in
// build_canonical, so any admitted frequency also packs.
constexpr double kPackingSpillTolerance = 1e-9;

std::int64_t periods_gcd(const TaskSystem& system) {
    std::int64_t g = 0;
    for (const Task& t : system.tasks()) g = std::gcd(g, t.period);
    return g;
}

}  // namespace

std::int64_t hyperperiod(const TaskSystem& system) {
    std::int64_t l = 1;
    for (const Task& t : system.tasks()) {
        l = std::lcm(l, t.period);
        if (l <= 0 || l > (1LL << 40))
            throw ValidationError("hyperperiod overflows the verification range");
    }
    return l;
}

CanonicalAssignment build_canonical(const TaskSystem& system, int m, double f,
                                    double quantum, bool force) {
    if (m < 1 || m > system.capacity())
        throw ValidationError("build_canonical: core count must lie in [1, capacity]");
    if (!(f > 0.0)) throw ValidationError("build_canonical: frequency must be positive");

    // Boundary-feasible inputs (f at the exact minimum) carry ulp-level noise
    // in the demand sum; accept within 1e-9 relative of m, consistent with
    // the simulator's miss tolerance.
    const SystemDemand demand = system_demand(system, f);
    const bool ok = !demand.saturated && demand.total <= m * (1.0 + 1e-9);
    if (!ok && !force)
        throw InfeasibleError("build_canonical: system is infeasible at this frequency");

    if (quantum == 0.0) {
        quantum = static_cast<double>(periods_gcd(system)) / 16.0;
    } else {
        if (!(quantum > 0.0)) throw ValidationError("build_canonical: quantum must be positive");
        for (const Task& t : system.tasks()) {
            const double ratio = static_cast<double>(t.period) / quantum;
            if (std::abs(ratio - std::round(ratio)) > 1e-9)
                throw ValidationError("build_canonical: quantum must divide every period");
        }
    }

    const int n = system.size();
    bool clipped = false;

    // Dedicated counts and fractional shares; fold full shares.
    std::vector<int> dedicated_count(static_cast<std::size_t>(n));
    std::vector<double> share(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ProcessorDemand d = processor_demand(system.task(i), f);
        int count = d.dedicated;
        double s = d.saturated ? 0.0 : d.share;
        if (d.saturated) count = m;  // forced builds: grab what exists
        if (s >= 1.0 - kShareFoldTolerance) {
            count += 1;
            s = 0.0;
        }
        dedicated_count[static_cast<std::size_t>(i)] = count;
        share[static_cast<std::size_t>(i)] = s;
    }

    // Assign dedicated processor identities in task order; in forced builds a
    // task may receive fewer than it needs.
    std::vector<TaskAllotment> allotments(static_cast<std::size_t>(n));
    int next_proc = 0;
    for (int i = 0; i < n; ++i) {
        TaskAllotment& a = allotments[static_cast<std::size_t>(i)];
        int want = dedicated_count[static_cast<std::size_t>(i)];
        if (next_proc + want > m) {
            if (!force) throw Error("PackingOverflow: dedicated processors exceed platform");
            clipped = true;
            want = std::max(0, m - next_proc);
            share[static_cast<std::size_t>(i)] = 0.0;  // no gang partner to pair with
        }
        for (int k = 0; k < want; ++k) a.dedicated.push_back(next_proc++);
    }

    // Wrap-around packing of the shares onto the pool [next_proc, m), in
    // units of processor-slots.
    const double pool = static_cast<double>(m - next_proc);
    double cursor = 0.0;
    for (int i = 0; i < n; ++i) {
        TaskAllotment& a = allotments[static_cast<std::size_t>(i)];
        double s = share[static_cast<std::size_t>(i)];
        if (s <= 0.0) {
            a.share_time = 0.0;
            continue;
        }
        double end = cursor + s;
        if (end > pool) {
            if (end <= pool + kPackingSpillTolerance * std::max(1.0, pool)) {
                end = pool;  // boundary-exact fill, FP spill only
            } else if (force) {
                end = pool;
                clipped = true;
            } else {
                throw Error("PackingOverflow: shares exceed the shared pool");
            }
        }
        const double len = end - cursor;
        if (len > 0.0) {
            const int slot_index = static_cast<int>(std::floor(cursor));
            const double offset = cursor - slot_index;
            const int proc = next_proc + slot_index;
            const double first = std::min(len, 1.0 - offset);
            a.shares.push_back({proc, offset * quantum, (offset + first) * quantum});
            if (first < len)  // wrap the remainder to the next pool processor
                a.shares.push_back({proc + 1, 0.0, (len - first) * quantum});
        }
        double total = 0.0;
        for (const SharePiece& p : a.shares) total += p.end - p.begin;
        a.share_time = total;
        cursor = end;
    }

    return CanonicalAssignment(m, f, quantum, std::move(allotments), clipped);
}

namespace {

// Counts gang violations within one slot template: a task must never occupy
// more than staircase+1 processors at once, and its share pieces must not
// overlap each other in time.
long template_gang_violations(const CanonicalAssignment& assignment, const TaskSystem& system) {
    long violations = 0;
    for (int i = 0; i < system.size(); ++i) {
        const TaskAllotment& a = assignment.allotments()[static_cast<std::size_t>(i)];
        const int limit = dedicated_processors(system.task(i), assignment.frequency()) + 1;

        bool bad = static_cast<int>(a.dedicated.size()) > limit;
        // Sweep the piece boundaries; base occupancy is the dedicated count.
        std::vector<std::pair<double, int>> events;
        for (const SharePiece& p : a.shares) {
            if (p.end <= p.begin) continue;
            events.push_back({p.begin, +1});
            events.push_back({p.end, -1});
        }
        std::sort(events.begin(), events.end());
        int active = 0;
        for (const auto& [at, delta] : events) {
            (void)at;
            active += delta;
            if (static_cast<int>(a.dedicated.size()) + active > limit) bad = true;
            if (active > 1) bad = true;  // self-overlapping share pieces
        }
        if (bad) ++violations;
    }
    return violations;
}

}  // namespace

ScheduleTrace simulate(const CanonicalAssignment& assignment, const TaskSystem& system,
                       double horizon) {
    const double hp = static_cast<double>(hyperperiod(system));
    if (horizon <= 0.0) horizon = hp;
    if (horizon < hp) throw ValidationError("simulate: horizon must cover one hyperperiod");

    const double quantum = assignment.quantum();
    const auto slot_count = static_cast<std::int64_t>(std::llround(horizon / quantum));
    if (std::abs(slot_count * quantum - horizon) > 1e-9 * horizon)
        throw ValidationError("simulate: horizon must be a whole number of slots");
    if (slot_count > 4'000'000)
        throw ValidationError("simulate: horizon/quantum exceeds the trace budget; "
                              "use a coarser quantum or shorter horizon");

    const int n = system.size();
    const double f = assignment.frequency();

    // Work delivered to each task per slot: gamma(c) on the dedicated
    // processors for the whole slot, gamma(c+1) during the share pieces.
    std::vector<double> slot_work(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const TaskAllotment& a = assignment.allotments()[static_cast<std::size_t>(i)];
        const SpeedupVector& sv = system.task(i).speedup;
        const int c = static_cast<int>(a.dedicated.size());
        slot_work[static_cast<std::size_t>(i)] =
            f * (sv.gamma(c) * (quantum - a.share_time) + sv.gamma(c + 1) * a.share_time);
    }

    ScheduleTrace trace;
    trace.horizon = horizon;

    // Job accounting: strictly periodic releases, analytic work per period.
    for (int i = 0; i < n; ++i) {
        const Task& t = system.task(i);
        const double period = static_cast<double>(t.period);
        const auto slots_per_period = static_cast<std::int64_t>(std::llround(period / quantum));
        for (double arrival = 0.0; arrival + period <= horizon * (1.0 + 1e-12);
             arrival += period) {
            const double given = slot_work[static_cast<std::size_t>(i)] *
                                 static_cast<double>(slots_per_period);
            const double done = std::min(given, t.exec_time);
            const bool missed = done < t.exec_time * (1.0 - 1e-9);
            trace.jobs.push_back(
                {i, arrival, arrival + period, done, t.exec_time, missed});
            if (missed) ++trace.verdict.deadline_misses;
        }
    }

    trace.verdict.gang_violations = template_gang_violations(assignment, system);

    // Materialize per-processor rows, one template replicated per slot.
    struct TemplateRow {
        double begin, end;
        int processor, task;
    };
    std::vector<TemplateRow> tmpl;
    std::vector<std::vector<std::pair<double, double>>> busy(
        static_cast<std::size_t>(assignment.cores()));
    for (int i = 0; i < n; ++i) {
        const TaskAllotment& a = assignment.allotments()[static_cast<std::size_t>(i)];
        for (int proc : a.dedicated) {
            tmpl.push_back({0.0, quantum, proc, i});
            busy[static_cast<std::size_t>(proc)].push_back({0.0, quantum});
        }
        for (const SharePiece& p : a.shares) {
            if (p.end <= p.begin) continue;
            tmpl.push_back({p.begin, p.end, p.processor, i});
            busy[static_cast<std::size_t>(p.processor)].push_back({p.begin, p.end});
        }
    }
    for (int proc = 0; proc < assignment.cores(); ++proc) {
        auto& intervals = busy[static_cast<std::size_t>(proc)];
        std::sort(intervals.begin(), intervals.end());
        double at = 0.0;
        for (const auto& [b, e] : intervals) {
            if (b > at) tmpl.push_back({at, b, proc, kIdle});
            at = std::max(at, e);
        }
        if (at < quantum) tmpl.push_back({at, quantum, proc, kIdle});
    }
    std::sort(tmpl.begin(), tmpl.end(), [](const TemplateRow& x, const TemplateRow& y) {
        return std::tie(x.begin, x.processor, x.end) < std::tie(y.begin, y.processor, y.end);
    });

    if (tmpl.size() * static_cast<std::size_t>(slot_count) > 16'000'000)
        throw ValidationError("simulate: trace would exceed the row budget; "
                              "use a coarser quantum or shorter horizon");
    trace.rows.reserve(tmpl.size() * static_cast<std::size_t>(slot_count));
    for (std::int64_t s = 0; s < slot_count; ++s) {
        const double start = static_cast<double>(s) * quantum;
        for (const TemplateRow& r : tmpl)
            trace.rows.push_back({start + r.begin, start + r.end, r.processor, r.task});
    }
    return trace;
}

void write_trace(std::ostream& out, const ScheduleTrace& trace) {
    out << "start,end,processor,task\n";
    for (const TraceRow& r : trace.rows) {
        out << format_real(r.start) << ',' << format_real(r.end) << ',' << r.processor << ',';
        if (r.task == kIdle)
            out << "IDLE";
        else
            out << r.task + 1;
        out << '\n';
    }
}

void write_verdict_summary(std::ostream& out, const ScheduleTrace& trace) {
    long met = 0;
    for (const JobRecord& j : trace.jobs)
        if (!j.missed) ++met;
    out << "horizon: " << format_real(trace.horizon) << '\n';
    out << "jobs: " << trace.jobs.size() << " met: " << met
        << " missed: " << trace.verdict.deadline_misses << '\n';
    out << "gang_violations: " << trace.verdict.gang_violations << '\n';
    for (const JobRecord& j : trace.jobs) {
        if (!j.missed) continue;
        out << "miss: task " << j.task + 1 << " arrival " << format_real(j.arrival)
            << " deadline " << format_real(j.deadline) << " work "
            << format_real(j.work_done) << '/' << format_real(j.work_required) << '\n';
    }
    out << "verdict: " << (trace.verdict.ok() ? "PASS" : "FAIL") << '\n';
}

}  // namespace gangfreq
