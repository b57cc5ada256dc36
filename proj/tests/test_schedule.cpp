#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "gangfreq/optimizer.hpp"
#include "gangfreq/schedule.hpp"
#include "support.hpp"

using namespace gangfreq;
using testsupport::close_rel;
using testsupport::demo_system;

namespace {

// Random system with a small hyperperiod: one period base shared per system
// so the verifier stays fast.
TaskSystem random_simulatable_system(testsupport::Rng& rng) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    const int m = static_cast<int>(rng.uniform_int(2, 6));
    const std::int64_t base = rng.uniform_int(2, 5);

    std::vector<Task> tasks;
    double top_sum = 0.0;
    std::vector<SpeedupVector> vectors;
    for (int i = 0; i < n; ++i) {
        vectors.push_back(SpeedupVector::amdahl(rng.uniform(0.3, 0.95), m));
        top_sum += vectors.back().gamma(m);
    }
    const double u_total = rng.uniform(0.4, 0.85) * top_sum;
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        weights.push_back(rng.uniform(0.1, 1.0));
        weight_sum += weights.back();
    }
    for (int i = 0; i < n; ++i) {
        const double u = u_total * weights[static_cast<std::size_t>(i)] / weight_sum;
        const std::int64_t period = base << rng.uniform_int(0, 2);  // base, 2x, 4x
        tasks.push_back(Task{u * static_cast<double>(period), period,
                             vectors[static_cast<std::size_t>(i)]});
    }
    return TaskSystem::create(std::move(tasks));
}

double assigned_time(const TaskAllotment& a, double quantum) {
    return static_cast<double>(a.dedicated.size()) * quantum + a.share_time;
}

}  // namespace

TEST_CASE("demo system at full speed: two processors plus three quarters of a third") {
    const TaskSystem ts = demo_system();
    const CanonicalAssignment a = build_canonical(ts, 3, 1.0);

    // task 1's unit share folds into a second dedicated processor
    const TaskAllotment& t1 = a.allotments()[0];
    REQUIRE(t1.dedicated.size() == 2);
    CHECK(t1.shares.empty());

    const TaskAllotment& t2 = a.allotments()[1];
    CHECK(t2.dedicated.empty());
    REQUIRE(t2.shares.size() == 1);
    CHECK(t2.shares[0].processor == 2);  // a third processor, distinct from task 1's
    CHECK(close_rel(t2.share_time, 0.75 * a.quantum(), 1e-12));
    const std::set<int> task1_procs(t1.dedicated.begin(), t1.dedicated.end());
    CHECK(!task1_procs.count(t2.shares[0].processor));

    const ScheduleTrace trace = simulate(a, ts);
    CHECK(trace.verdict.ok());
    CHECK(trace.jobs.size() == 2);  // horizon 4, both periods 4
}

TEST_CASE("demo system at the boundary frequency fills the pool exactly") {
    const TaskSystem ts = demo_system();
    const CanonicalAssignment a = build_canonical(ts, 3, 0.9375);

    const TaskAllotment& t1 = a.allotments()[0];
    const TaskAllotment& t2 = a.allotments()[1];
    REQUIRE(t1.dedicated.size() == 2);
    CHECK(close_rel(t1.share_time, 0.2 * a.quantum(), 1e-9));
    CHECK(t2.dedicated.empty());
    CHECK(close_rel(t2.share_time, 0.8 * a.quantum(), 1e-9));
    // the single shared processor is exactly full
    CHECK(close_rel(t1.share_time + t2.share_time, a.quantum(), 1e-9));

    const ScheduleTrace trace = simulate(a, ts);
    CHECK(trace.verdict.ok());
}

TEST_CASE("infeasible frequency is rejected unless forced, and forcing misses") {
    const TaskSystem ts = demo_system();
    CHECK_THROWS_AS(build_canonical(ts, 3, 0.9), InfeasibleError);

    const CanonicalAssignment forced = build_canonical(ts, 3, 0.9, 0.0, /*force=*/true);
    CHECK(forced.clipped());
    const ScheduleTrace trace = simulate(forced, ts);
    CHECK(trace.verdict.deadline_misses >= 1);
}

TEST_CASE("pure wrap-around packing when every staircase value is zero") {
    const TaskSystem ts = TaskSystem::create({
        Task{2.0, 4, SpeedupVector::amdahl(0.6, 3)},
        Task{3.0, 4, SpeedupVector::amdahl(0.6, 3)},
        Task{2.4, 4, SpeedupVector::amdahl(0.6, 3)},
    });
    // u = (0.5, 0.75, 0.6) at f = 1: all fit on single processors
    const CanonicalAssignment a = build_canonical(ts, 3, 1.0);
    double total_share = 0.0;
    for (const TaskAllotment& t : a.allotments()) {
        CHECK(t.dedicated.empty());
        total_share += t.share_time;
    }
    CHECK(close_rel(total_share, (0.5 + 0.75 + 0.6) * a.quantum(), 1e-12));
    // the middle task wraps across two pool processors
    CHECK(a.allotments()[1].shares.size() == 2);
    CHECK(simulate(a, ts).verdict.ok());
}

TEST_CASE("quantum validation") {
    const TaskSystem ts = demo_system();
    CHECK_THROWS_AS(build_canonical(ts, 3, 1.0, 3.0), ValidationError);  // 3 !| 4
    CHECK_NOTHROW(build_canonical(ts, 3, 1.0, 0.5));
    CHECK_NOTHROW(build_canonical(ts, 3, 1.0, 2.0));
    // default: gcd(4, 4)/16
    CHECK(build_canonical(ts, 3, 1.0).quantum() == 0.25);
}

TEST_CASE("hyperperiod") {
    CHECK(hyperperiod(demo_system()) == 4);
    const TaskSystem mixed = TaskSystem::create({
        Task{1.0, 6, SpeedupVector::validate({1.0})},
        Task{1.0, 10, SpeedupVector::validate({1.0})},
    });
    CHECK(hyperperiod(mixed) == 30);
}

TEST_CASE("trace rows partition every processor-slot") {
    const TaskSystem ts = demo_system();
    const CanonicalAssignment a = build_canonical(ts, 3, 1.0);
    const ScheduleTrace trace = simulate(a, ts);

    // group rows by processor; they must tile [0, horizon) without overlap
    for (int proc = 0; proc < 3; ++proc) {
        std::vector<std::pair<double, double>> spans;
        for (const TraceRow& r : trace.rows)
            if (r.processor == proc) spans.push_back({r.start, r.end});
        std::sort(spans.begin(), spans.end());
        REQUIRE(!spans.empty());
        CHECK(spans.front().first == 0.0);
        for (std::size_t i = 1; i < spans.size(); ++i)
            CHECK(spans[i].first == doctest::Approx(spans[i - 1].second).epsilon(1e-12));
        CHECK(spans.back().second == doctest::Approx(4.0).epsilon(1e-12));
    }

    std::ostringstream out;
    write_trace(out, trace);
    CHECK(out.str().substr(0, 25) == "start,end,processor,task\n");
}

TEST_CASE("random feasible systems at the minimum frequency never miss") {
    testsupport::Rng rng(2121);
    for (int it = 0; it < 60; ++it) {
        const TaskSystem ts = random_simulatable_system(rng);
        const int m = ts.capacity();
        const double f_min = minimum_feasible_frequency(ts, m);
        const CanonicalAssignment a = build_canonical(ts, m, f_min);
        const ScheduleTrace trace = simulate(a, ts);
        REQUIRE(trace.verdict.deadline_misses == 0);
        REQUIRE(trace.verdict.gang_violations == 0);

        // conservation: per-slot assigned time within capacity, and each
        // task receives its fractional demand
        double total = 0.0;
        for (int i = 0; i < ts.size(); ++i) {
            const TaskAllotment& alloc = a.allotments()[static_cast<std::size_t>(i)];
            const ProcessorDemand d = processor_demand(ts.task(i), f_min);
            REQUIRE(close_rel(assigned_time(alloc, a.quantum()), d.total() * a.quantum(),
                              1e-9));
            total += assigned_time(alloc, a.quantum());
        }
        REQUIRE(total <= m * a.quantum() * (1 + 1e-9));

        // per-hyperperiod work per task equals (hyperperiod / p) * e
        std::vector<double> work(static_cast<std::size_t>(ts.size()), 0.0);
        for (const JobRecord& j : trace.jobs) work[static_cast<std::size_t>(j.task)] += j.work_done;
        for (int i = 0; i < ts.size(); ++i) {
            const double expected = static_cast<double>(hyperperiod(ts)) /
                                    static_cast<double>(ts.task(i).period) *
                                    ts.task(i).exec_time;
            REQUIRE(close_rel(work[static_cast<std::size_t>(i)], expected, 1e-9));
        }
    }
}

TEST_CASE("share pieces never overlap themselves across random packings") {
    testsupport::Rng rng(2222);
    for (int it = 0; it < 200; ++it) {
        const TaskSystem ts = random_simulatable_system(rng);
        const int m = ts.capacity();
        const double f = minimum_feasible_frequency(ts, m) * rng.uniform(1.0, 1.3);
        const CanonicalAssignment a = build_canonical(ts, m, f);
        for (const TaskAllotment& alloc : a.allotments()) {
            REQUIRE(alloc.shares.size() <= 2);
            if (alloc.shares.size() == 2) {
                const SharePiece& x = alloc.shares[0];
                const SharePiece& y = alloc.shares[1];
                REQUIRE(x.processor != y.processor);
                // disjoint in time within the slot
                REQUIRE((x.end <= y.begin || y.end <= x.begin));
            }
        }
    }
}
