#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gangfreq/task.hpp"

namespace gangfreq {

// Sub-interval of one slot on a shared-pool processor; begin/end are offsets
// from the slot start, in time units.
struct SharePiece {
    int processor;
    double begin;
    double end;
};

// One task's processor allotment, repeated every slot: `dedicated` processors
// held for the whole slot plus share pieces on the pool. During a share piece
// the task runs on dedicated.size()+1 processors in unison.
struct TaskAllotment {
    std::vector<int> dedicated;
    std::vector<SharePiece> shares;
    double share_time;  // sum of piece lengths, time units per slot
};

class CanonicalAssignment {
public:
    CanonicalAssignment(int cores, double frequency, double quantum,
                        std::vector<TaskAllotment> allotments, bool clipped)
        : cores_(cores),
          frequency_(frequency),
          quantum_(quantum),
          allotments_(std::move(allotments)),
          clipped_(clipped) {}

    int cores() const { return cores_; }
    double frequency() const { return frequency_; }
    double quantum() const { return quantum_; }
    const std::vector<TaskAllotment>& allotments() const { return allotments_; }
    // True when a forced build had to drop allotment time (infeasible input).
    bool clipped() const { return clipped_; }

private:
    int cores_;
    double frequency_;
    double quantum_;
    std::vector<TaskAllotment> allotments_;
    bool clipped_;
};

// Builds the canonical malleable-gang schedule template at (m, f): each task
// holds its staircase count of dedicated processors; fractional shares are
// packed onto the remaining pool by wrap-around within each slot. A share of
// a full processor is folded into an extra dedicated one. The slot quantum
// defaults to gcd(periods)/16 and must divide every period.
//
// Throws InfeasibleError when the system is infeasible at f, unless `force`
// is set, in which case overflowing shares are clipped at the pool boundary
// (the resulting schedule will miss deadlines). PackingOverflow without
// force signals an internal invariant bug.
CanonicalAssignment build_canonical(const TaskSystem& system, int m, double f,
                                    double quantum = 0.0, bool force = false);

struct JobRecord {
    int task;  // 0-based
    double arrival;
    double deadline;
    double work_done;
    double work_required;
    bool missed;
};

inline constexpr int kIdle = -1;

struct TraceRow {
    double start;
    double end;
    int processor;
    int task;  // kIdle for unassigned time
};

struct Verdict {
    long deadline_misses = 0;
    long gang_violations = 0;
    bool ok() const { return deadline_misses == 0 && gang_violations == 0; }
};

struct ScheduleTrace {
    double horizon;
    std::vector<TraceRow> rows;
    std::vector<JobRecord> jobs;
    Verdict verdict;
};

// lcm of the task periods.
std::int64_t hyperperiod(const TaskSystem& system);

// Replays the assignment over `horizon` time units (default: one
// hyperperiod) with jobs released strictly periodically from t = 0. Work is
// accounted analytically per slot at rate gamma(c)*f on c processors. A job
// misses when its work falls short of the requirement by more than 1e-9
// relative at the deadline. Gang violations (a task on more than its
// staircase-count-plus-one processors at any instant, or overlapping share
// pieces) are counted from the slot template.
ScheduleTrace simulate(const CanonicalAssignment& assignment, const TaskSystem& system,
                       double horizon = 0.0);

// Delimited rows: start, end, processor, task id (1-based) or IDLE.
void write_trace(std::ostream& out, const ScheduleTrace& trace);
void write_verdict_summary(std::ostream& out, const ScheduleTrace& trace);

}  // namespace gangfreq
