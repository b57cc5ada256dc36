#pragma once

#include <stdexcept>
#include <string>

namespace gangfreq {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model or input-document invariant violations.
struct ValidationError : Error {
    using Error::Error;
};

// Speedup-vector restriction failures. j and j_prime are the 1-based
// positions of the offending entry pair (j < j_prime).
struct SpeedupError : ValidationError {
    enum class Kind { Empty, NotIncreasing, RatioBound, WorkLimit };

    Kind kind;
    int j;
    int j_prime;

    SpeedupError(Kind kind_, int j_, int j_prime_, const std::string& msg)
        : ValidationError(msg), kind(kind_), j(j_), j_prime(j_prime_) {}
};

// No admissible (frequency, core-count) combination exists, or an
// operation was asked to run at an infeasible operating point.
struct InfeasibleError : Error {
    using Error::Error;
};

// Random generation gave up after exhausting its discard budget.
struct GenerationExhausted : Error {
    using Error::Error;
};

// Filesystem-level failure (open/read/write).
struct IoError : Error {
    using Error::Error;
};

}  // namespace gangfreq
