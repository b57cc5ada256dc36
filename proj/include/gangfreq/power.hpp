#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gangfreq/errors.hpp"

namespace gangfreq {

// Non-fatal shape findings reported when a power matrix is loaded. Measured
// data is accepted as-is; only the optimality-dependent properties assume a
// clean (monotone, convex) matrix.
struct PowerDiagnostic {
    enum class Kind { NotMonotoneInFrequency, NotMonotoneInCores, NotConvexInFrequency };

    Kind kind;
    int freq_index;  // 0-based row
    int cores;       // 1-based column
    std::string message;
};

// Dissipation-rate matrix over discrete physical frequencies (rows, strictly
// increasing) and active-core counts 1..core_counts() (columns), plus the
// physical frequency that corresponds to normalized 1.0.
class PowerModel {
public:
    PowerModel(std::vector<double> frequencies, std::vector<std::vector<double>> watts,
               double reference_frequency);

    // Parses the delimited matrix format:
    //   # reference_frequency = <value>
    //   freq, k=1, k=2, ...
    //   <f>, <watts>, <watts>, ...
    static PowerModel parse(std::istream& in);
    static PowerModel parse_file(const std::string& path);

    int core_counts() const { return static_cast<int>(watts_.front().size()); }
    int frequency_count() const { return static_cast<int>(frequencies_.size()); }
    const std::vector<double>& frequencies() const { return frequencies_; }
    double reference_frequency() const { return reference_frequency_; }

    double frequency(int index) const { return frequencies_[static_cast<std::size_t>(index)]; }
    double normalized(int index) const { return frequency(index) / reference_frequency_; }

    // cores is 1-based.
    double watts(int freq_index, int cores) const {
        return watts_[static_cast<std::size_t>(freq_index)][static_cast<std::size_t>(cores - 1)];
    }

    // Smallest discrete frequency whose normalized value is >= f_norm; empty
    // when f_norm exceeds the top of the range.
    std::optional<int> quantize_index(double f_norm) const;
    std::optional<double> quantize(double f_norm) const;

    const std::vector<PowerDiagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<double> frequencies_;
    std::vector<std::vector<double>> watts_;  // [freq][core-1]
    double reference_frequency_;
    std::vector<PowerDiagnostic> diagnostics_;
};

// Synthetic convex family P(f, k) = static_watts + k * (alpha * f^3 + beta),
// the stand-in for measured power maps.
PowerModel make_cubic_power_model(const std::vector<double>& frequencies, int cores,
                                  double reference_frequency, double alpha, double beta,
                                  double static_watts);

struct EnergyQuote {
    double duration;
    double watts;
    double energy;  // duration * watts
};

// Energy of running duration time units at a constant level under rate
// function `rate`.
EnergyQuote energy_at_constant_rate(double level, double duration,
                                    const std::function<double(double)>& rate);

struct DvfsComparison {
    double dynamic_energy;           // raised to level+delta, then lowered
    double constant_energy;          // held at level throughout
    double delta_prime;              // the work-preserving drop
    double work_preservation_error;  // |level - recombined level|
};

// Work-preserving two-level transformation over a unit interval: the first
// high_fraction of it runs at level+delta, the rest at level-delta_prime
// with delta_prime = high_fraction*delta/(1-high_fraction). For any convex
// rate function the dynamic variant consumes at least as much energy.
DvfsComparison compare_dvfs_energy(double level, double high_fraction, double delta,
                                   const std::function<double(double)>& rate);

}  // namespace gangfreq
