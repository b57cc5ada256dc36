#include "gangfreq/power.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gangfreq {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    return fields;
}

double parse_real(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        const double value = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(value)) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ValidationError(std::string("power matrix: malformed ") + what + " '" + text + "'");
    }
}

}  // namespace

PowerModel::PowerModel(std::vector<double> frequencies, std::vector<std::vector<double>> watts,
                       double reference_frequency)
    : frequencies_(std::move(frequencies)),
      watts_(std::move(watts)),
      reference_frequency_(reference_frequency) {
    if (frequencies_.empty() || watts_.size() != frequencies_.size())
        throw ValidationError("power matrix: one watts row per frequency required");
    if (!(reference_frequency_ > 0.0))
        throw ValidationError("power matrix: reference frequency must be positive");

    const std::size_t cores = watts_.front().size();
    if (cores == 0) throw ValidationError("power matrix: at least one core column required");

    for (std::size_t r = 0; r < watts_.size(); ++r) {
        if (r > 0 && !(frequencies_[r] > frequencies_[r - 1]))
            throw ValidationError("power matrix: frequencies must be strictly increasing");
        if (!(frequencies_[r] > 0.0))
            throw ValidationError("power matrix: frequencies must be positive");
        if (watts_[r].size() != cores)
            throw ValidationError("power matrix: ragged row (missing cell)");
        for (double w : watts_[r])
            if (!(w > 0.0) || !std::isfinite(w))
                throw ValidationError("power matrix: watts must be positive");
    }

    // Shape diagnostics. Reported, never rejected: measured data may dip.
    auto note = [&](PowerDiagnostic::Kind kind, int r, int k, const char* text) {
        std::ostringstream msg;
        msg << text << " at frequency " << frequencies_[static_cast<std::size_t>(r)]
            << ", cores " << k;
        diagnostics_.push_back({kind, r, k, msg.str()});
    };
    const int nf = frequency_count();
    const int nk = core_counts();
    auto cell = [&](int r, int k) {
        return watts_[static_cast<std::size_t>(r)][static_cast<std::size_t>(k - 1)];
    };
    for (int k = 1; k <= nk; ++k) {
        for (int r = 1; r < nf; ++r)
            if (cell(r, k) < cell(r - 1, k))
                note(PowerDiagnostic::Kind::NotMonotoneInFrequency, r, k,
                     "power decreases with frequency");
        for (int r = 1; r + 1 < nf; ++r) {
            // Convexity on a possibly non-uniform frequency grid.
            const double df1 = frequency(r) - frequency(r - 1);
            const double df2 = frequency(r + 1) - frequency(r);
            const double slope1 = (cell(r, k) - cell(r - 1, k)) / df1;
            const double slope2 = (cell(r + 1, k) - cell(r, k)) / df2;
            if (slope2 < slope1 - 1e-9 * std::abs(slope1))
                note(PowerDiagnostic::Kind::NotConvexInFrequency, r, k,
                     "power is not convex in frequency");
        }
    }
    for (int r = 0; r < nf; ++r)
        for (int k = 2; k <= nk; ++k)
            if (cell(r, k) < cell(r, k - 1))
                note(PowerDiagnostic::Kind::NotMonotoneInCores, r, k,
                     "power decreases with active cores");
}

PowerModel PowerModel::parse(std::istream& in) {
    std::optional<double> reference;
    std::vector<double> frequencies;
    std::vector<std::vector<double>> watts;
    int expected_cores = -1;
    bool header_seen = false;

    std::string line;
    while (std::getline(in, line)) {
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            const auto eq = text.find('=');
            if (text.find("reference_frequency") != std::string::npos &&
                eq != std::string::npos)
                reference = parse_real(trim(text.substr(eq + 1)), "reference frequency");
            continue;
        }
        const std::vector<std::string> fields = split_fields(text);
        if (!header_seen) {
            if (fields.size() < 2 || fields[0] != "freq")
                throw ValidationError("power matrix: header row 'freq, k=1, ...' required");
            for (std::size_t k = 1; k < fields.size(); ++k) {
                std::ostringstream expect;
                expect << "k=" << k;
                if (fields[k] != expect.str())
                    throw ValidationError("power matrix: header columns must be k=1..m in order");
            }
            expected_cores = static_cast<int>(fields.size()) - 1;
            header_seen = true;
            continue;
        }
        if (static_cast<int>(fields.size()) != expected_cores + 1)
            throw ValidationError("power matrix: row has wrong number of cells");
        frequencies.push_back(parse_real(fields[0], "frequency"));
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(expected_cores));
        for (int k = 1; k <= expected_cores; ++k)
            row.push_back(parse_real(fields[static_cast<std::size_t>(k)], "watts value"));
        watts.push_back(std::move(row));
    }

    if (!header_seen) throw ValidationError("power matrix: empty document");
    if (!reference)
        throw ValidationError("power matrix: '# reference_frequency = <value>' line required");
    return PowerModel(std::move(frequencies), std::move(watts), *reference);
}

PowerModel PowerModel::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open power matrix file '" + path + "'");
    return parse(in);
}

std::optional<int> PowerModel::quantize_index(double f_norm) const {
    if (!(f_norm > 0.0)) throw ValidationError("quantize: frequency must be positive");
    for (int i = 0; i < frequency_count(); ++i)
        if (normalized(i) >= f_norm) return i;
    return std::nullopt;
}

std::optional<double> PowerModel::quantize(double f_norm) const {
    const std::optional<int> index = quantize_index(f_norm);
    if (!index) return std::nullopt;
    return frequency(*index);
}

PowerModel make_cubic_power_model(const std::vector<double>& frequencies, int cores,
                                  double reference_frequency, double alpha, double beta,
                                  double static_watts) {
    std::vector<std::vector<double>> watts;
    watts.reserve(frequencies.size());
    for (double f : frequencies) {
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(cores));
        for (int k = 1; k <= cores; ++k)
            row.push_back(static_watts + k * (alpha * f * f * f + beta));
        watts.push_back(std::move(row));
    }
    return PowerModel(frequencies, std::move(watts), reference_frequency);
}

EnergyQuote energy_at_constant_rate(double level, double duration,
                                    const std::function<double(double)>& rate) {
    if (!(level > 0.0)) throw ValidationError("energy: level must be positive");
    if (!(duration > 0.0)) throw ValidationError("energy: duration must be positive");
    const double watts = rate(level);
    return {duration, watts, duration * watts};
}

DvfsComparison compare_dvfs_energy(double level, double high_fraction, double delta,
                                   const std::function<double(double)>& rate) {
    if (!(level > 0.0)) throw ValidationError("dvfs comparison: level must be positive");
    if (!(high_fraction > 0.0) || !(high_fraction < 1.0))
        throw ValidationError("dvfs comparison: fraction must lie strictly in (0, 1)");
    if (!(delta > 0.0)) throw ValidationError("dvfs comparison: delta must be positive");

    const double delta_prime = high_fraction * delta / (1.0 - high_fraction);
    if (!(level - delta_prime > 0.0))
        throw ValidationError("dvfs comparison: lowered level must stay positive");

    const double recombined =
        high_fraction * (level + delta) + (1.0 - high_fraction) * (level - delta_prime);
    const double dynamic =
        high_fraction * rate(level + delta) + (1.0 - high_fraction) * rate(level - delta_prime);
    return {dynamic, rate(level), delta_prime, std::abs(level - recombined)};
}

}  // namespace gangfreq
