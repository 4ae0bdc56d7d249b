#include "poldm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace poldm {

namespace {

double magnitude_db(double magnitude) {
    return 20.0 * std::log10(magnitude);
}

PatternSample evaluate_sample(const Eigen::VectorXcd& weights, const DesignSpec& spec,
                              double plot_angle_deg) {
    const Direction dir = plot_angle_to_direction(plot_angle_deg);
    PatternSample sample;
    sample.plot_angle_deg = plot_angle_deg;
    sample.responses[0] = response(weights, spec.geometry, dir, spec.pol1);
    sample.responses[1] = response(weights, spec.geometry, dir, spec.pol2);
    for (int channel = 0; channel < 2; ++channel) {
        sample.magnitudes_db[channel] = magnitude_db(std::abs(sample.responses[channel]));
        sample.phases_deg[channel] =
            wrap_degrees_180(std::arg(sample.responses[channel]) * 180.0 / std::numbers::pi);
    }
    sample.composite_db = 10.0 * std::log10(std::norm(sample.responses[0]) +
                                            std::norm(sample.responses[1]));
    return sample;
}

std::vector<double> sweep_angles(double step_deg) {
    if (!(step_deg > 0.0))
        throw std::invalid_argument("sweep step must be positive");
    std::vector<double> angles;
    const auto count = static_cast<long>(std::floor(180.0 / step_deg + 1e-9)) + 1;
    angles.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        angles.push_back(-90.0 + static_cast<double>(i) * step_deg);
    return angles;
}

std::vector<PatternSample> sweep_impl(const Eigen::VectorXcd& weights, const DesignSpec& spec,
                                      double step_deg, bool parallel) {
    if (weights.size() != static_cast<Eigen::Index>(spec.weight_length()))
        throw std::invalid_argument("weight vector length does not match the array");
    const std::vector<double> angles = sweep_angles(step_deg);
    std::vector<PatternSample> samples(angles.size());

    if (parallel) {
        const auto count = static_cast<std::ptrdiff_t>(angles.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i)
            samples[static_cast<std::size_t>(i)] =
                evaluate_sample(weights, spec, angles[static_cast<std::size_t>(i)]);
    } else {
        for (std::size_t i = 0; i < angles.size(); ++i)
            samples[i] = evaluate_sample(weights, spec, angles[i]);
    }
    return samples;
}

void check_bank(const WeightSet& bank, const DesignSpec& spec) {
    if (bank.weights.size() != static_cast<std::size_t>(spec.symbol_count()))
        throw std::invalid_argument("weight bank size does not match the modulation order");
    for (const Eigen::VectorXcd& w : bank.weights)
        if (w.size() != static_cast<Eigen::Index>(spec.weight_length()))
            throw std::invalid_argument("weight vector length does not match the array");
}

DirectionPhaseStats direction_stats(const WeightSet& bank, const DesignSpec& spec,
                                    const Direction& dir, bool mainlobe) {
    DirectionPhaseStats stats;
    stats.direction = dir;
    stats.mainlobe = mainlobe;

    const PolarisationState pols[2] = {spec.pol1, spec.pol2};
    for (int channel = 0; channel < 2; ++channel) {
        const Eigen::VectorXcd steering = full_steering(spec.geometry, dir, pols[channel]);
        cdouble phasor_sum = 0.0;
        double max_mag = 0.0;
        for (const Eigen::VectorXcd& w : bank.weights) {
            const cdouble p = w.dot(steering);
            const double mag = std::abs(p);
            max_mag = std::max(max_mag, mag);
            if (mag > 0.0)
                phasor_sum += p / mag;
        }
        const double resultant =
            std::abs(phasor_sum) / static_cast<double>(bank.weights.size());
        stats.resultant_length[channel] = resultant;
        stats.circular_std_deg[channel] =
            resultant > 0.0 ? std::sqrt(-2.0 * std::log(resultant)) * 180.0 / std::numbers::pi
                            : std::numeric_limits<double>::infinity();
        stats.max_magnitude[channel] = max_mag;
    }
    return stats;
}

}  // namespace

Direction plot_angle_to_direction(double plot_angle_deg) {
    if (!(plot_angle_deg >= -90.0 && plot_angle_deg <= 90.0))
        throw std::invalid_argument("plot angle must lie in [-90, 90]");
    return plot_angle_deg < 0.0 ? Direction(-plot_angle_deg, 270.0)
                                : Direction(plot_angle_deg, 90.0);
}

cdouble response(const Eigen::VectorXcd& weights, const ArrayGeometry& geometry,
                 const Direction& dir, const PolarisationState& pol) {
    if (weights.size() != static_cast<Eigen::Index>(2 * geometry.size()))
        throw std::invalid_argument("weight vector length does not match the array");
    // Eigen's dot conjugates the left operand, giving w^H s.
    return weights.dot(full_steering(geometry, dir, pol));
}

std::vector<PatternSample> pattern_sweep(const Eigen::VectorXcd& weights, const DesignSpec& spec,
                                         double step_deg) {
    return sweep_impl(weights, spec, step_deg, true);
}

std::vector<PatternSample> pattern_sweep_serial(const Eigen::VectorXcd& weights,
                                                const DesignSpec& spec, double step_deg) {
    return sweep_impl(weights, spec, step_deg, false);
}

std::vector<std::array<cdouble, 2>> constellation_at(const WeightSet& bank, const DesignSpec& spec,
                                                     const Direction& dir) {
    check_bank(bank, spec);
    const Eigen::VectorXcd steering1 = full_steering(spec.geometry, dir, spec.pol1);
    const Eigen::VectorXcd steering2 = full_steering(spec.geometry, dir, spec.pol2);

    std::vector<std::array<cdouble, 2>> points;
    points.reserve(bank.weights.size());
    for (const Eigen::VectorXcd& w : bank.weights)
        points.push_back({w.dot(steering1), w.dot(steering2)});
    return points;
}

std::vector<DirectionPhaseStats> scrambling_report(const WeightSet& bank, const DesignSpec& spec) {
    check_bank(bank, spec);
    std::vector<DirectionPhaseStats> report;
    report.reserve(spec.mainlobe_dirs.size() + spec.sidelobe_dirs.size());
    for (const Direction& dir : spec.mainlobe_dirs)
        report.push_back(direction_stats(bank, spec, dir, true));
    for (const Direction& dir : spec.sidelobe_dirs)
        report.push_back(direction_stats(bank, spec, dir, false));
    return report;
}

void write_pattern_csv(std::ostream& out, const std::vector<int>& symbols,
                       const std::vector<std::vector<PatternSample>>& sweeps) {
    if (symbols.size() != sweeps.size())
        throw std::invalid_argument("one symbol id required per sweep");
    if (sweeps.empty())
        throw std::invalid_argument("nothing to write");
    const std::size_t rows = sweeps.front().size();
    for (const auto& sweep : sweeps)
        if (sweep.size() != rows)
            throw std::invalid_argument("all sweeps must share one angle grid");

    std::vector<std::size_t> order(sweeps.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return symbols[a] < symbols[b]; });

    out << "plot_angle_deg,symbol,channel,mag_db,phase_deg,composite_db\n";
    char line[160];
    for (std::size_t row = 0; row < rows; ++row)
        for (std::size_t s : order) {
            const PatternSample& sample = sweeps[s][row];
            for (int channel = 0; channel < 2; ++channel) {
                std::snprintf(line, sizeof(line), "%.6f,%d,%d,%.6f,%.6f,%.6f\n",
                              sample.plot_angle_deg, symbols[s], channel + 1,
                              sample.magnitudes_db[channel], sample.phases_deg[channel],
                              sample.composite_db);
                out << line;
            }
        }
}

}  // namespace poldm
