#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "poldm/design_spec.hpp"
#include "poldm/synthesis.hpp"

namespace poldm {

// One point of a beam-pattern cut. The signed plot angle folds the two
// azimuth cuts onto one axis: nonnegative angles sample phi = 90 degrees,
// negative angles phi = 270 degrees, with theta = |plot_angle|.
struct PatternSample {
    double plot_angle_deg = 0.0;
    std::array<cdouble, 2> responses{};    // channel 1 (pol1), channel 2 (pol2)
    std::array<double, 2> magnitudes_db{};
    std::array<double, 2> phases_deg{};    // in [-180, 180)
    double composite_db = 0.0;             // 20*log10 sqrt(|p1|^2 + |p2|^2)
};

Direction plot_angle_to_direction(double plot_angle_deg);

// w^H s(direction, polarisation).
cdouble response(const Eigen::VectorXcd& weights, const ArrayGeometry& geometry,
                 const Direction& dir, const PolarisationState& pol);

// Samples both polarisation channels from -90 to +90 degrees inclusive.
// The parallel variant distributes angles across OpenMP threads and matches
// the serial reference bit for bit.
std::vector<PatternSample> pattern_sweep(const Eigen::VectorXcd& weights, const DesignSpec& spec,
                                         double step_deg);
std::vector<PatternSample> pattern_sweep_serial(const Eigen::VectorXcd& weights,
                                                const DesignSpec& spec, double step_deg);

// Responses of every composite symbol at one direction, channel 1 then 2.
std::vector<std::array<cdouble, 2>> constellation_at(const WeightSet& bank, const DesignSpec& spec,
                                                     const Direction& dir);

// Phase-dispersion statistics of the designed responses at one direction.
struct DirectionPhaseStats {
    Direction direction;
    bool mainlobe = false;
    std::array<double, 2> resultant_length{};    // |mean of unit phasors|, 0 = fully spread
    std::array<double, 2> circular_std_deg{};    // sqrt(-2 ln R), infinity at R = 0
    std::array<double, 2> max_magnitude{};
};

// Statistics over all mainlobe (for reference) and sidelobe directions,
// quantifying how thoroughly the sidelobe phases are scrambled.
std::vector<DirectionPhaseStats> scrambling_report(const WeightSet& bank, const DesignSpec& spec);

// CSV with header plot_angle_deg,symbol,channel,mag_db,phase_deg,composite_db,
// one row per (angle, symbol, channel), six decimal places, rows ordered by
// angle, then symbol, then channel. All sweeps must share one angle grid.
void write_pattern_csv(std::ostream& out, const std::vector<int>& symbols,
                       const std::vector<std::vector<PatternSample>>& sweeps);

}  // namespace poldm
