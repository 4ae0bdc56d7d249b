#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace poldm {

using cdouble = std::complex<double>;

double deg2rad(double degrees);

// Wraps an angle into [-180, 180).
double wrap_degrees_180(double degrees);

// Wraps an angle into [0, 360).
double wrap_degrees_360(double degrees);

// Element displacements along the array axis, in wavelengths.
// Element 0 sits at the origin; positions must be strictly increasing.
struct ArrayGeometry {
    std::vector<double> positions{0.0};

    static ArrayGeometry uniform(std::size_t elements, double spacing_wavelengths);

    std::size_t size() const { return positions.size(); }
    void validate() const;
};

// Propagation direction. Elevation theta in [0, 180] degrees, azimuth phi
// stored normalized to [0, 360) degrees (an input of -90 maps to 270).
struct Direction {
    double theta_deg = 0.0;
    double phi_deg = 0.0;

    Direction() = default;
    Direction(double theta, double phi);
};

// Transmit polarisation: auxiliary polarisation angle gamma in [0, 90] degrees
// and polarisation phase difference eta in [-180, 180) degrees.
struct PolarisationState {
    double gamma_deg = 0.0;
    double eta_deg = 0.0;

    PolarisationState() = default;
    PolarisationState(double gamma, double eta);
};

struct PolarisationComponents {
    cdouble x;
    cdouble y;
};

// Per-element phase response toward a direction; entry n is
// exp(-j*2*pi*d_n*sin(theta)*sin(phi)) with d_n in wavelengths.
Eigen::VectorXcd spatial_steering(const ArrayGeometry& geometry, const Direction& dir);

// Coupling of a polarisation state onto the x- and y-dipole channels.
PolarisationComponents polarisation_vector(const Direction& dir, const PolarisationState& pol);

// Stacked 2N-element steering vector: x-dipole block followed by y-dipole
// block, matching the weight-vector layout.
Eigen::VectorXcd full_steering(const ArrayGeometry& geometry, const Direction& dir,
                               const PolarisationState& pol);

}  // namespace poldm
