#include "poldm/steering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace poldm {

double deg2rad(double degrees) {
    return degrees * (std::numbers::pi / 180.0);
}

double wrap_degrees_180(double degrees) {
    double wrapped = std::fmod(degrees + 180.0, 360.0);
    if (wrapped < 0.0)
        wrapped += 360.0;
    return wrapped - 180.0;
}

double wrap_degrees_360(double degrees) {
    double wrapped = std::fmod(degrees, 360.0);
    if (wrapped < 0.0)
        wrapped += 360.0;
    return wrapped;
}

ArrayGeometry ArrayGeometry::uniform(std::size_t elements, double spacing_wavelengths) {
    if (elements < 1)
        throw std::invalid_argument("array must have at least one element");
    if (elements > 1 && spacing_wavelengths <= 0.0)
        throw std::invalid_argument("element spacing must be positive");
    ArrayGeometry geometry;
    geometry.positions.resize(elements);
    for (std::size_t n = 0; n < elements; ++n)
        geometry.positions[n] = static_cast<double>(n) * spacing_wavelengths;
    return geometry;
}

void ArrayGeometry::validate() const {
    if (positions.empty())
        throw std::invalid_argument("array must have at least one element");
    if (positions.front() != 0.0)
        throw std::invalid_argument("first element must sit at the origin");
    for (std::size_t n = 1; n < positions.size(); ++n) {
        if (!(positions[n] > positions[n - 1]))
            throw std::invalid_argument("element positions must be strictly increasing");
        if (!std::isfinite(positions[n]))
            throw std::invalid_argument("element positions must be finite");
    }
}

Direction::Direction(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= 180.0))
        throw std::invalid_argument("theta_deg must lie in [0, 180], got " + std::to_string(theta));
    theta_deg = theta;
    phi_deg = wrap_degrees_360(phi);
}

PolarisationState::PolarisationState(double gamma, double eta) {
    if (!(gamma >= 0.0 && gamma <= 90.0))
        throw std::invalid_argument("gamma_deg must lie in [0, 90], got " + std::to_string(gamma));
    if (!(eta >= -180.0 && eta < 180.0))
        throw std::invalid_argument("eta_deg must lie in [-180, 180), got " + std::to_string(eta));
    gamma_deg = gamma;
    eta_deg = eta;
}

Eigen::VectorXcd spatial_steering(const ArrayGeometry& geometry, const Direction& dir) {
    geometry.validate();
    const double theta = deg2rad(dir.theta_deg);
    const double phi = deg2rad(dir.phi_deg);
    const double spatial_frequency = 2.0 * std::numbers::pi * std::sin(theta) * std::sin(phi);

    const auto n = static_cast<Eigen::Index>(geometry.size());
    Eigen::VectorXcd steering(n);
    for (Eigen::Index i = 0; i < n; ++i)
        steering(i) = std::polar(1.0, -spatial_frequency * geometry.positions[static_cast<std::size_t>(i)]);
    return steering;
}

PolarisationComponents polarisation_vector(const Direction& dir, const PolarisationState& pol) {
    const double theta = deg2rad(dir.theta_deg);
    const double phi = deg2rad(dir.phi_deg);
    const double gamma = deg2rad(pol.gamma_deg);
    const double eta = deg2rad(pol.eta_deg);

    const cdouble tilt = std::polar(std::sin(gamma), eta) * std::cos(theta);
    return {
        .x = -std::sin(phi) * std::cos(gamma) + std::cos(phi) * tilt,
        .y = std::cos(phi) * std::cos(gamma) + std::sin(phi) * tilt,
    };
}

Eigen::VectorXcd full_steering(const ArrayGeometry& geometry, const Direction& dir,
                               const PolarisationState& pol) {
    const Eigen::VectorXcd spatial = spatial_steering(geometry, dir);
    const PolarisationComponents components = polarisation_vector(dir, pol);

    const Eigen::Index n = spatial.size();
    Eigen::VectorXcd stacked(2 * n);
    stacked.head(n) = components.x * spatial;
    stacked.tail(n) = components.y * spatial;
    return stacked;
}

}  // namespace poldm
