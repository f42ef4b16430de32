#pragma once

#include <cmath>
#include <stdexcept>

// Physical constants (CODATA 2018) and SI <-> geometric (G = c = 1) unit
// conversions. Every other module is strict SI except the shell-collapse
// dynamics, which work in geometric meters; values cross that boundary only
// through the converters below.

namespace casimir::units {

inline constexpr double hbar = 1.054571817e-34; // J*s
inline constexpr double c = 2.99792458e8;       // m/s
inline constexpr double G = 6.67430e-11;        // m^3/(kg*s^2)

inline constexpr double hbar_c = hbar * c;                // J*m
inline constexpr double planck_area = hbar * G / (c * c * c); // m^2

/// Dimensionless coefficient of the isorefractive-sphere Casimir pressure.
inline constexpr double casimir_coefficient = 0.09235;

/// Schwarzschild-style mass-to-length conversion: returns G*M/c^2 in meters.
inline double mass_to_geometric(double mass_kg) {
    if (!(mass_kg > 0.0) || !std::isfinite(mass_kg))
        throw std::domain_error("mass_to_geometric: mass must be positive and finite");
    return G * mass_kg / (c * c);
}

/// Inverse of mass_to_geometric.
inline double geometric_to_mass(double length_m) {
    if (!(length_m > 0.0) || !std::isfinite(length_m))
        throw std::domain_error("geometric_to_mass: length must be positive and finite");
    return length_m * c * c / G;
}

/// Casimir constant of a singular spherical shell, C = 0.09235 hbar*c,
/// re-expressed in geometric units (dimension length^2).
inline double casimir_constant_geometric() {
    return casimir_coefficient * planck_area;
}

/// The same constant in SI units (J*m).
inline double casimir_constant_si() {
    return casimir_coefficient * hbar_c;
}

} // namespace casimir::units
