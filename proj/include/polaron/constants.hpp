#pragma once

namespace polaron::constants {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double pi = 3.14159265358979323846;

}  // namespace polaron::constants
