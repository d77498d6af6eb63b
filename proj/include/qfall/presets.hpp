#pragma once

#include <string>
#include <vector>

#include "qfall/interferometer.hpp"
#include "qfall/moments.hpp"
#include "qfall/potential.hpp"

namespace qfall {

// Rounded constants used by the named scenarios so the quoted numbers come
// out exactly.
inline constexpr double preset_G = 6.67e-11;
inline constexpr double preset_hbar = 1.0546e-34;
inline constexpr double preset_atom_mass = 1e-25;        // kg
inline constexpr double preset_wavelength = 500e-9;      // m
inline constexpr std::uint64_t default_seed = 987654321;

/// One named interferometer scenario: the configuration plus the reference
/// velocity spread sqrt(<v_x^2>) = 0.1 hbar k / m.
struct PhaseScenario {
    std::string name;
    AIConfig cfg;
    double v_rms;

    StateMoments moments() const;
};

/// Presets: "earth", "satellite-1000kg", "satellite-100kg", "magnetic".
/// Throws std::invalid_argument for unknown names.
PhaseScenario phase_preset(const std::string& name);
std::vector<std::string> phase_preset_names();

/// The point-source scenario behind the trajectory and density studies:
/// M = 1e3 kg sphere, R = 1.5 m, surface radius R_s = 1 m.
GravitySource microgravity_source();

/// Trap-release Gaussian used by the density studies.
struct WignerScenario {
    double sigma_x;  // m
    double sigma_v;  // m/s
    double m;        // kg
    double hbar;
    GravitySource source;
};

WignerScenario wigner_default_scenario();

}  // namespace qfall
