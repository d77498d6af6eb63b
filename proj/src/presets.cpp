#include "qfall/presets.hpp"

#include <stdexcept>

#include "qfall/constants.hpp"

namespace qfall {

StateMoments PhaseScenario::moments() const {
    // Zero-mean ensemble whose raw <v_x^2> is v_rms^2; the position spread is
    // immaterial for the budget, a nominal micron-scale value is used.
    return gaussian_moments(1e-6, v_rms, {0, 0, 0}, {0, 0, 0});
}

PhaseScenario phase_preset(const std::string& name) {
    const double k = 2.0 * constants::pi / preset_wavelength;
    const double m = preset_atom_mass;
    const double hbar = preset_hbar;
    const double v_rms = 0.1 * hbar * k / m;

    if (name == "earth") {
        AIConfig cfg{k, 1.0, m, hbar, 9.8, 6.4e6};
        return {name, cfg, v_rms};
    }
    if (name == "satellite-1000kg") {
        const GravitySource src = make_source(preset_G, 1e3, 1.5);
        AIConfig cfg{k, 10.0, m, hbar, src.g(), src.R};
        return {name, cfg, v_rms};
    }
    if (name == "satellite-100kg") {
        const GravitySource src = make_source(preset_G, 100.0, 1.5);
        AIConfig cfg{k, 10.0, m, hbar, src.g(), src.R};
        return {name, cfg, v_rms};
    }
    if (name == "magnetic") {
        AIConfig cfg{k, 0.1, m, hbar, 0.1, 0.1};
        return {name, cfg, v_rms};
    }
    throw std::invalid_argument("unknown phase preset: " + name);
}

std::vector<std::string> phase_preset_names() {
    return {"earth", "satellite-1000kg", "satellite-100kg", "magnetic"};
}

GravitySource microgravity_source() { return make_source(preset_G, 1e3, 1.5); }

WignerScenario wigner_default_scenario() {
    return {2.3e-6, 2.3e-4, preset_atom_mass, preset_hbar, microgravity_source()};
}

}  // namespace qfall
