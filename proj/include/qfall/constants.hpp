#pragma once

namespace qfall::constants {

// CODATA-style defaults.  The named scenarios in presets.hpp carry their own
// rounded values (G = 6.67e-11, hbar = 1.0546e-34) so the quoted scenario
// numbers come out exactly.
inline constexpr double gravitational = 6.674e-11;     // m^3 kg^-1 s^-2
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace qfall::constants
