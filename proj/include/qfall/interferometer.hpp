#pragma once

#include <array>

#include "qfall/moments.hpp"

namespace qfall {

/// Three-pulse interferometer configuration.  The two free-fall stages have
/// equal duration t; the laser wave vector is x-aligned.
struct AIConfig {
    double k;     // 1/m
    double t;     // s, per stage
    double m;     // kg
    double hbar;  // J s
    double g;     // m/s^2
    double R;     // m (may be +infinity for uniform gravity)
};

/// Phase budget of one configuration.  theta_vx2 uses the raw second moment
/// <v_x^2>, not the variance; with <v_x> = 0 the two coincide.
struct PhaseBreakdown {
    double theta0;        // g k t^2
    double theta_prime;   // 7 theta0 g t^2 / 6R - theta0 hbar k t / (m R)
    double theta_vx;      // 2 theta0 t <v_x> / R
    double theta_vx2;     // 7 g k t^4 <v_x^2> / (2 R^2)
    double ratio_vx2_over_0;
    double ratio_vx2_over_vx;  // +inf when <v_x> = 0
};

PhaseBreakdown phase_budget(const AIConfig& cfg, const StateMoments& moments);

/// Same budget with the magnetic-analog acceleration g_b in place of g.
PhaseBreakdown phase_budget_magnetic(double g_b, double R, const AIConfig& cfg,
                                     const StateMoments& moments);

/// Scalar structures of the pulse-sequence commutators:
///   [x0, x1]       = c01 (i hbar/m),           c01 = -2 g t^3 / 3 * (hbar/m)
///   [x0, x2]       = (a x + b v_x + c)(i hbar/m), affine = (2gt^3, gt^4/2, -7g^2t^5/30)*(hbar/m)
///   [x0, [x0, x2]] = c002 (hbar/m)^2,          c002 = 3 g t^4 / 2 * (hbar/m)^2
struct CommutatorCoefficients {
    double c01;
    std::array<double, 3> c02_affine;
    double c002;
};

CommutatorCoefficients commutator_coefficients(const AIConfig& cfg);

}  // namespace qfall
