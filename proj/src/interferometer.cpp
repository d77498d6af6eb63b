#include "qfall/interferometer.hpp"

#include <stdexcept>

namespace qfall {

namespace {

void check_config(const AIConfig& cfg) {
    if (!(cfg.k > 0.0) || !(cfg.t >= 0.0) || !(cfg.m > 0.0) || !(cfg.hbar > 0.0) ||
        !(cfg.g >= 0.0) || !(cfg.R > 0.0))
        throw std::invalid_argument("AIConfig fields must be positive (g and t may be zero)");
}

}  // namespace

PhaseBreakdown phase_budget(const AIConfig& cfg, const StateMoments& moments) {
    check_config(cfg);
    const double t = cfg.t;
    const double t2 = t * t;
    const double R = cfg.R;
    const double vx = moments.mean_v.x;
    const double vx2 = moments.second_v.x;

    PhaseBreakdown p;
    p.theta0 = cfg.g * cfg.k * t2;
    p.theta_prime = 7.0 * p.theta0 * cfg.g * t2 / (6.0 * R) -
                    p.theta0 * cfg.hbar * cfg.k * t / (cfg.m * R);
    p.theta_vx = 2.0 * p.theta0 * t * vx / R;
    p.theta_vx2 = 7.0 * cfg.g * cfg.k * t2 * t2 * vx2 / (2.0 * R * R);
    p.ratio_vx2_over_0 = 7.0 * t2 * vx2 / (2.0 * R * R);
    p.ratio_vx2_over_vx = 7.0 * t * vx2 / (4.0 * R * vx);
    return p;
}

PhaseBreakdown phase_budget_magnetic(double g_b, double R, const AIConfig& cfg,
                                     const StateMoments& moments) {
    AIConfig analog = cfg;
    analog.g = g_b;
    analog.R = R;
    return phase_budget(analog, moments);
}

CommutatorCoefficients commutator_coefficients(const AIConfig& cfg) {
    check_config(cfg);
    const double t = cfg.t;
    const double t3 = t * t * t;
    const double hm = cfg.hbar / cfg.m;
    CommutatorCoefficients c;
    c.c01 = -(2.0 / 3.0) * cfg.g * t3 * hm;
    c.c02_affine = {2.0 * cfg.g * t3 * hm, 0.5 * cfg.g * t3 * t * hm,
                    -(7.0 / 30.0) * cfg.g * cfg.g * t3 * t * t * hm};
    c.c002 = 1.5 * cfg.g * t3 * t * hm * hm;
    return c;
}

}  // namespace qfall
