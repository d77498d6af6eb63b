#pragma once

#include <cstdint>

#include "qfall/potential.hpp"
#include "qfall/trajectory.hpp"
#include "qfall/vec3.hpp"

namespace qfall {

/// First and second moments of a particle ensemble / wave packet.  Second
/// moments are raw (not central); sym_rv holds the symmetrized correlation
/// <(x v_x + v_x x)>/2 per axis.
struct StateMoments {
    Vec3 mean_r;
    Vec3 mean_v;
    Vec3 second_r;  // <x^2>, <y^2>, <z^2>
    Vec3 second_v;  // <v_x^2>, ...
    Vec3 sym_rv;    // <(x v_x + v_x x)>/2, ...
};

/// Validates covariance positivity (<x^2> >= <x>^2 per axis, same for v,
/// |cov(x,v_x)| <= sigma_x sigma_v) and returns the moments.
StateMoments make_moments(const Vec3& mean_r, const Vec3& mean_v, const Vec3& second_r,
                          const Vec3& second_v, const Vec3& sym_rv);

/// Uncorrelated Gaussian with per-axis standard deviations.
struct GaussianState3D {
    Vec3 sigma_r;
    Vec3 sigma_v;
    Vec3 mean_r;
    Vec3 mean_v;
};

StateMoments gaussian_moments(const GaussianState3D& state);
/// Isotropic shorthand: the same sigma_x, sigma_v on each axis.
StateMoments gaussian_moments(double sigma_x, double sigma_v, const Vec3& mean_r,
                              const Vec3& mean_v);

/// Ensemble-average position along x at time t under the second-order
/// solution.  Mass never enters: the mean motion is classical.
/// R may be +infinity (uniform limit; all quadratic corrections vanish).
double positional_average(const StateMoments& m, double g, double R, double t);

struct MonteCarloResult {
    double mean;       // estimate of <x(t)>
    double std_error;  // standard error of the estimate
    std::size_t n;
};

/// Independent oracle for positional_average: draws initial conditions from
/// the Gaussian, integrates each trajectory with the exact adaptive solver,
/// and averages x(t).  The linear (zeroth- plus first-order) part of each
/// sample is removed and re-added in expectation, so the estimator's noise
/// reflects only the nonlinear physics being checked.  Deterministic for a
/// fixed seed and independent of scheduling.
MonteCarloResult monte_carlo_average(const GravityModel& model, const GaussianState3D& state,
                                     double t, std::size_t n_samples, std::uint64_t seed,
                                     const IntegratorOptions& opt = {});

}  // namespace qfall
