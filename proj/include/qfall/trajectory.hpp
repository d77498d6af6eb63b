#pragma once

#include <span>
#include <vector>

#include "qfall/potential.hpp"
#include "qfall/vec3.hpp"

namespace qfall {

struct InitialConditions {
    Vec3 r;  // m
    Vec3 v;  // m/s
};

/// Time-dependent coefficients of the second-order free-fall solution
///   x(t) = alpha x_i + beta v_xi - gamma
///          - alpha_t (2x_i^2 - y_i^2 - z_i^2)
///          - beta_t  (2v_xi^2 - v_yi^2 - v_zi^2)
///          - gamma_t (2x_i v_xi - y_i v_yi - z_i v_zi).
struct PerturbativeCoefficients {
    double alpha;    // dimensionless
    double beta;     // s
    double gamma;    // m
    double alpha_t;  // 1/m
    double beta_t;   // s^2/m
    double gamma_t;  // s/m
};

/// R may be +infinity, which gives the uniform-gravity limit
/// (alpha, beta, gamma, 0, 0, 0) = (1, t, g t^2/2, 0, 0, 0).
PerturbativeCoefficients perturbative_coefficients(double g, double R, double t);

/// Order-(1/R)^0 part: x_i + v_xi t - g t^2/2.
double x0_term(const InitialConditions& ic, double g, double t);
/// Order-(1/R)^1 part (to be divided by R): g t^2 (x_i + v_xi t/3 - g t^2/12).
double x1_term(const InitialConditions& ic, double g, double t);
/// Order-(1/R)^2 part (to be divided by R^2).
double x2_term(const InitialConditions& ic, double g, double t);
/// Full second-order solution x0 + x1/R + x2/R^2 via the coefficient form.
double x_perturbative(const InitialConditions& ic, double g, double R, double t);

struct TrajectorySample {
    double t;
    Vec3 r;
    Vec3 v;
};

struct IntegratorOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;  // 0 -> 1e-15 * R (1e-15 for uniform models)
    double h_max = 0.0;    // seconds; 0 -> span/16
};

/// Adaptive high-precision solution of d^2 r/dt^2 = acceleration(model, r).
/// Internally integrates the deviation from the uniform-gravity reference
/// x0(t) in coordinates scaled by R and sqrt(R/g), so residuals against the
/// reference stay meaningful far below double precision on |r| itself.
/// `times` must be sorted, nonnegative; one sample is emitted per entry.
std::vector<TrajectorySample> integrate_exact(const GravityModel& model,
                                              const InitialConditions& ic,
                                              std::span<const double> times,
                                              const IntegratorOptions& opt = {});

struct ResidualSample {
    double t;
    double analytic;  // x2(t)/R^2 from the closed-form solution
    double numeric;   // x_num(t) - x0(t) - x1(t)/R
};

/// The second-order residual comparison: integrates the exact model and
/// subtracts the zeroth- and first-order solutions from both routes.
std::vector<ResidualSample> second_order_residual(const GravityModel& model,
                                                  const InitialConditions& ic,
                                                  std::span<const double> times,
                                                  const IntegratorOptions& opt = {});

/// n >= 2 evenly spaced values covering [a, b].
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace qfall
