#pragma once

#include <cstdint>
#include <vector>

#include "qfall/moments.hpp"
#include "qfall/potential.hpp"
#include "qfall/trajectory.hpp"

namespace qfall {

/// Parameters of the initial 1-D Gaussian phase-space distribution.  Nonzero
/// means generalize the zero-mean form: they shift xi by (x - mean_x - mean_v t).
struct GaussianState1D {
    double sigma_x;
    double sigma_v;
    double mean_x = 0.0;
    double mean_v = 0.0;
};

/// f(x, v_x, 0) = exp[-(x-x0)^2/2sx^2 - (v-v0)^2/2sv^2] / (2 pi sx sv).
double f_initial(const GaussianState1D& s, double x, double v_x);

/// Shear-map propagation under uniform gravity:
/// f(x, v_x, t) = f_initial(x - v_x t - g t^2/2, v_x + g t).
double f_uniform(const GaussianState1D& s, double x, double v_x, double g, double t);

/// xi(x, t) = (x - x0 - v0 t + g t^2/2) / sqrt(sx^2 + sv^2 t^2).
double xi(const GaussianState1D& s, double x, double g, double t);

/// Closed-form x-marginal under uniform gravity:
/// P_u = exp(-xi^2/2) / sqrt(2 pi (sx^2 + sv^2 t^2)).
double p_uniform(const GaussianState1D& s, double x, double g, double t);

/// Analytic third x-derivative of p_uniform.
double p_uniform_d3x(const GaussianState1D& s, double x, double g, double t);

/// Characteristic density P0 = g hbar^2 / (16 R^2 m^2 sigma_v^4).
double p0(double sigma_v, double g, double R, double m, double hbar);

/// Dynamical quantum correction to the x-marginal:
/// P_q = P0 t^4 (xi^3 - 3 xi) exp(-xi^2/2) / ([(sx/sv)^2 + t^2]^2 sqrt(2 pi)).
/// Guards sigma_v against the configurable floor (P0 diverges as sigma_v^-4).
double p_quantum(const GaussianState1D& s, double x, double g, double R, double m, double hbar,
                 double t, double sigma_v_floor = 1e-12);

/// The same correction through the dynamical identity
/// P_q = -(eps_q t^4 / 4) d^3 P_u / dx^3.
double p_quantum_from_epsilon(double eps_q, double t, double d3p_u);

struct MomentIntegrals {
    double m0;  // integral of P_q
    double m1;  // integral of x P_q
    double m2;  // integral of x^2 P_q
    double m3;  // integral of x^3 P_q
};

/// Adaptive quadrature of x^n P_q(x, t); n = 0..2 vanish identically and
/// n = 3 equals (3/2) eps_q t^4.
MomentIntegrals pq_moments(const GaussianState1D& s, double g, double R, double m, double hbar,
                           double t);

/// Histogram estimate of the position density at time t.
struct DensityProfile {
    std::vector<double> x;        // bin centers (m)
    std::vector<double> density;  // 1/m
    double t;
    double sample_mean;       // mean of the raw x samples
    double sample_std_error;  // its standard error
};

/// Monte Carlo realization of the classical density: Gaussian initial
/// conditions, exact trajectories, histogram of x(t).  Deterministic per
/// seed.  Bins default to mean +- 6 spread when x_bins describes only the
/// count; density is count / (n_samples * bin width).
DensityProfile classical_density_mc(const GravityModel& model, const GaussianState3D& state,
                                    double t, std::size_t x_bins, std::size_t n_samples,
                                    std::uint64_t seed, const IntegratorOptions& opt = {});

}  // namespace qfall
