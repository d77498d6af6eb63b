#include "qfall/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qfall/rng.hpp"

namespace qfall {

double SampleStream::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

namespace {

void check_axis(double mean, double second) {
    if (second < mean * mean - 1e-12 * std::max(second, mean * mean))
        throw std::invalid_argument("StateMoments: raw second moment below squared mean");
}

}  // namespace

StateMoments make_moments(const Vec3& mean_r, const Vec3& mean_v, const Vec3& second_r,
                          const Vec3& second_v, const Vec3& sym_rv) {
    const double mr[3] = {mean_r.x, mean_r.y, mean_r.z};
    const double mv[3] = {mean_v.x, mean_v.y, mean_v.z};
    const double sr[3] = {second_r.x, second_r.y, second_r.z};
    const double sv[3] = {second_v.x, second_v.y, second_v.z};
    const double srv[3] = {sym_rv.x, sym_rv.y, sym_rv.z};
    for (int a = 0; a < 3; ++a) {
        check_axis(mr[a], sr[a]);
        check_axis(mv[a], sv[a]);
        const double var_x = sr[a] - mr[a] * mr[a];
        const double var_v = sv[a] - mv[a] * mv[a];
        const double cov = srv[a] - mr[a] * mv[a];
        const double bound = std::sqrt(std::max(var_x, 0.0) * std::max(var_v, 0.0));
        if (std::abs(cov) > bound * (1.0 + 1e-9) + 1e-300)
            throw std::invalid_argument("StateMoments: |cov(x, v_x)| must be <= sigma_x sigma_v");
    }
    return StateMoments{mean_r, mean_v, second_r, second_v, sym_rv};
}

StateMoments gaussian_moments(const GaussianState3D& s) {
    auto second = [](const Vec3& sigma, const Vec3& mean) {
        return Vec3{sigma.x * sigma.x + mean.x * mean.x, sigma.y * sigma.y + mean.y * mean.y,
                    sigma.z * sigma.z + mean.z * mean.z};
    };
    if (!(s.sigma_r.x > 0.0) || !(s.sigma_r.y > 0.0) || !(s.sigma_r.z > 0.0) ||
        !(s.sigma_v.x > 0.0) || !(s.sigma_v.y > 0.0) || !(s.sigma_v.z > 0.0))
        throw std::invalid_argument("gaussian_moments: standard deviations must be positive");
    const Vec3 sym{s.mean_r.x * s.mean_v.x, s.mean_r.y * s.mean_v.y, s.mean_r.z * s.mean_v.z};
    return StateMoments{s.mean_r, s.mean_v, second(s.sigma_r, s.mean_r),
                        second(s.sigma_v, s.mean_v), sym};
}

StateMoments gaussian_moments(double sigma_x, double sigma_v, const Vec3& mean_r,
                              const Vec3& mean_v) {
    return gaussian_moments(GaussianState3D{{sigma_x, sigma_x, sigma_x},
                                            {sigma_v, sigma_v, sigma_v},
                                            mean_r,
                                            mean_v});
}

double positional_average(const StateMoments& m, double g, double R, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("positional_average: t must be >= 0");
    if (!(R > 0.0)) throw std::invalid_argument("positional_average: R must be > 0");
    // Independent realization of the coefficient polynomials; deliberately
    // not shared with trajectory.cpp so the two routes cross-check.
    const double gt2 = g * t * t;
    const double u = gt2 / R;
    const double w = u / R;  // g t^2 / R^2
    const double alpha = 1.0 + u * (1.0 + (5.0 / 12.0) * u);
    const double beta = t * (1.0 + u * (1.0 / 3.0 + (11.0 / 60.0) * u));
    const double gamma = 0.5 * gt2 * (1.0 + u * (1.0 / 6.0 + (11.0 / 180.0) * u));
    const double alpha_t = 0.75 * w;
    const double beta_t = 0.125 * w * t * t;
    const double gamma_t = 0.5 * w * t;

    const double qr = 2.0 * m.second_r.x - m.second_r.y - m.second_r.z;
    const double qv = 2.0 * m.second_v.x - m.second_v.y - m.second_v.z;
    return alpha * m.mean_r.x + beta * m.mean_v.x - gamma - alpha_t * qr - beta_t * qv -
           2.0 * gamma_t * m.sym_rv.x + gamma_t * (m.sym_rv.y + m.sym_rv.z);
}

MonteCarloResult monte_carlo_average(const GravityModel& model, const GaussianState3D& state,
                                     double t, std::size_t n_samples, std::uint64_t seed,
                                     const IntegratorOptions& opt) {
    if (n_samples < 1000)
        throw std::invalid_argument("monte_carlo_average: n_samples must be >= 1e3");
    const double g = model.g();
    const double inv_R = model.inv_R();
    const double times[1] = {t};

    // Welford accumulation of the per-sample nonlinear remainder
    // x_num(t) - x0(t) - x1(t)/R.
    double mean_w = 0.0;
    double m2_w = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i);
        InitialConditions ic;
        ic.r = {state.mean_r.x + state.sigma_r.x * rng.normal(),
                state.mean_r.y + state.sigma_r.y * rng.normal(),
                state.mean_r.z + state.sigma_r.z * rng.normal()};
        ic.v = {state.mean_v.x + state.sigma_v.x * rng.normal(),
                state.mean_v.y + state.sigma_v.y * rng.normal(),
                state.mean_v.z + state.sigma_v.z * rng.normal()};
        const auto sample = integrate_exact(model, ic, times, opt);
        const double w =
            sample[0].r.x - x0_term(ic, g, t) - x1_term(ic, g, t) * inv_R;
        const double delta = w - mean_w;
        mean_w += delta / static_cast<double>(i + 1);
        m2_w += delta * (w - mean_w);
    }

    // Expectation of the removed linear part, exact in the Gaussian moments.
    const double lin = (1.0 + g * t * t * inv_R) * state.mean_r.x +
                       (t + g * t * t * t * inv_R / 3.0) * state.mean_v.x -
                       (0.5 * g * t * t + g * g * t * t * t * t * inv_R / 12.0);

    const double n = static_cast<double>(n_samples);
    const double var = m2_w / (n - 1.0);
    return {lin + mean_w, std::sqrt(var / n), n_samples};
}

}  // namespace qfall
