#include "qfall/wigner.hpp"

#include <cmath>
#include <stdexcept>

#include "qfall/constants.hpp"
#include "qfall/quadrature.hpp"
#include "qfall/rng.hpp"

namespace qfall {

namespace {
constexpr double sqrt_two_pi = 2.5066282746310005024157652848110;

void check_state(const GaussianState1D& s) {
    if (!(s.sigma_x > 0.0) || !(s.sigma_v > 0.0))
        throw std::invalid_argument("GaussianState1D: sigma_x and sigma_v must be positive");
}
}  // namespace

double f_initial(const GaussianState1D& s, double x, double v_x) {
    check_state(s);
    const double dx = (x - s.mean_x) / s.sigma_x;
    const double dv = (v_x - s.mean_v) / s.sigma_v;
    return std::exp(-0.5 * (dx * dx + dv * dv)) /
           (2.0 * constants::pi * s.sigma_x * s.sigma_v);
}

double f_uniform(const GaussianState1D& s, double x, double v_x, double g, double t) {
    return f_initial(s, x - v_x * t - 0.5 * g * t * t, v_x + g * t);
}

double xi(const GaussianState1D& s, double x, double g, double t) {
    check_state(s);
    const double spread = std::sqrt(s.sigma_x * s.sigma_x + s.sigma_v * s.sigma_v * t * t);
    return (x - s.mean_x - s.mean_v * t + 0.5 * g * t * t) / spread;
}

double p_uniform(const GaussianState1D& s, double x, double g, double t) {
    const double spread = std::sqrt(s.sigma_x * s.sigma_x + s.sigma_v * s.sigma_v * t * t);
    const double z = xi(s, x, g, t);
    return std::exp(-0.5 * z * z) / (sqrt_two_pi * spread);
}

double p_uniform_d3x(const GaussianState1D& s, double x, double g, double t) {
    const double spread2 = s.sigma_x * s.sigma_x + s.sigma_v * s.sigma_v * t * t;
    const double z = xi(s, x, g, t);
    // d^3/dx^3 [e^{-xi^2/2}/sqrt(2 pi s^2)] = -(xi^3 - 3 xi) e^{-xi^2/2} / (sqrt(2 pi) s^4)
    return -(z * z * z - 3.0 * z) * std::exp(-0.5 * z * z) / (sqrt_two_pi * spread2 * spread2);
}

double p0(double sigma_v, double g, double R, double m, double hbar) {
    if (!(sigma_v > 0.0) || !(R > 0.0) || !(m > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("p0: inputs must be positive");
    const double sv2 = sigma_v * sigma_v;
    return g * hbar * hbar / (16.0 * R * R * m * m * sv2 * sv2);
}

double p_quantum(const GaussianState1D& s, double x, double g, double R, double m, double hbar,
                 double t, double sigma_v_floor) {
    check_state(s);
    if (s.sigma_v < sigma_v_floor)
        throw NumericalError("p_quantum: sigma_v below the configured floor");
    const double ratio = s.sigma_x / s.sigma_v;
    const double denom = ratio * ratio + t * t;
    const double z = xi(s, x, g, t);
    const double t2 = t * t;
    return p0(s.sigma_v, g, R, m, hbar) * t2 * t2 * (z * z * z - 3.0 * z) *
           std::exp(-0.5 * z * z) / (denom * denom * sqrt_two_pi);
}

double p_quantum_from_epsilon(double eps_q, double t, double d3p_u) {
    const double t2 = t * t;
    return -0.25 * eps_q * t2 * t2 * d3p_u;
}

MomentIntegrals pq_moments(const GaussianState1D& s, double g, double R, double m, double hbar,
                           double t) {
    check_state(s);
    const double spread = std::sqrt(s.sigma_x * s.sigma_x + s.sigma_v * s.sigma_v * t * t);
    const double center = s.mean_x + s.mean_v * t - 0.5 * g * t * t;
    const double a = center - 14.0 * spread;
    const double b = center + 14.0 * spread;
    const double ratio = s.sigma_x / s.sigma_v;
    const double denom = ratio * ratio + t * t;
    const double t2 = t * t;
    const double amplitude =
        p0(s.sigma_v, g, R, m, hbar) * t2 * t2 / (denom * denom);  // 1/m scale of P_q

    MomentIntegrals out{};
    double* slots[4] = {&out.m0, &out.m1, &out.m2, &out.m3};
    // natural scale of |integral of x^n P_q| is amplitude * spread^(n+1)
    double scale = amplitude * spread;
    for (int n = 0; n < 4; ++n) {
        if (n > 0) scale *= spread;
        const double tol = std::max(scale, 1e-300) * 3e-12;
        *slots[n] = integrate_adaptive(
            [&](double x) { return std::pow(x, n) * p_quantum(s, x, g, R, m, hbar, t); }, a, b,
            tol);
    }
    return out;
}

DensityProfile classical_density_mc(const GravityModel& model, const GaussianState3D& state,
                                    double t, std::size_t x_bins, std::size_t n_samples,
                                    std::uint64_t seed, const IntegratorOptions& opt) {
    if (n_samples < 10'000)
        throw std::invalid_argument("classical_density_mc: n_samples must be >= 1e4");
    if (x_bins < 3) throw std::invalid_argument("classical_density_mc: x_bins must be >= 3");

    // Bin range: predicted mean +- 6 spreads of the uniform-gravity marginal.
    const double g = model.g();
    const double center = state.mean_r.x + state.mean_v.x * t - 0.5 * g * t * t;
    const double spread = std::sqrt(state.sigma_r.x * state.sigma_r.x +
                                    state.sigma_v.x * state.sigma_v.x * t * t);
    const double lo = center - 6.0 * spread;
    const double hi = center + 6.0 * spread;
    const double width = (hi - lo) / static_cast<double>(x_bins);

    std::vector<std::size_t> counts(x_bins, 0);
    double mean = 0.0, m2 = 0.0;
    const double times[1] = {t};
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i);
        InitialConditions ic;
        ic.r = {state.mean_r.x + state.sigma_r.x * rng.normal(),
                state.mean_r.y + state.sigma_r.y * rng.normal(),
                state.mean_r.z + state.sigma_r.z * rng.normal()};
        ic.v = {state.mean_v.x + state.sigma_v.x * rng.normal(),
                state.mean_v.y + state.sigma_v.y * rng.normal(),
                state.mean_v.z + state.sigma_v.z * rng.normal()};
        const double x = integrate_exact(model, ic, times, opt)[0].r.x;
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
        if (x >= lo && x < hi) {
            auto bin = static_cast<std::size_t>((x - lo) / width);
            if (bin >= x_bins) bin = x_bins - 1;
            ++counts[bin];
        }
    }

    DensityProfile profile;
    profile.t = t;
    profile.x.resize(x_bins);
    profile.density.resize(x_bins);
    const double norm = 1.0 / (static_cast<double>(n_samples) * width);
    for (std::size_t b = 0; b < x_bins; ++b) {
        profile.x[b] = lo + (static_cast<double>(b) + 0.5) * width;
        profile.density[b] = static_cast<double>(counts[b]) * norm;
    }
    profile.sample_mean = mean;
    const double var = m2 / static_cast<double>(n_samples - 1);
    profile.sample_std_error = std::sqrt(var / static_cast<double>(n_samples));
    return profile;
}

}  // namespace qfall
