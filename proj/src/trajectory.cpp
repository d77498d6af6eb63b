#include "qfall/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "qfall/errors.hpp"
#include "qfall/ode.hpp"

namespace qfall {

PerturbativeCoefficients perturbative_coefficients(double g, double R, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("perturbative_coefficients: t must be >= 0");
    if (!(R > 0.0)) throw std::invalid_argument("perturbative_coefficients: R must be > 0");
    const double gt2_R = g * t * t / R;            // g t^2 / R, zero when R = inf
    const double gt2_R2 = gt2_R / R;               // g t^2 / R^2
    PerturbativeCoefficients c;
    c.alpha = 1.0 + gt2_R + (5.0 / 12.0) * gt2_R * gt2_R;
    c.beta = t * (1.0 + gt2_R / 3.0 + (11.0 / 60.0) * gt2_R * gt2_R);
    c.gamma = 0.5 * g * t * t * (1.0 + gt2_R / 6.0 + (11.0 / 180.0) * gt2_R * gt2_R);
    c.alpha_t = 0.75 * gt2_R2;
    c.beta_t = 0.125 * gt2_R2 * t * t;
    c.gamma_t = 0.5 * gt2_R2 * t;
    return c;
}

double x0_term(const InitialConditions& ic, double g, double t) {
    return ic.r.x + ic.v.x * t - 0.5 * g * t * t;
}

double x1_term(const InitialConditions& ic, double g, double t) {
    return g * t * t * (ic.r.x + ic.v.x * t / 3.0 - g * t * t / 12.0);
}

double x2_term(const InitialConditions& ic, double g, double t) {
    const double t2 = t * t;
    const double g2t4 = g * g * t2 * t2;
    const double qr = 2.0 * ic.r.x * ic.r.x - ic.r.y * ic.r.y - ic.r.z * ic.r.z;
    const double qv = 2.0 * ic.v.x * ic.v.x - ic.v.y * ic.v.y - ic.v.z * ic.v.z;
    const double qrv = 2.0 * ic.r.x * ic.v.x - ic.r.y * ic.v.y - ic.r.z * ic.v.z;
    return (5.0 / 12.0) * g2t4 * ic.r.x + (11.0 / 60.0) * g2t4 * t * ic.v.x -
           (11.0 / 360.0) * g2t4 * g * t2 - 0.75 * g * t2 * qr - 0.125 * g * t2 * t2 * qv -
           0.5 * g * t2 * t * qrv;
}

double x_perturbative(const InitialConditions& ic, double g, double R, double t) {
    const auto c = perturbative_coefficients(g, R, t);
    const double qr = 2.0 * ic.r.x * ic.r.x - ic.r.y * ic.r.y - ic.r.z * ic.r.z;
    const double qv = 2.0 * ic.v.x * ic.v.x - ic.v.y * ic.v.y - ic.v.z * ic.v.z;
    const double qrv = 2.0 * ic.r.x * ic.v.x - ic.r.y * ic.v.y - ic.r.z * ic.v.z;
    return c.alpha * ic.r.x + c.beta * ic.v.x - c.gamma - c.alpha_t * qr - c.beta_t * qv -
           c.gamma_t * qrv;
}

namespace {

struct UniformReference {
    InitialConditions ic;
    double g;

    Vec3 r(double t) const {
        return {ic.r.x + ic.v.x * t - 0.5 * g * t * t, ic.r.y + ic.v.y * t, ic.r.z + ic.v.z * t};
    }
    Vec3 v(double t) const { return {ic.v.x - g * t, ic.v.y, ic.v.z}; }
};

}  // namespace

std::vector<TrajectorySample> integrate_exact(const GravityModel& model,
                                              const InitialConditions& ic,
                                              std::span<const double> times,
                                              const IntegratorOptions& opt) {
    if (times.empty()) return {};
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (times[i + 1] < times[i])
            throw std::invalid_argument("integrate_exact: times must be sorted");
    if (times.front() < 0.0) throw std::invalid_argument("integrate_exact: times must be >= 0");

    const UniformReference ref{ic, model.g()};
    const double t_end = times.back();

    // Conditioning scales: positions by R, times by sqrt(R/g) where defined.
    const bool scaled = !model.is_uniform() && model.g() > 0.0;
    const double L = scaled ? 1.0 / model.inv_R() : 1.0;
    const double T = scaled ? std::sqrt(L / model.g()) : 1.0;

    OdeOptions ode_opt;
    ode_opt.rel_tol = opt.rel_tol;
    ode_opt.abs_tol = opt.abs_tol > 0.0 ? opt.abs_tol / L : 1e-15;
    ode_opt.h_max = opt.h_max > 0.0 ? opt.h_max / T : 0.0;

    // State: deviation from the uniform reference and its time derivative,
    // in scaled units.
    auto rhs = [&](double tau, const std::array<double, 6>& y) {
        const double t = tau * T;
        const Vec3 u{y[0] * L, y[1] * L, y[2] * L};
        const Vec3 da = acceleration_beyond_uniform(model, ref.r(t) + u);
        const double s = T * T / L;
        return std::array<double, 6>{y[3], y[4], y[5], da.x * s, da.y * s, da.z * s};
    };

    std::vector<double> taus(times.begin(), times.end());
    for (double& tau : taus) tau /= T;

    std::vector<TrajectorySample> out;
    out.reserve(times.size());
    auto sink = [&](double tau, const std::array<double, 6>& y) {
        const double t = tau * T;
        const Vec3 u{y[0] * L, y[1] * L, y[2] * L};
        const Vec3 du{y[3] * L / T, y[4] * L / T, y[5] * L / T};
        out.push_back({t, ref.r(t) + u, ref.v(t) + du});
    };

    try {
        integrate_dopri5<6>(rhs, {0, 0, 0, 0, 0, 0}, 0.0, t_end / T, taus, ode_opt, sink);
    } catch (const StepSizeUnderflow& e) {
        throw StepSizeUnderflow(
            "integrate_exact: step size underflow at t = " + std::to_string(e.t_reached * T) +
                " s",
            e.t_reached * T);
    }
    if (out.size() != times.size())
        throw NumericalError("integrate_exact: not every requested sample was produced");
    return out;
}

std::vector<ResidualSample> second_order_residual(const GravityModel& model,
                                                  const InitialConditions& ic,
                                                  std::span<const double> times,
                                                  const IntegratorOptions& opt) {
    if (model.kind() != FieldKind::exact)
        throw std::invalid_argument("second_order_residual requires an exact model");
    const double g = model.g();
    const double inv_R = model.inv_R();
    const auto samples = integrate_exact(model, ic, times, opt);
    std::vector<ResidualSample> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        const double numeric = s.r.x - x0_term(ic, g, s.t) - x1_term(ic, g, s.t) * inv_R;
        out.push_back({s.t, x2_term(ic, g, s.t) * inv_R * inv_R, numeric});
    }
    return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace: n must be >= 2");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = b;
    return v;
}

}  // namespace qfall
