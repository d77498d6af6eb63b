#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include "qfall/errors.hpp"

namespace qfall {

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
    double h_max = 0.0;  // 0 -> (t1 - t0) / 16
    std::size_t max_steps = 2'000'000;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous-extension weights.
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of dy/dt = rhs(t, y) from t0 to
/// t1 >= t0.  `sample_times` must be sorted and lie within [t0, t1]; each is
/// delivered to `sink(t, y)` from the order-4 continuous extension of the
/// accepted step containing it.  Throws NumericalError on step-size
/// underflow or when max_steps is exhausted.
template <std::size_t N, typename Rhs, typename Sink>
void integrate_dopri5(Rhs&& rhs, std::array<double, N> y, double t0, double t1,
                      std::span<const double> sample_times, const OdeOptions& opt, Sink&& sink) {
    using State = std::array<double, N>;
    namespace dd = detail;

    if (!(opt.rel_tol > 0.0) || !(opt.rel_tol <= 1e-3))
        throw std::invalid_argument("integrate_dopri5: rel_tol must lie in (0, 1e-3]");
    if (!(opt.abs_tol > 0.0) || !(opt.abs_tol <= 1e-3))
        throw std::invalid_argument("integrate_dopri5: abs_tol must lie in (0, 1e-3]");
    if (t1 < t0) throw std::invalid_argument("integrate_dopri5: t1 < t0");

    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
        sink(sample_times[next_sample], y);
        ++next_sample;
    }
    if (t1 == t0) return;

    const double span = t1 - t0;
    const double h_min = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(t1), std::abs(span));
    const double h_max = opt.h_max > 0.0 ? opt.h_max : span / 16.0;
    double t = t0;
    State f0 = rhs(t, y);
    double h = h_max;

    State k2, k3, k4, k5, k6, f1, y1, yerr;
    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        bool last = false;
        if (t + 1.01 * h >= t1) {
            h = t1 - t;
            last = true;
        }
        if (!last && h < h_min)
            throw StepSizeUnderflow(
                "integrate_dopri5: step size underflow at t = " + std::to_string(t), t);

        State ytmp;
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * dd::a21 * f0[i];
        k2 = rhs(t + dd::c2 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (dd::a31 * f0[i] + dd::a32 * k2[i]);
        k3 = rhs(t + dd::c3 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (dd::a41 * f0[i] + dd::a42 * k2[i] + dd::a43 * k3[i]);
        k4 = rhs(t + dd::c4 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (dd::a51 * f0[i] + dd::a52 * k2[i] + dd::a53 * k3[i] +
                                  dd::a54 * k4[i]);
        k5 = rhs(t + dd::c5 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (dd::a61 * f0[i] + dd::a62 * k2[i] + dd::a63 * k3[i] +
                                  dd::a64 * k4[i] + dd::a65 * k5[i]);
        k6 = rhs(t + h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y[i] + h * (dd::a71 * f0[i] + dd::a73 * k3[i] + dd::a74 * k4[i] +
                                dd::a75 * k5[i] + dd::a76 * k6[i]);
        f1 = rhs(t + h, y1);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            yerr[i] = h * (dd::e1 * f0[i] + dd::e3 * k3[i] + dd::e4 * k4[i] + dd::e5 * k5[i] +
                           dd::e6 * k6[i] + dd::e7 * f1[i]);
            const double scale =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            const double q = yerr[i] / scale;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            // Deliver dense output inside (t, t+h].
            while (next_sample < sample_times.size() && sample_times[next_sample] <= t + h) {
                const double ts = sample_times[next_sample];
                const double theta = (ts - t) / h;
                State ys;
                for (std::size_t i = 0; i < N; ++i) {
                    const double ydiff = y1[i] - y[i];
                    const double bspl = h * f0[i] - ydiff;
                    const double r5 = h * (dd::d1 * f0[i] + dd::d3 * k3[i] + dd::d4 * k4[i] +
                                           dd::d5 * k5[i] + dd::d6 * k6[i] + dd::d7 * f1[i]);
                    const double r4 = ydiff - h * f1[i] - bspl;
                    ys[i] = y[i] + theta * (ydiff + (1.0 - theta) * (bspl + theta * (r4 + (1.0 - theta) * r5)));
                }
                sink(ts, ys);
                ++next_sample;
            }
            t += h;
            y = y1;
            f0 = f1;
            if (t >= t1) return;
            const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h = std::min(h * std::clamp(grow, 0.2, 5.0), h_max);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    throw NumericalError("integrate_dopri5: max step count exhausted at t = " + std::to_string(t));
}

}  // namespace qfall
