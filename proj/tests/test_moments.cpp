#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qfall/moments.hpp"
#include "qfall/potential.hpp"
#include "qfall/rng.hpp"
#include "qfall/trajectory.hpp"

using namespace qfall;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const GravitySource kSource = make_source(6.67e-11, 1e3, 1.5);

StateMoments zero_variance(const Vec3& r, const Vec3& v) {
    return make_moments(r, v, {r.x * r.x, r.y * r.y, r.z * r.z},
                        {v.x * v.x, v.y * v.y, v.z * v.z},
                        {r.x * v.x, r.y * v.y, r.z * v.z});
}

}  // namespace

TEST_SUITE_BEGIN("moments");

TEST_CASE("gaussian builder") {
    const auto unit = gaussian_moments(1.0, 1.0, {0, 0, 0}, {0, 0, 0});
    CHECK(unit.second_r.x == 1.0);
    CHECK(unit.second_v.z == 1.0);
    CHECK(unit.sym_rv.x == 0.0);

    const auto shifted = gaussian_moments(0.5, 0.25, {3.0, 0, 0}, {2.0, 0, 0});
    CHECK(shifted.second_r.x == doctest::Approx(0.25 + 9.0));
    CHECK(shifted.second_v.x == doctest::Approx(0.0625 + 4.0));
    CHECK(shifted.sym_rv.x == doctest::Approx(6.0));

    CHECK_THROWS_AS(gaussian_moments(-1.0, 1.0, {0, 0, 0}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("covariance positivity is enforced") {
    CHECK_THROWS_AS(make_moments({1, 0, 0}, {0, 0, 0}, {0.5, 0, 0}, {0, 0, 0}, {0, 0, 0}),
                    std::invalid_argument);
    // |cov| > sigma_x sigma_v
    CHECK_THROWS_AS(make_moments({0, 0, 0}, {0, 0, 0}, {1, 1, 1}, {1, 1, 1}, {2, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("zero-variance ensemble reproduces the trajectory solution") {
    const double g = kSource.g();
    const Vec3 r{1e-3, -2e-3, 5e-4};
    const Vec3 v{1e-3, 1e-3, -2e-3};
    const auto m = zero_variance(r, v);
    for (double t : {0.0, 1.0, 5.0, 10.0}) {
        const double lhs = positional_average(m, g, kSource.R, t);
        const double rhs = x_perturbative({r, v}, g, kSource.R, t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("isotropic zero-mean ensemble reduces to pure free fall") {
    const double g = kSource.g();
    const auto m = gaussian_moments(3e-6, 3e-4, {0, 0, 0}, {0, 0, 0});
    const auto c = perturbative_coefficients(g, kSource.R, 10.0);
    CHECK(positional_average(m, g, kSource.R, 10.0) ==
          doctest::Approx(-c.gamma).epsilon(1e-14));
}

TEST_CASE("velocity-spread term magnitude") {
    // beta_t contribution of <v_x^2> alone: -g t^4 / (8 R^2) * 2 sigma_v^2
    const double g = 2.964e-8, R = 1.5, t = 10.0, sigma_v = 1e-3;
    const double term = -g * std::pow(t, 4) / (8.0 * R * R) * 2.0 * sigma_v * sigma_v;
    CHECK(term == doctest::Approx(-3.293e-11).epsilon(1e-3));

    // realized through positional_average: x-only velocity variance
    const auto base = zero_variance({0, 0, 0}, {0, 0, 0});
    auto m = base;
    m.second_v.x = sigma_v * sigma_v;
    CHECK(positional_average(m, g, R, t) - positional_average(base, g, R, t) ==
          doctest::Approx(term).epsilon(1e-12));
}

TEST_CASE("uniform limit drops every quadratic correction") {
    SampleStream rng(5, 0);
    for (int i = 0; i < 20; ++i) {
        const double sx = 1e-4 * (0.5 + rng.uniform01());
        const double sv = 1e-3 * (0.5 + rng.uniform01());
        const Vec3 mean_r{1e-2 * rng.normal(), 1e-2 * rng.normal(), 1e-2 * rng.normal()};
        const Vec3 mean_v{1e-3 * rng.normal(), 1e-3 * rng.normal(), 1e-3 * rng.normal()};
        const auto m = gaussian_moments(sx, sv, mean_r, mean_v);
        const double g = 9.8, t = 3.0;
        CHECK(positional_average(m, g, kInf, t) ==
              doctest::Approx(mean_r.x + mean_v.x * t - 0.5 * g * t * t).epsilon(1e-15));
    }
}

TEST_CASE("monte carlo agrees exactly in uniform gravity") {
    const auto model = GravityModel::uniform(9.8);
    const GaussianState3D state{{1e-3, 1e-3, 1e-3}, {1e-3, 1e-3, 1e-3}, {0.01, 0, 0}, {0.1, 0, 0}};
    const auto mc = monte_carlo_average(model, state, 2.0, 1000, 42);
    CHECK(mc.std_error == 0.0);  // the nonlinear remainder vanishes identically
    CHECK(mc.mean == doctest::Approx(0.01 + 0.1 * 2.0 - 0.5 * 9.8 * 4.0).epsilon(1e-14));
}

TEST_CASE("monte carlo oracle matches the moment algebra") {
    const auto model = GravityModel::exact(kSource);
    const double g = kSource.g();
    const double t = 10.0;

    SampleStream rng(7, 0);
    for (int trial = 0; trial < 3; ++trial) {
        GaussianState3D state;
        state.sigma_r = {3e-6 * (1.0 + rng.uniform01()), 2e-6 * (1.0 + rng.uniform01()),
                         4e-6 * (1.0 + rng.uniform01())};
        state.sigma_v = {3e-4 * (1.0 + rng.uniform01()), 2e-4 * (1.0 + rng.uniform01()),
                         1e-4 * (1.0 + rng.uniform01())};
        state.mean_r = {2e-3 * rng.normal(), 2e-3 * rng.normal(), 2e-3 * rng.normal()};
        state.mean_v = {5e-4 * rng.normal(), 5e-4 * rng.normal(), 5e-4 * rng.normal()};

        const auto mc = monte_carlo_average(model, state, t, 20'000, 1000 + trial);
        const double predicted = positional_average(gaussian_moments(state), g, kSource.R, t);

        // third-order bias allowance: g t^2 D^3 / R^3 with D the displacement scale
        const double D = std::abs(state.mean_r.x) + 3.0 * state.sigma_r.x +
                         (std::abs(state.mean_v.x) + 3.0 * state.sigma_v.x) * t;
        const double allowance = g * t * t * D * D * D / std::pow(kSource.R, 3);
        CHECK(std::abs(mc.mean - predicted) <= 3.0 * mc.std_error + allowance);
    }
}

TEST_CASE("fixed seed reproduces bit-identical estimates") {
    const auto model = GravityModel::exact(kSource);
    const GaussianState3D state{{3e-6, 3e-6, 3e-6}, {3e-4, 3e-4, 3e-4}, {0, 0, 0}, {0, 0, 0}};
    const auto a = monte_carlo_average(model, state, 5.0, 2000, 99);
    const auto b = monte_carlo_average(model, state, 5.0, 2000, 99);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const auto c = monte_carlo_average(model, state, 5.0, 2000, 100);
    CHECK(a.mean != c.mean);
}

TEST_CASE("sample size validation") {
    const auto model = GravityModel::uniform(9.8);
    const GaussianState3D state{{1, 1, 1}, {1, 1, 1}, {0, 0, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(monte_carlo_average(model, state, 1.0, 10, 1), std::invalid_argument);
}

TEST_SUITE_END();
