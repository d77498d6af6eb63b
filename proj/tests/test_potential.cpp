#include <doctest.h>

#include <cmath>

#include "qfall/constants.hpp"
#include "qfall/errors.hpp"
#include "qfall/potential.hpp"
#include "qfall/rng.hpp"

using namespace qfall;

namespace {

const GravitySource kSource = make_source(6.67e-11, 1e3, 1.5);

Vec3 random_point(SampleStream& rng, double scale) {
    return {scale * (2.0 * rng.uniform01() - 1.0), scale * (2.0 * rng.uniform01() - 1.0),
            scale * (2.0 * rng.uniform01() - 1.0)};
}

}  // namespace

TEST_SUITE_BEGIN("potential");

TEST_CASE("exact potential at reference points") {
    const auto src = make_source(6.67e-11, 1e3, 1.0);
    const auto model = GravityModel::exact(src);
    CHECK(potential_exact(model, {0, 0, 0}) == doctest::Approx(-6.67e-8).epsilon(1e-12));
    CHECK(potential_exact(model, {src.R, 0, 0}) ==
          doctest::Approx(-6.67e-8 / 2.0).epsilon(1e-12));
}

TEST_CASE("exact potential matches the cubic expansion to fourth order") {
    const auto exact = GravityModel::exact(kSource);
    const auto cubic = GravityModel::cubic(kSource);
    const double GM_R = kSource.G * kSource.M / kSource.R;
    SampleStream rng(11, 0);
    for (int i = 0; i < 200; ++i) {
        const Vec3 r = random_point(rng, kSource.R / 10.0 / std::sqrt(3.0));
        const double rho = norm(r) / kSource.R;
        const double remainder =
            potential_exact(exact, r) - (potential_cubic(cubic, r) - GM_R);
        // frozen regression constant for the series remainder bound
        CHECK(std::abs(remainder) <= 2.0 * rho * rho * rho * rho * GM_R);
    }
}

TEST_CASE("cubic potential values") {
    const auto cubic = GravityModel::cubic(kSource);
    CHECK(potential_cubic(cubic, {0, 0, 0}) == 0.0);

    const auto uniform = GravityModel::uniform(9.8);
    CHECK(potential_cubic(uniform, {0.37, 5.0, -2.0}) ==
          doctest::Approx(9.8 * 0.37).epsilon(1e-15));

    // cubic term alone at x = 1e-2 m
    const double g = 2.964e-8;
    const double x = 1e-2;
    const auto model = GravityModel::cubic(make_source(6.67e-11, 1e3, 1.5));
    const double quadratic_and_lower = g * x - g * x * x / 1.5;
    const double cubic_term =
        potential_cubic(model, {x, 0, 0}) - quadratic_and_lower;
    CHECK(cubic_term == doctest::Approx(1.317e-14).epsilon(5e-3));
}

TEST_CASE("acceleration at the origin and the quoted gradient estimate") {
    const auto cubic = GravityModel::cubic(kSource);
    const auto a0 = acceleration(cubic, {0, 0, 0});
    CHECK(a0.x == -kSource.g());
    CHECK(a0.y == 0.0);
    CHECK(a0.z == 0.0);

    // second-order gradient contribution 3 g x^2 / R^2 at x = 1 cm
    const double g = kSource.g();
    const double estimate = 3.0 * g * 1e-4 / (1.5 * 1.5);
    CHECK(estimate == doctest::Approx(4e-12).epsilon(0.05));
}

TEST_CASE("exact and cubic accelerations agree to the expansion order") {
    const auto exact = GravityModel::exact(kSource);
    const auto cubic = GravityModel::cubic(kSource);
    const double g = kSource.g();
    SampleStream rng(12, 0);
    for (int i = 0; i < 100; ++i) {
        Vec3 r = random_point(rng, 1.0);
        const double want = kSource.R / 100.0;
        r *= want / norm(r);
        const Vec3 da = acceleration(exact, r) - acceleration(cubic, r);
        const double bound = 5.0 * std::pow(norm(r) / kSource.R, 3) * g;
        CHECK(std::abs(da.x) <= bound);
        CHECK(std::abs(da.y) <= bound);
        CHECK(std::abs(da.z) <= bound);
    }
}

TEST_CASE("acceleration is minus the potential gradient (all models)") {
    const GravityModel models[] = {GravityModel::exact(kSource), GravityModel::cubic(kSource),
                                   GravityModel::magnetic(0.1, 0.1)};
    SampleStream rng(13, 0);
    for (const auto& model : models) {
        const double R = 1.0 / model.inv_R();
        const double h = 1e-6 * R;
        for (int i = 0; i < 50; ++i) {
            const Vec3 r = random_point(rng, R / 20.0);
            const Vec3 a = acceleration(model, r);
            const Vec3 grads[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
            const double ax[3] = {a.x, a.y, a.z};
            for (int c = 0; c < 3; ++c) {
                const double fd =
                    -(potential(model, r + grads[c]) - potential(model, r - grads[c])) /
                    (2.0 * h);
                CHECK(fd == doctest::Approx(ax[c]).epsilon(1e-6).scale(model.g()));
            }
        }
    }
}

TEST_CASE("surface gravity") {
    const auto src = make_source(6.67e-11, 1e3, 1.5);
    CHECK(surface_gravity(src, 1.0) == doctest::Approx(6.67e-8).epsilon(1e-12));

    const auto earth = make_source(6.67e-11, 5.97e24, 6.4e6);
    CHECK(surface_gravity(earth, 6.4e6) == doctest::Approx(9.72).epsilon(0.01));

    const auto doubled = make_source(6.67e-11, 2e3, 1.5);
    CHECK(surface_gravity(doubled, 1.0) == doctest::Approx(2.0 * 6.67e-8).epsilon(1e-12));
}

TEST_CASE("epsilon_q value, two-body reduction, and mass scaling") {
    const QuantumCorrectionParams params{1.0546e-34, 1e-25, {}, {}};
    const double eq = epsilon_q(params, kSource);
    CHECK(eq == doctest::Approx(3.66e-27).epsilon(2e-3));

    // m1 >> m2 reduces to the single-particle form with m = m2, M = m1
    const double m2 = 1e-25;
    const double m1 = 1e6 * m2;
    QuantumCorrectionParams two{1.0546e-34, 0.0, m1, m2};
    const GravitySource heavy = make_source(6.67e-11, m1, 1.5);
    const QuantumCorrectionParams single{1.0546e-34, m2, {}, {}};
    const double ratio = epsilon_q(two, heavy) / epsilon_q(single, heavy);
    CHECK(std::abs(ratio - 1.0) <= 3.0001e-6);

    QuantumCorrectionParams heavier = params;
    heavier.m = 2.0 * params.m;
    CHECK(epsilon_q(heavier, kSource) == epsilon_q(params, kSource) / 4.0);
}

TEST_CASE("magnetic analog acceleration scale") {
    const double mu0 = 4.0 * constants::pi * 1e-7;
    const double M_b = 9.27e-24;
    const double m = 1e-25;
    const double R = 0.1;
    // current chosen to produce g_b = 0.1 m/s^2
    const double I = 0.1 * 2.0 * constants::pi * R * R * m / (mu0 * M_b);
    CHECK(magnetic_g_b(mu0, I, M_b, R, m) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(magnetic_g_b(mu0, 0.0, M_b, R, m) == 0.0);
    CHECK(magnetic_g_b(mu0, I, M_b, R, 2.0 * m) ==
          doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("singularity floor raises instead of returning inf") {
    const auto model = GravityModel::exact(kSource);
    CHECK_THROWS_AS(potential_exact(model, {-kSource.R, 0, 0}), NumericalError);
    CHECK_THROWS_AS(acceleration(model, {-kSource.R, 0, 0}), NumericalError);
}

TEST_CASE("expansion validity ratio is exposed, not enforced") {
    const auto cubic = GravityModel::cubic(kSource);
    CHECK(cubic.validity_ratio({0.15, 0, 0}) == doctest::Approx(0.1));
    // far outside the validity region the polynomial still evaluates
    CHECK(std::isfinite(potential_cubic(cubic, {10.0 * kSource.R, 0, 0})));
    CHECK(GravityModel::uniform(9.8).validity_ratio({100, 100, 100}) == 0.0);
}

TEST_CASE("model constructors validate") {
    CHECK_THROWS_AS(make_source(6.67e-11, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_source(6.67e-11, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GravityModel::magnetic(-0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(potential_exact(GravityModel::cubic(kSource), {0, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(potential_cubic(GravityModel::exact(kSource), {0, 0, 0}),
                    std::invalid_argument);
}

TEST_SUITE_END();
