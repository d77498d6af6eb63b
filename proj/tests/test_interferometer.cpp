#include <doctest.h>

#include <cmath>

#include "qfall/constants.hpp"
#include "qfall/interferometer.hpp"
#include "qfall/presets.hpp"
#include "qfall/rng.hpp"

using namespace qfall;

namespace {
constexpr double pi = constants::pi;
}

TEST_SUITE_BEGIN("interferometer");

TEST_CASE("ground scenario: the velocity-variance phase is tiny") {
    const auto sc = phase_preset("earth");
    const auto p = phase_budget(sc.cfg, sc.moments());
    CHECK(p.theta_vx2 / pi == doctest::Approx(5.9e-12).epsilon(0.02));
    CHECK(p.theta0 == doctest::Approx(sc.cfg.g * sc.cfg.k * sc.cfg.t * sc.cfg.t));
}

TEST_CASE("microgravity scenarios hit the quoted budgets") {
    const auto s1000 = phase_preset("satellite-1000kg");
    const auto p1000 = phase_budget(s1000.cfg, s1000.moments());
    CHECK(p1000.theta0 / pi == doctest::Approx(12.0).epsilon(0.05));
    CHECK(p1000.theta_vx2 / pi == doctest::Approx(3.2e-3).epsilon(0.05));

    const auto s100 = phase_preset("satellite-100kg");
    const auto p100 = phase_budget(s100.cfg, s100.moments());
    CHECK(p100.theta0 / pi == doctest::Approx(1.2).epsilon(0.05));
    CHECK(p100.theta_vx2 / pi == doctest::Approx(3.2e-4).epsilon(0.05));

    // phases scale linearly with the source mass
    CHECK(p100.theta0 == doctest::Approx(p1000.theta0 / 10.0).epsilon(1e-12));
    CHECK(p100.theta_vx2 == doctest::Approx(p1000.theta_vx2 / 10.0).epsilon(1e-12));
}

TEST_CASE("magnetic analog scenario") {
    const auto sc = phase_preset("magnetic");
    const auto p = phase_budget_magnetic(0.1, 0.1, sc.cfg, sc.moments());
    CHECK(p.theta0 / pi == doctest::Approx(4e3).epsilon(0.05));
    CHECK(p.theta_vx2 / pi == doctest::Approx(0.025).epsilon(0.05));

    // g_b -> 0 kills every phase
    const auto off = phase_budget_magnetic(0.0, 0.1, sc.cfg, sc.moments());
    CHECK(off.theta0 == 0.0);
    CHECK(off.theta_prime == 0.0);
    CHECK(off.theta_vx == 0.0);
    CHECK(off.theta_vx2 == 0.0);
}

TEST_CASE("stage-time power counting") {
    auto sc = phase_preset("satellite-1000kg");
    const auto p1 = phase_budget(sc.cfg, sc.moments());
    auto doubled = sc.cfg;
    doubled.t *= 2.0;
    const auto p2 = phase_budget(doubled, sc.moments());
    CHECK(p2.theta0 == doctest::Approx(4.0 * p1.theta0).epsilon(1e-12));
    CHECK(p2.theta_vx2 == doctest::Approx(16.0 * p1.theta_vx2).epsilon(1e-12));
}

TEST_CASE("ratio identities") {
    SampleStream rng(21, 0);
    for (int i = 0; i < 50; ++i) {
        AIConfig cfg{1e6 * (0.5 + rng.uniform01()), 0.1 + 10.0 * rng.uniform01(),
                     1e-25, 1.0546e-34, 1e-8 * (0.1 + rng.uniform01()),
                     0.5 + 10.0 * rng.uniform01()};
        const double vbar = 1e-3 * (0.1 + rng.uniform01());
        const double vrms2 = vbar * vbar + 1e-6 * rng.uniform01();
        const auto m = make_moments({0, 0, 0}, {vbar, 0, 0}, {1e-12, 1e-12, 1e-12},
                                    {vrms2, vrms2, vrms2}, {0, 0, 0});
        const auto p = phase_budget(cfg, m);
        CHECK(p.ratio_vx2_over_0 ==
              doctest::Approx(7.0 * cfg.t * cfg.t * vrms2 / (2.0 * cfg.R * cfg.R))
                  .epsilon(1e-12));
        CHECK(p.ratio_vx2_over_vx ==
              doctest::Approx(7.0 * cfg.t * vrms2 / (4.0 * cfg.R * vbar)).epsilon(1e-12));
        CHECK(p.theta_vx2 / p.theta0 == doctest::Approx(p.ratio_vx2_over_0).epsilon(1e-12));
        CHECK(p.theta_vx2 / p.theta_vx == doctest::Approx(p.ratio_vx2_over_vx).epsilon(1e-12));
    }
}

TEST_CASE("ground ordering: theta_vx2/theta0 << theta_vx2/theta_vx << 1") {
    const auto sc = phase_preset("earth");
    auto m = sc.moments();
    m.mean_v.x = sc.v_rms;  // nonzero central velocity for the second ratio
    m.sym_rv.x = m.mean_r.x * m.mean_v.x;
    const auto p = phase_budget(sc.cfg, m);
    CHECK(p.ratio_vx2_over_0 < 1e-6);
    CHECK(p.ratio_vx2_over_vx < 1e-6);
    CHECK(p.ratio_vx2_over_0 < p.ratio_vx2_over_vx);
}

TEST_CASE("mass enters theta_prime only through the recoil term") {
    auto sc = phase_preset("satellite-1000kg");
    auto heavy = sc.cfg;
    heavy.m = 1e10;
    const auto p = phase_budget(heavy, sc.moments());
    const double gradient_only = 7.0 * p.theta0 * heavy.g * heavy.t * heavy.t / (6.0 * heavy.R);
    CHECK(p.theta_prime == doctest::Approx(gradient_only).epsilon(1e-6));
}

TEST_CASE("commutator coefficients") {
    const AIConfig natural{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    const auto c = commutator_coefficients(natural);
    CHECK(c.c01 == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(c.c02_affine[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.c02_affine[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.c02_affine[2] == doctest::Approx(-7.0 / 30.0).epsilon(1e-15));
    CHECK(c.c002 == doctest::Approx(1.5).epsilon(1e-15));

    AIConfig zero_t = natural;
    zero_t.t = 0.0;
    const auto c0 = commutator_coefficients(zero_t);
    CHECK(c0.c01 == 0.0);
    CHECK(c0.c002 == 0.0);

    AIConfig doubled = natural;
    doubled.g = 2.0;
    const auto c2 = commutator_coefficients(doubled);
    CHECK(c2.c01 == doctest::Approx(2.0 * c.c01));
    CHECK(c2.c002 == doctest::Approx(2.0 * c.c002));
    CHECK(c2.c02_affine[2] == doctest::Approx(4.0 * c.c02_affine[2]));
}

TEST_SUITE_END();
