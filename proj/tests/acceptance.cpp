// Acceptance suite: every release criterion as its own test case, printing
// one pass/fail line per criterion.  Pinned tolerances live in verify.cpp so
// the `qfall verify` command and this binary run identical checks.
//
// AC4-literal is expected to fail and is kept red on purpose: at those
// natural-unit parameters the kick separation is 0.4 R and the uncertainty
// bound forces sigma_x = R/5, so the 1/R perturbation series underlying the
// predicted coefficient does not converge; no simulation can match the
// second-order formula to 5% there.  AC4 runs the same physics in the
// convergent regime instead and demonstrates the 1/R^2 coefficient law.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qfall/potential.hpp"
#include "qfall/verify.hpp"
#include "qfall/wavepacket.hpp"

using namespace qfall;

namespace {

void report(const std::vector<CheckResult>& results) {
    for (const auto& r : results) {
        std::printf("%s  %s  measured=%.9g expected=%.9g tol=%.3g (%.2f s)\n",
                    r.pass ? "PASS" : (r.gating ? "FAIL" : "info"), r.name.c_str(), r.measured,
                    r.expected, r.tolerance, r.seconds);
        if (r.gating) {
            INFO(r.name, ": ", r.detail);
            CHECK(r.pass);
        }
    }
}

}  // namespace

TEST_CASE("AC1 second-order residual curves track the adaptive integration") {
    report(check_trajectory_residuals());
}

TEST_CASE("AC2 second-order gradient acceleration estimate") {
    report(check_cubic_acceleration_estimate());
}

TEST_CASE("AC3 interferometer phase presets") { report(check_phase_presets()); }

TEST_CASE("AC4 velocity-variance phase against the split-step oracle") {
    VerifyOptions opt;
    report(check_velocity_variance_oracle(opt));
}

TEST_CASE("AC4-literal velocity-variance phase at the non-perturbative parameter point") {
    // The criterion exactly as stated: hbar = m = g = 1, R = 50, k = 20,
    // t = 1, sigma_v 0.05 -> 0.10, match within 5%.  See the file header for
    // why this is expected (and allowed) to stay red.
    const auto start = std::chrono::steady_clock::now();
    const double g = 1.0, k = 20.0, t = 1.0, R = 50.0;
    const auto grid = Grid1D::make(-130.0, 130.0, 4096);
    const auto model = GravityModel::cubic(make_source(1.0, R * R, R));
    const AIConfig cfg{k, t, 1.0, 1.0, g, R};
    OracleState base;
    base.sigma_x = 10.0;  // forced by sigma_x sigma_v >= hbar/2m at sigma_v = 0.05

    const auto res =
        differential_phase(cfg, model, grid, base, VaryParam::sigma_v, 0.05, 0.10, 2200);
    const double predicted = 7.0 * g * k * t * t * t * t * (0.01 - 0.0025) / (2.0 * R * R);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  vv-phase-literal-R50  measured=%.9g expected=%.9g tol=%.3g (%.2f s)\n",
                std::abs(res.delta_phase - predicted) <= 0.05 * predicted ? "PASS" : "FAIL",
                res.delta_phase, predicted, 0.05 * predicted, seconds);
    CHECK(std::abs(res.delta_phase - predicted) <= 0.05 * predicted);
    CHECK(seconds < 60.0);

    // the attainable half of the criterion: the shift vanishes when 1/R = 0
    const auto uniform = differential_phase(AIConfig{k, t, 1.0, 1.0, g, 1e30},
                                            GravityModel::uniform(g), grid, base,
                                            VaryParam::sigma_v, 0.05, 0.10, 2200);
    std::printf("%s  vv-phase-literal-uniform-limit  measured=%.3g tol=1e-8\n",
                std::abs(uniform.delta_phase) < 1e-8 ? "PASS" : "FAIL", uniform.delta_phase);
    REQUIRE(std::abs(uniform.delta_phase) < 1e-8);
}

TEST_CASE("AC5 uniform-gravity phase exactness and state independence") {
    report(check_uniform_phase_exactness());
}

TEST_CASE("AC6 quantum-correction identities") {
    report(check_quantum_correction_identities());
}

TEST_CASE("AC7 characteristic density values") { report(check_p0_values()); }

TEST_CASE("AC8 ensemble-average oracle") {
    VerifyOptions opt;
    report(check_moments_oracle(opt));
}

TEST_CASE("AC9 property suite") { report(check_property_suite()); }

TEST_CASE("AC4-sensitivity: a corrupted coefficient is caught") {
    // development-mode mutation: a 12% error in the predicted coefficient
    // must flip the oracle check
    VerifyOptions opt;
    opt.mutate_vv_coefficient = 0.12;
    const auto results = check_velocity_variance_oracle(opt);
    bool caught = false;
    for (const auto& r : results)
        if (r.gating && !r.pass) caught = true;
    CHECK(caught);
}
