#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfall/constants.hpp"
#include "qfall/errors.hpp"
#include "qfall/interferometer.hpp"
#include "qfall/moments.hpp"
#include "qfall/potential.hpp"
#include "qfall/presets.hpp"
#include "qfall/trajectory.hpp"
#include "qfall/verify.hpp"
#include "qfall/wavepacket.hpp"
#include "qfall/wigner.hpp"

namespace py = pybind11;
using namespace qfall;

PYBIND11_MODULE(_core, m) {
    m.doc() = "free-fall trajectories, interferometer phases, and phase-space densities "
              "under gravity-gradient field models";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
             py::arg("z") = 0.0)
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("__repr__", [](const Vec3& v) {
            return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
                   std::to_string(v.z) + ")";
        });

    // ---- fields ----
    py::class_<GravitySource>(m, "GravitySource")
        .def_readonly("G", &GravitySource::G)
        .def_readonly("M", &GravitySource::M)
        .def_readonly("R", &GravitySource::R)
        .def("g", &GravitySource::g);
    m.def("make_source", &make_source, py::arg("G"), py::arg("M"), py::arg("R"));

    py::class_<GravityModel>(m, "GravityModel")
        .def_static("exact", &GravityModel::exact)
        .def_static("cubic", &GravityModel::cubic)
        .def_static("uniform", &GravityModel::uniform)
        .def_static("magnetic", &GravityModel::magnetic, py::arg("g_b"), py::arg("R"))
        .def("g", &GravityModel::g)
        .def("inv_R", &GravityModel::inv_R)
        .def("is_uniform", &GravityModel::is_uniform)
        .def("validity_ratio", &GravityModel::validity_ratio);

    m.def("potential_exact", &potential_exact);
    m.def("potential_cubic", &potential_cubic);
    m.def("potential", &potential);
    m.def("potential_axis", &potential_axis);
    m.def("acceleration", &acceleration);
    m.def("acceleration_beyond_uniform", &acceleration_beyond_uniform);
    m.def("surface_gravity", &surface_gravity, py::arg("source"), py::arg("R_s"));
    m.def(
        "epsilon_q",
        [](double hbar, double mass, const GravitySource& src) {
            return epsilon_q({hbar, mass, {}, {}}, src);
        },
        py::arg("hbar"), py::arg("m"), py::arg("source"));
    m.def(
        "epsilon_q_two_body",
        [](double hbar, double m1, double m2, const GravitySource& src) {
            return epsilon_q({hbar, 0.0, m1, m2}, src);
        },
        py::arg("hbar"), py::arg("m1"), py::arg("m2"), py::arg("source"));
    m.def("magnetic_g_b", &magnetic_g_b, py::arg("mu0"), py::arg("I"), py::arg("M_b"),
          py::arg("R"), py::arg("m"));

    // ---- trajectories ----
    py::class_<InitialConditions>(m, "InitialConditions")
        .def(py::init([](const Vec3& r, const Vec3& v) { return InitialConditions{r, v}; }),
             py::arg("r"), py::arg("v"))
        .def_readwrite("r", &InitialConditions::r)
        .def_readwrite("v", &InitialConditions::v);

    py::class_<PerturbativeCoefficients>(m, "PerturbativeCoefficients")
        .def_readonly("alpha", &PerturbativeCoefficients::alpha)
        .def_readonly("beta", &PerturbativeCoefficients::beta)
        .def_readonly("gamma", &PerturbativeCoefficients::gamma)
        .def_readonly("alpha_t", &PerturbativeCoefficients::alpha_t)
        .def_readonly("beta_t", &PerturbativeCoefficients::beta_t)
        .def_readonly("gamma_t", &PerturbativeCoefficients::gamma_t);
    m.def("perturbative_coefficients", &perturbative_coefficients, py::arg("g"), py::arg("R"),
          py::arg("t"));
    m.def("x0_term", &x0_term);
    m.def("x1_term", &x1_term);
    m.def("x2_term", &x2_term);
    m.def("x_perturbative", &x_perturbative, py::arg("ic"), py::arg("g"), py::arg("R"),
          py::arg("t"));

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("r", &TrajectorySample::r)
        .def_readonly("v", &TrajectorySample::v);
    py::class_<IntegratorOptions>(m, "IntegratorOptions")
        .def(py::init<>())
        .def_readwrite("rel_tol", &IntegratorOptions::rel_tol)
        .def_readwrite("abs_tol", &IntegratorOptions::abs_tol)
        .def_readwrite("h_max", &IntegratorOptions::h_max);
    m.def(
        "integrate_exact",
        [](const GravityModel& model, const InitialConditions& ic,
           const std::vector<double>& times, const IntegratorOptions& opt) {
            return integrate_exact(model, ic, times, opt);
        },
        py::arg("model"), py::arg("ic"), py::arg("times"),
        py::arg("options") = IntegratorOptions{});
    py::class_<ResidualSample>(m, "ResidualSample")
        .def_readonly("t", &ResidualSample::t)
        .def_readonly("analytic", &ResidualSample::analytic)
        .def_readonly("numeric", &ResidualSample::numeric);
    m.def(
        "second_order_residual",
        [](const GravityModel& model, const InitialConditions& ic,
           const std::vector<double>& times, const IntegratorOptions& opt) {
            return second_order_residual(model, ic, times, opt);
        },
        py::arg("model"), py::arg("ic"), py::arg("times"),
        py::arg("options") = IntegratorOptions{});
    m.def("linspace", &linspace);

    // ---- ensemble moments ----
    py::class_<StateMoments>(m, "StateMoments")
        .def_readwrite("mean_r", &StateMoments::mean_r)
        .def_readwrite("mean_v", &StateMoments::mean_v)
        .def_readwrite("second_r", &StateMoments::second_r)
        .def_readwrite("second_v", &StateMoments::second_v)
        .def_readwrite("sym_rv", &StateMoments::sym_rv);
    m.def("make_moments", &make_moments, py::arg("mean_r"), py::arg("mean_v"),
          py::arg("second_r"), py::arg("second_v"), py::arg("sym_rv"));
    py::class_<GaussianState3D>(m, "GaussianState3D")
        .def(py::init([](const Vec3& sr, const Vec3& sv, const Vec3& mr, const Vec3& mv) {
                 return GaussianState3D{sr, sv, mr, mv};
             }),
             py::arg("sigma_r"), py::arg("sigma_v"), py::arg("mean_r") = Vec3{},
             py::arg("mean_v") = Vec3{})
        .def_readwrite("sigma_r", &GaussianState3D::sigma_r)
        .def_readwrite("sigma_v", &GaussianState3D::sigma_v)
        .def_readwrite("mean_r", &GaussianState3D::mean_r)
        .def_readwrite("mean_v", &GaussianState3D::mean_v);
    m.def("gaussian_moments",
          py::overload_cast<const GaussianState3D&>(&gaussian_moments));
    m.def("gaussian_moments",
          py::overload_cast<double, double, const Vec3&, const Vec3&>(&gaussian_moments),
          py::arg("sigma_x"), py::arg("sigma_v"), py::arg("mean_r") = Vec3{},
          py::arg("mean_v") = Vec3{});
    m.def("positional_average", &positional_average, py::arg("moments"), py::arg("g"),
          py::arg("R"), py::arg("t"));
    py::class_<MonteCarloResult>(m, "MonteCarloResult")
        .def_readonly("mean", &MonteCarloResult::mean)
        .def_readonly("std_error", &MonteCarloResult::std_error)
        .def_readonly("n", &MonteCarloResult::n);
    m.def(
        "monte_carlo_average",
        [](const GravityModel& model, const GaussianState3D& state, double t,
           std::size_t n_samples, std::uint64_t seed, const IntegratorOptions& opt) {
            return monte_carlo_average(model, state, t, n_samples, seed, opt);
        },
        py::arg("model"), py::arg("state"), py::arg("t"), py::arg("n_samples"), py::arg("seed"),
        py::arg("options") = IntegratorOptions{});

    // ---- interferometer ----
    py::class_<AIConfig>(m, "AIConfig")
        .def(py::init([](double k, double t, double mass, double hbar, double g, double R) {
                 return AIConfig{k, t, mass, hbar, g, R};
             }),
             py::arg("k"), py::arg("t"), py::arg("m"), py::arg("hbar"), py::arg("g"),
             py::arg("R"))
        .def_readwrite("k", &AIConfig::k)
        .def_readwrite("t", &AIConfig::t)
        .def_readwrite("m", &AIConfig::m)
        .def_readwrite("hbar", &AIConfig::hbar)
        .def_readwrite("g", &AIConfig::g)
        .def_readwrite("R", &AIConfig::R);
    py::class_<PhaseBreakdown>(m, "PhaseBreakdown")
        .def_readonly("theta0", &PhaseBreakdown::theta0)
        .def_readonly("theta_prime", &PhaseBreakdown::theta_prime)
        .def_readonly("theta_vx", &PhaseBreakdown::theta_vx)
        .def_readonly("theta_vx2", &PhaseBreakdown::theta_vx2)
        .def_readonly("ratio_vx2_over_0", &PhaseBreakdown::ratio_vx2_over_0)
        .def_readonly("ratio_vx2_over_vx", &PhaseBreakdown::ratio_vx2_over_vx);
    m.def("phase_budget", &phase_budget, py::arg("config"), py::arg("moments"));
    m.def("phase_budget_magnetic", &phase_budget_magnetic, py::arg("g_b"), py::arg("R"),
          py::arg("config"), py::arg("moments"));
    py::class_<CommutatorCoefficients>(m, "CommutatorCoefficients")
        .def_readonly("c01", &CommutatorCoefficients::c01)
        .def_readonly("c02_affine", &CommutatorCoefficients::c02_affine)
        .def_readonly("c002", &CommutatorCoefficients::c002);
    m.def("commutator_coefficients", &commutator_coefficients);

    py::class_<PhaseScenario>(m, "PhaseScenario")
        .def_readonly("name", &PhaseScenario::name)
        .def_readonly("cfg", &PhaseScenario::cfg)
        .def_readonly("v_rms", &PhaseScenario::v_rms)
        .def("moments", &PhaseScenario::moments);
    m.def("phase_preset", &phase_preset);
    m.def("phase_preset_names", &phase_preset_names);

    // ---- wave-packet oracle ----
    py::class_<Grid1D>(m, "Grid1D")
        .def_static("make", &Grid1D::make, py::arg("x_min"), py::arg("x_max"), py::arg("n"))
        .def_readonly("x_min", &Grid1D::x_min)
        .def_readonly("x_max", &Grid1D::x_max)
        .def_readonly("n", &Grid1D::n)
        .def("dx", &Grid1D::dx);
    py::class_<WavePacket>(m, "WavePacket")
        .def("norm2", &WavePacket::norm2)
        .def("mean_x", &WavePacket::mean_x)
        .def("var_x", &WavePacket::var_x)
        .def("mean_v", &WavePacket::mean_v)
        .def("var_v", &WavePacket::var_v);
    m.def("gaussian_packet", &gaussian_packet, py::arg("grid"), py::arg("x0"), py::arg("v0"),
          py::arg("sigma_x"), py::arg("m"), py::arg("hbar"));
    m.def("apply_kick", &apply_kick, py::arg("psi"), py::arg("k"));
    m.def("apply_chirp", &apply_chirp, py::arg("psi"), py::arg("b"), py::arg("center") = 0.0);
    m.def("evolve", &evolve, py::arg("psi"), py::arg("model"), py::arg("T"),
          py::arg("n_steps"));
    m.def("branch_overlap", &branch_overlap, py::arg("initial"), py::arg("config"),
          py::arg("model"), py::arg("n_steps_per_stage"));
    m.def("phase_from_overlap", &phase_from_overlap);
    py::class_<OracleState>(m, "OracleState")
        .def(py::init([](double x0, double v0, double sigma_x) {
                 return OracleState{x0, v0, sigma_x};
             }),
             py::arg("x0") = 0.0, py::arg("v0") = 0.0, py::arg("sigma_x") = 1.0)
        .def_readwrite("x0", &OracleState::x0)
        .def_readwrite("v0", &OracleState::v0)
        .def_readwrite("sigma_x", &OracleState::sigma_x);
    py::enum_<VaryParam>(m, "VaryParam")
        .value("mean_x", VaryParam::mean_x)
        .value("mean_v", VaryParam::mean_v)
        .value("sigma_v", VaryParam::sigma_v);
    py::class_<DifferentialPhaseResult>(m, "DifferentialPhaseResult")
        .def_readonly("delta_phase", &DifferentialPhaseResult::delta_phase)
        .def_readonly("wrap_suspect", &DifferentialPhaseResult::wrap_suspect)
        .def_readonly("overlap_modulus_a", &DifferentialPhaseResult::overlap_modulus_a)
        .def_readonly("overlap_modulus_b", &DifferentialPhaseResult::overlap_modulus_b);
    m.def("differential_phase", &differential_phase, py::arg("config"), py::arg("model"),
          py::arg("grid"), py::arg("base"), py::arg("vary"), py::arg("value_a"),
          py::arg("value_b"), py::arg("n_steps_per_stage"));

    // ---- phase-space densities ----
    py::class_<GaussianState1D>(m, "GaussianState1D")
        .def(py::init([](double sx, double sv, double mx, double mv) {
                 return GaussianState1D{sx, sv, mx, mv};
             }),
             py::arg("sigma_x"), py::arg("sigma_v"), py::arg("mean_x") = 0.0,
             py::arg("mean_v") = 0.0)
        .def_readwrite("sigma_x", &GaussianState1D::sigma_x)
        .def_readwrite("sigma_v", &GaussianState1D::sigma_v)
        .def_readwrite("mean_x", &GaussianState1D::mean_x)
        .def_readwrite("mean_v", &GaussianState1D::mean_v);
    m.def("f_initial", &f_initial, py::arg("state"), py::arg("x"), py::arg("v_x"));
    m.def("f_uniform", &f_uniform, py::arg("state"), py::arg("x"), py::arg("v_x"), py::arg("g"),
          py::arg("t"));
    m.def("xi", &xi, py::arg("state"), py::arg("x"), py::arg("g"), py::arg("t"));
    m.def("p_uniform", &p_uniform, py::arg("state"), py::arg("x"), py::arg("g"), py::arg("t"));
    m.def("p_uniform_d3x", &p_uniform_d3x);
    m.def("p0", &p0, py::arg("sigma_v"), py::arg("g"), py::arg("R"), py::arg("m"),
          py::arg("hbar"));
    m.def("p_quantum", &p_quantum, py::arg("state"), py::arg("x"), py::arg("g"), py::arg("R"),
          py::arg("m"), py::arg("hbar"), py::arg("t"), py::arg("sigma_v_floor") = 1e-12);
    m.def("p_quantum_from_epsilon", &p_quantum_from_epsilon, py::arg("eps_q"), py::arg("t"),
          py::arg("d3p_u"));
    py::class_<MomentIntegrals>(m, "MomentIntegrals")
        .def_readonly("m0", &MomentIntegrals::m0)
        .def_readonly("m1", &MomentIntegrals::m1)
        .def_readonly("m2", &MomentIntegrals::m2)
        .def_readonly("m3", &MomentIntegrals::m3);
    m.def("pq_moments", &pq_moments, py::arg("state"), py::arg("g"), py::arg("R"), py::arg("m"),
          py::arg("hbar"), py::arg("t"));
    py::class_<DensityProfile>(m, "DensityProfile")
        .def_readonly("x", &DensityProfile::x)
        .def_readonly("density", &DensityProfile::density)
        .def_readonly("t", &DensityProfile::t)
        .def_readonly("sample_mean", &DensityProfile::sample_mean)
        .def_readonly("sample_std_error", &DensityProfile::sample_std_error);
    m.def(
        "classical_density_mc",
        [](const GravityModel& model, const GaussianState3D& state, double t,
           std::size_t x_bins, std::size_t n_samples, std::uint64_t seed,
           const IntegratorOptions& opt) {
            return classical_density_mc(model, state, t, x_bins, n_samples, seed, opt);
        },
        py::arg("model"), py::arg("state"), py::arg("t"), py::arg("x_bins"),
        py::arg("n_samples"), py::arg("seed"), py::arg("options") = IntegratorOptions{});

    // ---- verification ----
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("gating", &CheckResult::gating)
        .def_readonly("measured", &CheckResult::measured)
        .def_readonly("expected", &CheckResult::expected)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("seconds", &CheckResult::seconds)
        .def_readonly("detail", &CheckResult::detail);
    m.def(
        "run_verification",
        [](bool quick, std::uint64_t seed) {
            VerifyOptions opt;
            opt.quick = quick;
            opt.seed = seed;
            return run_verification(opt);
        },
        py::arg("quick") = false, py::arg("seed") = default_seed);

    m.attr("G_DEFAULT") = constants::gravitational;
    m.attr("HBAR_DEFAULT") = constants::hbar;
    m.attr("__version__") = "0.1.0";
}
