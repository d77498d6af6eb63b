// qfall: free-fall trajectories, interferometer phase budgets, and
// phase-space densities under gravity-gradient field models, with a built-in
// verification suite.  Outputs are plain CSV/JSON with '#' metadata headers
// and are byte-reproducible for a fixed configuration and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qfall/constants.hpp"
#include "qfall/csv.hpp"
#include "qfall/errors.hpp"
#include "qfall/interferometer.hpp"
#include "qfall/moments.hpp"
#include "qfall/potential.hpp"
#include "qfall/presets.hpp"
#include "qfall/trajectory.hpp"
#include "qfall/verify.hpp"
#include "qfall/wavepacket.hpp"
#include "qfall/wigner.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace qfall;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = default_seed;
    std::string units = "si";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "Flat key = value configuration file; command-line flags win");
    cmd->add_option("--out", args.out_dir, "Directory for output files");
    cmd->add_option("--seed", args.seed, "Random seed for sampled quantities");
    cmd->add_option("--units", args.units, "Unit system: si or natural")
        ->check(CLI::IsMember({"si", "natural"}));
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Applies key = value lines to the subcommand's options.  Values given on
// the command line keep precedence; unknown keys are configuration errors.
void apply_flat_config(CLI::App* cmd, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        const std::string entry = trimmed(line);
        if (entry.empty() || entry[0] == '#' || entry[0] == ';' || entry[0] == '[') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key = value: " + entry);
        const std::string key = trimmed(entry.substr(0, eq));
        std::string value = trimmed(entry.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        auto* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config")
            throw std::invalid_argument("unknown config key: " + key);
        if (opt->count() == 0) {
            opt->add_result(value);
            opt->run_callback();
        }
    }
}

void write_text(const fs::path& path, const std::string& text) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << text;
}

void add_provenance(Table& table, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params) {
    table.add_meta("generator", std::string("qfall ") + kVersion);
    table.add_meta("command", command);
    for (const auto& [key, value] : params) table.add_meta(key, value);
}

// ---------------------------------------------------------------- trajectory

struct TrajectoryArgs {
    CommonArgs common;
    double M = 1e3;
    double R = 1.5;
    double t_end = 10.0;
    std::size_t samples = 200;
    bool uniform = false;
    std::vector<double> custom_v;  // vx,vy,vz in m/s; empty -> the three standard cases
    std::vector<double> custom_r;
};

int cmd_trajectory(const TrajectoryArgs& args) {
    const GravitySource src = make_source(preset_G, args.M, args.R);
    const auto model = args.uniform ? GravityModel::uniform(src.g()) : GravityModel::exact(src);
    const double g = src.g();
    const auto times = linspace(0.0, args.t_end, args.samples);

    struct Case {
        std::string name;
        InitialConditions ic;
    };
    std::vector<Case> cases;
    if (!args.custom_v.empty() || !args.custom_r.empty()) {
        InitialConditions ic{{0, 0, 0}, {0, 0, 0}};
        if (args.custom_r.size() == 3)
            ic.r = {args.custom_r[0], args.custom_r[1], args.custom_r[2]};
        if (args.custom_v.size() == 3)
            ic.v = {args.custom_v[0], args.custom_v[1], args.custom_v[2]};
        cases.push_back({"custom", ic});
    } else {
        cases.push_back({"v1-1-1", {{0, 0, 0}, {1e-3, 1e-3, 1e-3}}});
        cases.push_back({"v2-1-1", {{0, 0, 0}, {2e-3, 1e-3, 1e-3}}});
        cases.push_back({"v1-2-1", {{0, 0, 0}, {1e-3, 2e-3, 1e-3}}});
    }

    const fs::path out = args.common.out_dir.empty() ? "." : args.common.out_dir;
    fs::create_directories(out);
    for (const auto& c : cases) {
        const std::vector<std::pair<std::string, std::string>> params = {
            {"M_kg", format_double(args.M)},
            {"R_m", format_double(args.R)},
            {"g_m_s2", format_double(g)},
            {"model", args.uniform ? "uniform" : "exact"},
            {"r0_m", format_double(c.ic.r.x) + "," + format_double(c.ic.r.y) + "," +
                         format_double(c.ic.r.z)},
            {"v0_m_s", format_double(c.ic.v.x) + "," + format_double(c.ic.v.y) + "," +
                           format_double(c.ic.v.z)},
        };

        const auto samples = integrate_exact(model, c.ic, times);

        Table traj;
        add_provenance(traj, "trajectory", params);
        traj.set_columns({"t", "x", "y", "z", "vx", "vy", "vz"});
        for (const auto& s : samples)
            traj.add_row({s.t, s.r.x, s.r.y, s.r.z, s.v.x, s.v.y, s.v.z});
        traj.save((out / ("trajectory_" + c.name + ".csv")).string());

        Table resid;
        add_provenance(resid, "trajectory", params);
        resid.set_columns({"t", "x2_analytic_over_R2", "x2_numeric_over_R2"});
        if (args.uniform) {
            for (const auto& s : samples)
                resid.add_row({s.t, 0.0, s.r.x - x0_term(c.ic, g, s.t)});
        } else {
            for (const auto& s : second_order_residual(model, c.ic, times))
                resid.add_row({s.t, s.analytic, s.numeric});
        }
        resid.save((out / ("residual_" + c.name + ".csv")).string());
    }
    std::cout << "wrote " << cases.size() << " trajectory/residual pairs to " << out.string()
              << "\n";
    return 0;
}

// --------------------------------------------------------------------- phase

struct PhaseArgs {
    CommonArgs common;
    std::string preset = "satellite-1000kg";
    double g_override = -1.0;
    double R_override = -1.0;
    double t_override = -1.0;
    double k_override = -1.0;
    double mass_override = -1.0;
    double sigma_v_override = -1.0;
};

int cmd_phase(const PhaseArgs& args) {
    PhaseScenario sc = phase_preset(args.preset);
    if (args.common.units == "natural") sc = PhaseScenario{"natural", {5.0, 1.0, 1.0, 1.0, 1.0, 800.0}, 0.25};
    if (args.g_override > 0.0) sc.cfg.g = args.g_override;
    if (args.R_override > 0.0) sc.cfg.R = args.R_override;
    if (args.t_override > 0.0) sc.cfg.t = args.t_override;
    if (args.k_override > 0.0) sc.cfg.k = args.k_override;
    if (args.mass_override > 0.0) sc.cfg.m = args.mass_override;
    if (args.sigma_v_override > 0.0) sc.v_rms = args.sigma_v_override;

    const auto p = phase_budget(sc.cfg, sc.moments());
    json doc;
    doc["theta0_rad"] = p.theta0;
    doc["theta0_pi"] = p.theta0 / constants::pi;
    doc["theta_prime_rad"] = p.theta_prime;
    doc["theta_vx_rad"] = p.theta_vx;
    doc["theta_vx2_rad"] = p.theta_vx2;
    doc["theta_vx2_pi"] = p.theta_vx2 / constants::pi;
    doc["ratios"] = {{"vx2_over_0", p.ratio_vx2_over_0}, {"vx2_over_vx", p.ratio_vx2_over_vx}};
    doc["config"] = {{"preset", sc.name},  {"k_1_m", sc.cfg.k},      {"t_s", sc.cfg.t},
                     {"m_kg", sc.cfg.m},   {"hbar_Js", sc.cfg.hbar}, {"g_m_s2", sc.cfg.g},
                     {"R_m", sc.cfg.R},    {"v_rms_m_s", sc.v_rms}};

    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!args.common.out_dir.empty())
        write_text(fs::path(args.common.out_dir) / ("phase_" + sc.name + ".json"), text);
    return 0;
}

// -------------------------------------------------------------------- wigner

struct WignerArgs {
    CommonArgs common;
    double t = 1.0;
    double sigma_x = -1.0;
    double sigma_v = -1.0;
    double M = 1e3;
    double R = 1.5;
    double mass = -1.0;
    std::size_t points = 401;
};

int cmd_wigner(const WignerArgs& args) {
    WignerScenario sc = wigner_default_scenario();
    sc.source = make_source(preset_G, args.M, args.R);
    if (args.common.units == "natural")
        sc = WignerScenario{1.0, 0.5, 1.0, 1.0, make_source(1.0, args.R * args.R, args.R)};
    if (args.sigma_x > 0.0) sc.sigma_x = args.sigma_x;
    if (args.sigma_v > 0.0) sc.sigma_v = args.sigma_v;
    if (args.mass > 0.0) sc.m = args.mass;
    if (args.points < 3) throw std::invalid_argument("wigner: --points must be >= 3");

    const GaussianState1D state{sc.sigma_x, sc.sigma_v};
    const double g = sc.source.g(), R = sc.source.R, t = args.t;
    const double spread = std::sqrt(sc.sigma_x * sc.sigma_x + sc.sigma_v * sc.sigma_v * t * t);
    const double center = -0.5 * g * t * t;
    const double P0 = p0(sc.sigma_v, g, R, sc.m, sc.hbar);

    Table table;
    add_provenance(table, "wigner",
                   {{"sigma_x_m", format_double(sc.sigma_x)},
                    {"sigma_v_m_s", format_double(sc.sigma_v)},
                    {"m_kg", format_double(sc.m)},
                    {"hbar_Js", format_double(sc.hbar)},
                    {"g_m_s2", format_double(g)},
                    {"R_m", format_double(R)},
                    {"t_s", format_double(t)},
                    {"P0_per_m", format_double(P0)}});
    table.set_columns({"x", "P_u", "P_q", "P_total"});
    for (std::size_t i = 0; i < args.points; ++i) {
        const double z =
            -6.0 + 12.0 * static_cast<double>(i) / static_cast<double>(args.points - 1);
        const double x = center + z * spread;
        const double pu = p_uniform(state, x, g, t);
        const double pq = t == 0.0 ? 0.0 : p_quantum(state, x, g, R, sc.m, sc.hbar, t);
        table.add_row({x, pu, pq, pu + pq});
    }

    const fs::path out = args.common.out_dir.empty() ? "." : args.common.out_dir;
    fs::create_directories(out);
    table.save((out / "wigner_profile.csv").string());
    std::cout << "wrote " << (out / "wigner_profile.csv").string()
              << "  (P0 = " << format_double(P0) << " per m)\n";
    return 0;
}

// -------------------------------------------------------------------- verify

struct VerifyArgs {
    CommonArgs common;
    bool quick = false;
    double mutate_vv_coefficient = 0.0;
};

void write_sweep_csv(const fs::path& path) {
    // sigma_v sweep of the split-step oracle at the convergent scenario
    const double g = 1.0, k = 5.0, t = 1.0, R = 800.0, sigma_x = 4.0;
    const auto grid = Grid1D::make(-60.0, 60.0, 2048);
    const auto model = GravityModel::cubic(make_source(1.0, R * R, R));
    const AIConfig cfg{k, t, 1.0, 1.0, g, R};

    Table table;
    add_provenance(table, "verify",
                   {{"scenario", "natural units, g = hbar = m = 1"},
                    {"R_m", format_double(R)},
                    {"k_1_m", format_double(k)},
                    {"t_s", format_double(t)},
                    {"sigma_x_m", format_double(sigma_x)}});
    table.set_columns({"param", "value", "phase_rad", "overlap_modulus"});
    for (double sv : {0.125, 0.25, 0.375}) {
        const double sv_min = 1.0 / (2.0 * sigma_x);
        const double excess = std::max(sv * sv - sv_min * sv_min, 0.0);
        const double chirp = std::sqrt(excess) / sigma_x;
        double phase_sum = 0.0, modulus = 1.0;
        int runs = 0;
        for (double sign : {1.0, -1.0}) {
            auto psi = gaussian_packet(grid, 0.0, 0.0, sigma_x, 1.0, 1.0);
            if (chirp > 0.0) apply_chirp(psi, sign * chirp);
            const auto overlap = branch_overlap(psi, cfg, model, 3000);
            phase_sum += phase_from_overlap(overlap);
            modulus = std::min(modulus, std::abs(overlap));
            ++runs;
            if (chirp == 0.0) break;
        }
        table.add_row_raw("sigma_v," + format_double(sv) + "," +
                          format_double(phase_sum / runs) + "," + format_double(modulus));
    }
    write_text(path, table.to_string());
}

int cmd_verify(const VerifyArgs& args) {
    VerifyOptions opt;
    opt.quick = args.quick;
    opt.mutate_vv_coefficient = args.mutate_vv_coefficient;
    opt.seed = args.common.seed;

    const auto results = run_verification(opt);
    std::cout << format_report(results);
    const bool ok = all_passed(results);
    std::cout << "verification: " << (ok ? "PASS" : "FAIL") << "\n";

    if (!args.common.out_dir.empty()) {
        json doc;
        doc["generator"] = std::string("qfall ") + kVersion;
        doc["options"] = {{"quick", opt.quick}, {"seed", opt.seed},
                          {"mutate_vv_coefficient", opt.mutate_vv_coefficient}};
        // no timings in the file so that identical runs stay byte-identical
        json checks = json::array();
        for (const auto& r : results) {
            checks.push_back({{"name", r.name},
                              {"status", r.pass ? "pass" : (r.gating ? "fail" : "info")},
                              {"gating", r.gating},
                              {"measured", r.measured},
                              {"expected", r.expected},
                              {"tolerance", r.tolerance},
                              {"detail", r.detail}});
        }
        doc["checks"] = checks;
        doc["all_passed"] = ok;
        write_text(fs::path(args.common.out_dir) / "verify_report.json", doc.dump(2) + "\n");
        if (!args.quick) write_sweep_csv(fs::path(args.common.out_dir) / "oracle_sweep.csv");
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-fall, interferometer, and phase-space simulations under "
                 "gravity-gradient field models"};
    app.require_subcommand(1);

    TrajectoryArgs traj_args;
    auto* traj = app.add_subcommand(
        "trajectory", "Integrate free-fall trajectories and second-order residual curves");
    add_common(traj, traj_args.common);
    traj->add_option("--M", traj_args.M, "Source mass (kg)");
    traj->add_option("--R", traj_args.R, "Source distance (m)");
    traj->add_option("--t-end", traj_args.t_end, "Fall duration (s)");
    traj->add_option("--samples", traj_args.samples, "Number of output samples");
    traj->add_flag("--uniform", traj_args.uniform, "Use the uniform-gravity limit");
    traj->add_option("--r0", traj_args.custom_r, "Custom initial position x y z (m)")
        ->expected(3);
    traj->add_option("--v0", traj_args.custom_v, "Custom initial velocity vx vy vz (m/s)")
        ->expected(3);

    PhaseArgs phase_args;
    auto* phase = app.add_subcommand("phase", "Closed-form interferometer phase budget");
    add_common(phase, phase_args.common);
    phase->add_option("--preset", phase_args.preset,
                      "earth | satellite-1000kg | satellite-100kg | magnetic");
    phase->add_option("--g", phase_args.g_override, "Override acceleration (m/s^2)");
    phase->add_option("--R", phase_args.R_override, "Override source distance (m)");
    phase->add_option("--t", phase_args.t_override, "Override stage time (s)");
    phase->add_option("--k", phase_args.k_override, "Override laser wave number (1/m)");
    phase->add_option("--mass", phase_args.mass_override, "Override atom mass (kg)");
    phase->add_option("--sigma-v", phase_args.sigma_v_override,
                      "Override the rms velocity sqrt(<v_x^2>) (m/s)");

    WignerArgs wig_args;
    auto* wig = app.add_subcommand(
        "wigner", "Position densities: uniform-gravity marginal and its quantum correction");
    add_common(wig, wig_args.common);
    wig->add_option("--t", wig_args.t, "Evolution time (s)");
    wig->add_option("--sigma-x", wig_args.sigma_x, "Initial position spread (m)");
    wig->add_option("--sigma-v", wig_args.sigma_v, "Initial velocity spread (m/s)");
    wig->add_option("--M", wig_args.M, "Source mass (kg)");
    wig->add_option("--R", wig_args.R, "Source distance (m)");
    wig->add_option("--mass", wig_args.mass, "Test mass (kg)");
    wig->add_option("--points", wig_args.points, "Grid points across +-6 spreads");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    add_common(verify, verify_args.common);
    verify->add_flag("--quick", verify_args.quick,
                     "Skip the slower oracle checks (split-step and Monte Carlo)");
    verify
        ->add_option("--mutate-vv-coefficient", verify_args.mutate_vv_coefficient,
                     "Development knob: inject a fractional error into the predicted "
                     "velocity-variance coefficient")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
        struct Binding {
            CLI::App* cmd;
            CommonArgs* common;
        };
        const Binding bindings[] = {{traj, &traj_args.common},
                                    {phase, &phase_args.common},
                                    {wig, &wig_args.common},
                                    {verify, &verify_args.common}};
        for (const auto& b : bindings)
            if (b.cmd->parsed() && !b.common->config_path.empty())
                apply_flat_config(b.cmd, b.common->config_path);
        if (traj->parsed()) return cmd_trajectory(traj_args);
        if (phase->parsed()) return cmd_phase(phase_args);
        if (wig->parsed()) return cmd_wigner(wig_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
