#include "qfall/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "qfall/constants.hpp"
#include "qfall/errors.hpp"

namespace qfall {

namespace {
constexpr double two_pi = 2.0 * constants::pi;
}

Grid1D Grid1D::make(double x_min, double x_max, std::size_t n) {
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    if (n < 256 || (n & (n - 1)) != 0)
        throw std::invalid_argument("Grid1D: n must be a power of two, at least 256");
    return Grid1D{x_min, x_max, n};
}

double Grid1D::k(std::size_t j) const {
    const double base = two_pi / (static_cast<double>(n) * dx());
    const auto jn = static_cast<std::ptrdiff_t>(j);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    return base * static_cast<double>(jn <= half ? jn : jn - static_cast<std::ptrdiff_t>(n));
}

WavePacket::WavePacket(const Grid1D& grid, double m, double hbar)
    : grid_(grid), psi_(grid.n), m_(m), hbar_(hbar) {
    if (!(m > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("WavePacket: m and hbar must be positive");
}

double WavePacket::norm2() const {
    double s = 0.0;
    for (const auto& a : psi_) s += std::norm(a);
    return s * grid_.dx();
}

void WavePacket::normalize() {
    const double inv = 1.0 / std::sqrt(norm2());
    for (auto& a : psi_) a *= inv;
}

double WavePacket::mean_x() const {
    double m1 = 0.0, m0 = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double w = std::norm(psi_[i]);
        m0 += w;
        m1 += w * grid_.x(i);
    }
    return m1 / m0;
}

double WavePacket::var_x() const {
    const double mu = mean_x();
    double m2 = 0.0, m0 = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double w = std::norm(psi_[i]);
        const double d = grid_.x(i) - mu;
        m0 += w;
        m2 += w * d * d;
    }
    return m2 / m0;
}

namespace {

std::pair<double, double> momentum_moments(const WavePacket& psi) {
    const auto& grid = psi.grid();
    std::vector<std::complex<double>> spec = psi.amplitudes();
    Fft1D fft(grid.n);
    fft.forward(spec.data());
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double w = std::norm(spec[j]);
        const double v = psi.hbar() * grid.k(j) / psi.mass();
        m0 += w;
        m1 += w * v;
        m2 += w * v * v;
    }
    m1 /= m0;
    m2 /= m0;
    return {m1, m2 - m1 * m1};
}

}  // namespace

double WavePacket::mean_v() const { return momentum_moments(*this).first; }
double WavePacket::var_v() const { return momentum_moments(*this).second; }

void WavePacket::check_support() const {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double w = std::norm(psi_[i]);
        const double x = grid_.x(i);
        m0 += w;
        m1 += w * x;
        m2 += w * x * x;
    }
    const double mu = m1 / m0;
    const double sigma = std::sqrt(std::max(m2 / m0 - mu * mu, 0.0));
    if (mu - 8.0 * sigma < grid_.x_min || mu + 8.0 * sigma > grid_.x_max)
        throw NumericalError("wave packet support within 8 sigma of the grid boundary");
}

WavePacket gaussian_packet(const Grid1D& grid, double x0, double v0, double sigma_x, double m,
                           double hbar) {
    if (!(sigma_x > 0.0)) throw std::invalid_argument("gaussian_packet: sigma_x must be > 0");
    if (x0 - 8.0 * sigma_x < grid.x_min || x0 + 8.0 * sigma_x > grid.x_max)
        throw std::invalid_argument("gaussian_packet: packet does not fit the grid");
    WavePacket psi(grid, m, hbar);
    const double kv = m * v0 / hbar;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double dxi = grid.x(i) - x0;
        const double envelope = std::exp(-dxi * dxi / (4.0 * sigma_x * sigma_x));
        psi.amplitudes()[i] = std::polar(envelope, kv * dxi);
    }
    psi.normalize();
    return psi;
}

void apply_kick(WavePacket& psi, double k) {
    const auto& grid = psi.grid();
    for (std::size_t i = 0; i < grid.n; ++i)
        psi.amplitudes()[i] *= std::polar(1.0, k * grid.x(i));
}

void apply_chirp(WavePacket& psi, double b, double center) {
    const auto& grid = psi.grid();
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double d = grid.x(i) - center;
        psi.amplitudes()[i] *= std::polar(1.0, b * d * d / (2.0 * psi.hbar()));
    }
}

void evolve(WavePacket& psi, const GravityModel& model, double T, int n_steps) {
    if (T == 0.0) return;
    if (!(T > 0.0) || n_steps < 1)
        throw std::invalid_argument("evolve: T must be >= 0 and n_steps >= 1");
    const auto& grid = psi.grid();
    const std::size_t n = grid.n;
    const double dt = T / n_steps;
    const double m = psi.mass();
    const double hbar = psi.hbar();

    // Per-step phase tables.
    std::vector<std::complex<double>> kin_full(n), kin_half(n), pot(n);
    double max_kin = 0.0, max_pot = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double k = grid.k(j);
        const double phase = hbar * k * k * dt / (2.0 * m);
        max_kin = std::max(max_kin, std::abs(phase));
        kin_full[j] = std::polar(1.0, -phase);
        kin_half[j] = std::polar(1.0, -0.5 * phase);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = m * potential_axis(model, grid.x(i)) * dt / hbar;
        max_pot = std::max(max_pot, std::abs(phase));
        pot[i] = std::polar(1.0, -phase);
    }
    if (max_kin >= 0.25 * constants::pi || max_pot >= 0.25 * constants::pi)
        throw std::invalid_argument(
            "evolve: step resolution violated (per-step phase >= pi/4); raise n_steps");

    Fft1D fft(n);
    auto* data = psi.amplitudes().data();

    auto kinetic = [&](const std::vector<std::complex<double>>& table) {
        fft.forward(data);
        for (std::size_t j = 0; j < n; ++j) data[j] *= table[j];
        fft.inverse(data);
    };

    kinetic(kin_half);
    for (int step = 0; step < n_steps; ++step) {
        for (std::size_t i = 0; i < n; ++i) data[i] *= pot[i];
        psi.check_support();
        kinetic(step + 1 == n_steps ? kin_half : kin_full);
    }
}

std::complex<double> branch_overlap(const WavePacket& initial, const AIConfig& cfg,
                                    const GravityModel& model, int n_steps_per_stage) {
    WavePacket up = initial;
    apply_kick(up, cfg.k);
    evolve(up, model, cfg.t, n_steps_per_stage);
    apply_kick(up, -cfg.k);
    evolve(up, model, cfg.t, n_steps_per_stage);

    WavePacket down = initial;
    evolve(down, model, cfg.t, n_steps_per_stage);
    apply_kick(down, cfg.k);
    evolve(down, model, cfg.t, n_steps_per_stage);
    apply_kick(down, -cfg.k);

    std::complex<double> overlap = 0.0;
    const auto& a = down.amplitudes();
    const auto& b = up.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
    return overlap * initial.grid().dx();
}

namespace {

double wrap_to_pi(double angle) {
    return std::remainder(angle, two_pi);
}

// Phase of one oracle state; sigma_v targets are reached by +/- chirp pairs
// whose phases are averaged.
double state_phase(const AIConfig& cfg, const GravityModel& model, const Grid1D& grid,
                   const OracleState& s, double target_sigma_v, int n_steps, double* modulus) {
    const double sigma_v_min = cfg.hbar / (2.0 * cfg.m * s.sigma_x);
    double phase_sum = 0.0;
    double mod_min = 1.0;
    int runs = 0;
    double chirp = 0.0;
    if (target_sigma_v > 0.0) {
        if (target_sigma_v < sigma_v_min * (1.0 - 1e-9))
            throw std::invalid_argument(
                "differential_phase: target sigma_v below the uncertainty bound for sigma_x");
        const double excess = std::max(target_sigma_v * target_sigma_v - sigma_v_min * sigma_v_min, 0.0);
        chirp = cfg.m * std::sqrt(excess) / s.sigma_x;
    }
    const int n_signs = chirp > 0.0 ? 2 : 1;
    double first_phase = 0.0;
    for (int sign = 0; sign < n_signs; ++sign) {
        WavePacket psi = gaussian_packet(grid, s.x0, s.v0, s.sigma_x, cfg.m, cfg.hbar);
        if (chirp > 0.0) apply_chirp(psi, sign == 0 ? chirp : -chirp, s.x0);
        const auto overlap = branch_overlap(psi, cfg, model, n_steps);
        double phase = phase_from_overlap(overlap);
        if (runs == 0)
            first_phase = phase;
        else  // unwrap against the first sign so the average is branch-safe
            phase = first_phase + wrap_to_pi(phase - first_phase);
        phase_sum += phase;
        mod_min = std::min(mod_min, std::abs(overlap));
        ++runs;
    }
    if (modulus) *modulus = mod_min;
    return phase_sum / runs;
}

}  // namespace

DifferentialPhaseResult differential_phase(const AIConfig& cfg, const GravityModel& model,
                                           const Grid1D& grid, const OracleState& base,
                                           VaryParam vary, double value_a, double value_b,
                                           int n_steps_per_stage) {
    OracleState sa = base, sb = base;
    double sva = 0.0, svb = 0.0;
    switch (vary) {
        case VaryParam::mean_x:
            sa.x0 = value_a;
            sb.x0 = value_b;
            break;
        case VaryParam::mean_v:
            sa.v0 = value_a;
            sb.v0 = value_b;
            break;
        case VaryParam::sigma_v:
            sva = value_a;
            svb = value_b;
            break;
    }
    DifferentialPhaseResult r{};
    const double pa = state_phase(cfg, model, grid, sa, sva, n_steps_per_stage,
                                  &r.overlap_modulus_a);
    const double pb = state_phase(cfg, model, grid, sb, svb, n_steps_per_stage,
                                  &r.overlap_modulus_b);
    r.delta_phase = wrap_to_pi(pb - pa);
    r.wrap_suspect = std::abs(r.delta_phase) > 0.5 * constants::pi;
    return r;
}

}  // namespace qfall
