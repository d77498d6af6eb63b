#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qfall/interferometer.hpp"
#include "qfall/potential.hpp"

namespace qfall {

/// Uniform spatial grid with the matching FFT momentum grid.  n must be a
/// power of two, at least 256.
struct Grid1D {
    double x_min;
    double x_max;
    std::size_t n;

    static Grid1D make(double x_min, double x_max, std::size_t n);

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }
    double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
    /// Signed FFT wave number of bin j.
    double k(std::size_t j) const;
};

/// Complex amplitudes on a Grid1D plus the particle constants.
class WavePacket {
  public:
    WavePacket(const Grid1D& grid, double m, double hbar);

    const Grid1D& grid() const { return grid_; }
    std::vector<std::complex<double>>& amplitudes() { return psi_; }
    const std::vector<std::complex<double>>& amplitudes() const { return psi_; }
    double mass() const { return m_; }
    double hbar() const { return hbar_; }

    double norm2() const;
    void normalize();
    double mean_x() const;
    double var_x() const;
    /// Momentum-space moments, via FFT.
    double mean_v() const;
    double var_v() const;

    /// Throws NumericalError when the packet support comes closer than
    /// 8 sigma_x to either boundary.
    void check_support() const;

  private:
    Grid1D grid_;
    std::vector<std::complex<double>> psi_;
    double m_;
    double hbar_;
};

/// Normalized Gaussian with <x> = x0, <v> = v0 and position spread sigma_x
/// (minimum uncertainty: sigma_v = hbar / (2 m sigma_x)).
WavePacket gaussian_packet(const Grid1D& grid, double x0, double v0, double sigma_x, double m,
                           double hbar);

/// Instantaneous laser pulse: pointwise multiplication by exp(i k x).
void apply_kick(WavePacket& psi, double k);

/// Quadratic phase exp(i b (x - center)^2 / (2 hbar)): raises the velocity
/// spread at fixed position spread, the idealized standing-wave manipulation
/// of the initial momentum uncertainty.  sigma_v^2 becomes
/// (hbar/2m sigma_x)^2 + (b sigma_x/m)^2 for a packet that had zero chirp.
void apply_chirp(WavePacket& psi, double b, double center = 0.0);

/// Strang-split spectral propagation under the x-axis restriction of the
/// model for duration T in n_steps steps.  Validates that neither the
/// kinetic nor the potential phase advances more than pi/4 per step, and
/// that the packet keeps 8 sigma of clearance from the grid boundary.
void evolve(WavePacket& psi, const GravityModel& model, double T, int n_steps);

/// <down|up> for the three-pulse sequence
///   |up>   = U(t) e^{-ikx} U(t) e^{+ikx} |i>,
///   |down> = e^{-ikx} U(t) e^{+ikx} U(t) |i>.
std::complex<double> branch_overlap(const WavePacket& initial, const AIConfig& cfg,
                                    const GravityModel& model, int n_steps_per_stage);

/// Interferometer phase under the e^{-i theta} convention: uniform gravity
/// gives +g k t^2 (mod 2 pi).
inline double phase_from_overlap(const std::complex<double>& overlap) {
    return -std::arg(overlap);
}

/// Initial packet description for differential measurements.
struct OracleState {
    double x0 = 0.0;
    double v0 = 0.0;
    double sigma_x = 1.0;
};

enum class VaryParam { mean_x, mean_v, sigma_v };

struct DifferentialPhaseResult {
    double delta_phase;  // phase(b) - phase(a), wrapped to (-pi, pi]
    bool wrap_suspect;   // |delta| > pi/2: the 2 pi branch is ambiguous
    double overlap_modulus_a;
    double overlap_modulus_b;
};

/// Phase difference between two initial states differing in one parameter.
/// mean_x / mean_v vary the packet center; sigma_v holds sigma_x fixed and
/// reaches the target spreads by chirping, averaging the +b and -b chirp
/// signs so that correlation-linear phases cancel and only the <v_x^2>
/// dependence survives.
DifferentialPhaseResult differential_phase(const AIConfig& cfg, const GravityModel& model,
                                           const Grid1D& grid, const OracleState& base,
                                           VaryParam vary, double value_a, double value_b,
                                           int n_steps_per_stage);

}  // namespace qfall
