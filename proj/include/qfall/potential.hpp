#pragma once

#include <optional>

#include "qfall/vec3.hpp"

namespace qfall {

/// Point source of mass M at distance R from the coordinate origin.  The
/// coordinates used everywhere are displaced: a particle at r = (x, y, z)
/// sits at (R + x, y, z) relative to the source center.
struct GravitySource {
    double G;  // m^3 kg^-1 s^-2
    double M;  // kg
    double R;  // m

    double g() const { return G * M / (R * R); }
};

GravitySource make_source(double G, double M, double R);

enum class FieldKind { exact, cubic, magnetic };

/// A gravitational (or analog) field model: the exact point-source potential,
/// its third-order Taylor expansion, or the 1-D magnetic analog.  A cubic
/// model with 1/R = 0 is the uniform-gravity limit.
class GravityModel {
  public:
    static GravityModel exact(const GravitySource& src);
    static GravityModel cubic(const GravitySource& src);
    static GravityModel uniform(double g);
    static GravityModel magnetic(double g_b, double R);

    FieldKind kind() const { return kind_; }
    double g() const { return g_; }
    double inv_R() const { return inv_R_; }
    bool is_uniform() const { return inv_R_ == 0.0; }
    const std::optional<GravitySource>& source() const { return source_; }

    /// |r|/R, a diagnostic for the validity of the cubic expansion.  Not
    /// enforced anywhere.
    double validity_ratio(const Vec3& r) const;

    /// Distances below floor*R (exact model only) raise NumericalError
    /// instead of returning inf.
    double singularity_floor() const { return singularity_floor_; }
    void set_singularity_floor(double f) { singularity_floor_ = f; }

  private:
    GravityModel(FieldKind kind, double g, double inv_R) : kind_(kind), g_(g), inv_R_(inv_R) {}

    FieldKind kind_;
    double g_;
    double inv_R_;
    std::optional<GravitySource> source_;
    double singularity_floor_ = 1e-12;
};

/// Specific potential (J/kg) of the exact model: -GM/sqrt((R+x)^2+y^2+z^2).
double potential_exact(const GravityModel& model, const Vec3& r);

/// Specific potential of the truncated expansion (constant -GM/R dropped):
///   g x - (g/R) x^2 + (g/2R)(y^2+z^2) + (g/R^2) x^3 - (3g/2R^2)(y^2+z^2) x.
/// The magnetic analog uses the x-only form g_b x - (g_b/R) x^2 + (g_b/R^2) x^3.
double potential_cubic(const GravityModel& model, const Vec3& r);

/// Dispatches to the model's own potential form.
double potential(const GravityModel& model, const Vec3& r);

/// Restriction of the potential to the x axis (y = z = 0).
double potential_axis(const GravityModel& model, double x);

/// Acceleration -grad(potential) for the model's own potential form.
Vec3 acceleration(const GravityModel& model, const Vec3& r);

/// acceleration(model, r) + g e_x, evaluated without cancellation.  This is
/// the part of the field beyond uniform gravity; it vanishes identically for
/// a uniform model and is the quantity the trajectory integrator works with.
Vec3 acceleration_beyond_uniform(const GravityModel& model, const Vec3& r);

/// g_s = G M / R_s^2 at distance R_s from the source center.
double surface_gravity(const GravitySource& src, double R_s);

/// Parameters of the hbar^2-order correction to the phase-space dynamics.
/// When the two-body masses are set, epsilon_q uses the relative-motion form.
struct QuantumCorrectionParams {
    double hbar;  // J s
    double m;     // kg
    std::optional<double> m1;
    std::optional<double> m2;
};

/// epsilon_q = G M hbar^2 / (4 R^4 m^2); with both two-body masses set,
/// hbar^2 G (m1+m2)^3 / (4 R^4 m1^2 m2^2).
double epsilon_q(const QuantumCorrectionParams& params, const GravitySource& src);

/// Acceleration scale g_b = mu0 I M_b / (2 pi R^2 m) of the magnetic analog.
double magnetic_g_b(double mu0, double I, double M_b, double R, double m);

}  // namespace qfall
