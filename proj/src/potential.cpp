#include "qfall/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "qfall/constants.hpp"
#include "qfall/errors.hpp"

namespace qfall {

GravitySource make_source(double G, double M, double R) {
    if (!(G > 0.0) || !(M > 0.0) || !(R > 0.0))
        throw std::invalid_argument("GravitySource requires G > 0, M > 0, R > 0");
    GravitySource src{G, M, R};
    if (!std::isfinite(src.g()) || !(src.g() > 0.0))
        throw std::invalid_argument("GravitySource: derived g = GM/R^2 must be finite and positive");
    return src;
}

GravityModel GravityModel::exact(const GravitySource& src) {
    GravityModel m(FieldKind::exact, src.g(), 1.0 / src.R);
    m.source_ = src;
    return m;
}

GravityModel GravityModel::cubic(const GravitySource& src) {
    GravityModel m(FieldKind::cubic, src.g(), 1.0 / src.R);
    m.source_ = src;
    return m;
}

GravityModel GravityModel::uniform(double g) {
    if (!(g >= 0.0)) throw std::invalid_argument("uniform model requires g >= 0");
    return GravityModel(FieldKind::cubic, g, 0.0);
}

GravityModel GravityModel::magnetic(double g_b, double R) {
    if (!(g_b > 0.0) || !(R > 0.0))
        throw std::invalid_argument("magnetic analog requires g_b > 0 and R > 0");
    return GravityModel(FieldKind::magnetic, g_b, 1.0 / R);
}

double GravityModel::validity_ratio(const Vec3& r) const { return norm(r) * inv_R_; }

namespace {

// Distance factors of the exact field, guarded against the singular point.
struct ExactGeometry {
    double s;       // 2x/R + |r|^2/R^2, so that d^2 = R^2 (1 + s)
    double E;       // (R/d)^3 - 1, computed via expm1/log1p
    double x_over_R;
};

ExactGeometry exact_geometry(const GravityModel& model, const Vec3& r) {
    const double inv_R = model.inv_R();
    const double x_over_R = r.x * inv_R;
    const double s = 2.0 * x_over_R + norm2(r) * inv_R * inv_R;
    if (1.0 + s <= model.singularity_floor() * model.singularity_floor())
        throw NumericalError("exact potential evaluated inside the singularity floor");
    const double E = std::expm1(-1.5 * std::log1p(s));
    return {s, E, x_over_R};
}

}  // namespace

double potential_exact(const GravityModel& model, const Vec3& r) {
    if (model.kind() != FieldKind::exact)
        throw std::invalid_argument("potential_exact requires an exact model");
    const auto& src = *model.source();
    const auto geo = exact_geometry(model, r);
    const double d = src.R * std::sqrt(1.0 + geo.s);
    return -src.G * src.M / d;
}

double potential_cubic(const GravityModel& model, const Vec3& r) {
    if (model.kind() == FieldKind::exact)
        throw std::invalid_argument("potential_cubic requires a cubic or magnetic model");
    const double g = model.g();
    const double inv_R = model.inv_R();
    const double x = r.x;
    if (model.kind() == FieldKind::magnetic)
        return g * x * (1.0 + inv_R * x * (-1.0 + inv_R * x));
    const double yz2 = r.y * r.y + r.z * r.z;
    return g * x - g * inv_R * x * x + 0.5 * g * inv_R * yz2 +
           g * inv_R * inv_R * x * x * x - 1.5 * g * inv_R * inv_R * yz2 * x;
}

double potential(const GravityModel& model, const Vec3& r) {
    return model.kind() == FieldKind::exact ? potential_exact(model, r) : potential_cubic(model, r);
}

double potential_axis(const GravityModel& model, double x) {
    return potential(model, Vec3{x, 0.0, 0.0});
}

Vec3 acceleration_beyond_uniform(const GravityModel& model, const Vec3& r) {
    const double g = model.g();
    const double inv_R = model.inv_R();
    switch (model.kind()) {
        case FieldKind::exact: {
            const auto geo = exact_geometry(model, r);
            // a_x + g = -g [E + (x/R)(1 + E)], a_y = -g (1 + E) y/R
            return {-g * (geo.E + geo.x_over_R * (1.0 + geo.E)),
                    -g * (1.0 + geo.E) * r.y * inv_R,
                    -g * (1.0 + geo.E) * r.z * inv_R};
        }
        case FieldKind::cubic: {
            const double yz2 = r.y * r.y + r.z * r.z;
            const double dx = g * inv_R * (2.0 * r.x - inv_R * (3.0 * r.x * r.x - 1.5 * yz2));
            return {dx,
                    -g * inv_R * r.y * (1.0 - 3.0 * r.x * inv_R),
                    -g * inv_R * r.z * (1.0 - 3.0 * r.x * inv_R)};
        }
        case FieldKind::magnetic:
            return {g * inv_R * r.x * (2.0 - 3.0 * r.x * inv_R), 0.0, 0.0};
    }
    return {};
}

Vec3 acceleration(const GravityModel& model, const Vec3& r) {
    Vec3 a = acceleration_beyond_uniform(model, r);
    a.x -= model.g();
    return a;
}

double surface_gravity(const GravitySource& src, double R_s) {
    if (!(R_s > 0.0)) throw std::invalid_argument("surface_gravity requires R_s > 0");
    return src.G * src.M / (R_s * R_s);
}

double epsilon_q(const QuantumCorrectionParams& params, const GravitySource& src) {
    if (!(params.hbar > 0.0)) throw std::invalid_argument("epsilon_q requires hbar > 0");
    const double R2 = src.R * src.R;
    const double R4 = R2 * R2;
    if (params.m1 && params.m2) {
        const double m1 = *params.m1;
        const double m2 = *params.m2;
        if (!(m1 > 0.0) || !(m2 > 0.0))
            throw std::invalid_argument("epsilon_q two-body masses must be positive");
        const double M = m1 + m2;
        return params.hbar * params.hbar * src.G * M * M * M / (4.0 * R4 * m1 * m1 * m2 * m2);
    }
    if (!(params.m > 0.0)) throw std::invalid_argument("epsilon_q requires m > 0");
    return src.G * src.M * params.hbar * params.hbar / (4.0 * R4 * params.m * params.m);
}

double magnetic_g_b(double mu0, double I, double M_b, double R, double m) {
    if (!(mu0 > 0.0) || !(I >= 0.0) || !(M_b > 0.0) || !(R > 0.0) || !(m > 0.0))
        throw std::invalid_argument("magnetic_g_b requires positive inputs");
    return mu0 * I * M_b / (2.0 * constants::pi * R * R * m);
}

}  // namespace qfall
