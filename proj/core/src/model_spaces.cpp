#include "lorcomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lorcomp::model {

namespace {

constexpr double kPi = std::numbers::pi;

// Trig arguments are kept off the diameter by this margin; values this close
// to D_K are treated as reaching it.
constexpr double kDiameterGuard = 1e-12;

// arcosh arguments may land slightly below 1 on degenerate configurations.
constexpr double kArcoshSlack = 1e-12;

struct Vec3 {
    double v0, v1, v2;
};

// Anti-de Sitter: hyperboloid -X0^2 - X1^2 + X2^2 = -1 in signature (-,-,+).
// Chart map: (t, x) -> (cos t / cos x, sin t / cos x, tan x).
Vec3 ads_embed(ModelPoint p) {
    const double c = std::cos(p.x);
    return {std::cos(p.t) / c, std::sin(p.t) / c, std::tan(p.x)};
}

ModelPoint ads_unembed(const Vec3& P) {
    return {std::atan2(P.v1, P.v0), std::atan(P.v2)};
}

// -<P,Q> for anti-de Sitter, computed in chart terms for stability:
// (cos(dt) - sin x1 sin x2) / (cos x1 cos x2). Equals cos(tau) on timelike
// pairs of the globally hyperbolic diamond.
double ads_cos_tau(ModelPoint p, ModelPoint q) {
    return (std::cos(q.t - p.t) - std::sin(p.x) * std::sin(q.x)) /
           (std::cos(p.x) * std::cos(q.x));
}

// de Sitter: hyperboloid -X0^2 + X1^2 + X2^2 = +1 in signature (-,+,+).
// Chart map: (t, x) -> (sinh t, cosh t cos x, cosh t sin x).
Vec3 ds_embed(ModelPoint p) {
    const double ch = std::cosh(p.t);
    return {std::sinh(p.t), ch * std::cos(p.x), ch * std::sin(p.x)};
}

ModelPoint ds_unembed(const Vec3& P) {
    return {std::asinh(P.v0), std::atan2(P.v2, P.v1)};
}

// <P,Q> for de Sitter; equals cosh(tau) on timelike pairs.
double ds_cosh_tau(ModelPoint p, ModelPoint q) {
    return -std::sinh(p.t) * std::sinh(q.t) +
           std::cosh(p.t) * std::cosh(q.t) * std::cos(q.x - p.x);
}

double guarded_acosh(double x) { return std::acosh(std::max(x, 1.0)); }

bool finite_point(ModelPoint p) {
    return std::isfinite(p.t) && std::isfinite(p.x);
}

} // namespace

double finite_diameter_constant(double K) {
    if (K < 0.0) return kPi / std::sqrt(-K);
    return kInfiniteDiameter;
}

ModelSpace::ModelSpace(double K, bool full_ads)
    : K_(K),
      scale_(K == 0.0 ? 1.0 : std::sqrt(std::abs(K))),
      d_max_(full_ads ? kInfiniteDiameter : finite_diameter_constant(K)),
      chart_(K == 0.0  ? Chart::plane
             : K < 0.0 ? Chart::ads_conformal
                       : Chart::ds_global),
      full_ads_(K < 0.0 && full_ads) {
    if (!std::isfinite(K)) throw ChartDomainError("curvature must be finite");
}

bool ModelSpace::in_domain(ModelPoint p) const {
    if (!finite_point(p)) return false;
    if (chart_ != Chart::ads_conformal) return true;
    if (full_ads_) return std::abs(p.x) < kPi / 2.0;
    return std::abs(p.t) + std::abs(p.x) < kPi / 2.0;
}

void ModelSpace::require_domain(ModelPoint p) const {
    if (!in_domain(p)) throw ChartDomainError("point outside chart domain");
}

double ModelSpace::tau(ModelPoint p, ModelPoint q) const {
    require_domain(p);
    require_domain(q);
    if (K_ == 0.0) {
        const double dt = q.t - p.t;
        const double dx = q.x - p.x;
        if (dt <= std::abs(dx)) return 0.0;
        return std::sqrt(dt * dt - dx * dx);
    }
    if (K_ < 0.0) {
        if (full_ads_) {
            // Periodic time: every distinct pair is joined by causal curves of
            // unbounded length.
            if (p.t == q.t && p.x == q.x) return 0.0;
            return std::numeric_limits<double>::infinity();
        }
        const double dt = q.t - p.t;
        if (dt <= std::abs(q.x - p.x)) return 0.0; // conformally flat causality
        // cos(tau) = -<P,Q>; clamp keeps tau strictly below pi on the diamond.
        const double c =
            std::clamp(ads_cos_tau(p, q), -1.0 + kArcoshSlack, 1.0);
        return std::acos(c) / scale_;
    }
    const double ip = ds_cosh_tau(p, q);
    if (!(q.t > p.t) || ip <= 1.0) return 0.0;
    return std::acosh(ip) / scale_;
}

ModelPoint ModelSpace::geodesic(ModelPoint p, ModelPoint q, double s) const {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("geodesic parameter outside [0, 1]");
    const double tpq = tau(p, q);
    if (tpq <= 0.0)
        throw NotTimelikeRelated("geodesic endpoints not timelike related");
    if (tpq >= d_max_ * (1.0 - kDiameterGuard))
        throw ExceedsModelDiameter("geodesic length reaches D_K");
    if (K_ == 0.0)
        return {p.t + s * (q.t - p.t), p.x + s * (q.x - p.x)};
    const double len = tpq * scale_; // arc length in the unit model
    const double u = s * len;
    if (K_ < 0.0) {
        const Vec3 P = ads_embed(p);
        const Vec3 Q = ads_embed(q);
        const double cl = std::cos(len), sl = std::sin(len);
        const Vec3 T = {(Q.v0 - P.v0 * cl) / sl, (Q.v1 - P.v1 * cl) / sl,
                        (Q.v2 - P.v2 * cl) / sl};
        const double cu = std::cos(u), su = std::sin(u);
        return ads_unembed(
            {P.v0 * cu + T.v0 * su, P.v1 * cu + T.v1 * su, P.v2 * cu + T.v2 * su});
    }
    const Vec3 P = ds_embed(p);
    const Vec3 Q = ds_embed(q);
    const double cl = std::cosh(len), sl = std::sinh(len);
    const Vec3 T = {(Q.v0 - P.v0 * cl) / sl, (Q.v1 - P.v1 * cl) / sl,
                    (Q.v2 - P.v2 * cl) / sl};
    const double cu = std::cosh(u), su = std::sinh(u);
    return ds_unembed(
        {P.v0 * cu + T.v0 * su, P.v1 * cu + T.v1 * su, P.v2 * cu + T.v2 * su});
}

double law_of_cosines(const HingeData& h) {
    if (!(h.m >= 0.0) || !(h.t >= 0.0) || !(h.omega >= 0.0))
        throw std::invalid_argument("hinge legs and angle must be nonnegative");
    const double dk = finite_diameter_constant(h.K);
    if (h.m >= dk * (1.0 - kDiameterGuard) || h.t >= dk * (1.0 - kDiameterGuard))
        throw ExceedsModelDiameter("hinge leg reaches D_K");
    const double sgn = orientation_sign(h.orientation);
    const double ch = std::cosh(h.omega);
    if (h.K == 0.0) {
        const double opp2 =
            h.m * h.m + h.t * h.t + 2.0 * sgn * h.m * h.t * ch;
        return opp2 > 0.0 ? std::sqrt(opp2) : 0.0;
    }
    const double s = std::sqrt(std::abs(h.K));
    const double M = h.m * s, T = h.t * s;
    if (h.K < 0.0) {
        const double v =
            std::cos(M) * std::cos(T) - sgn * std::sin(M) * std::sin(T) * ch;
        if (v >= 1.0) return 0.0; // far endpoints spacelike (V configuration)
        if (v <= -1.0 + kArcoshSlack)
            throw ExceedsModelDiameter("opposite side reaches D_K");
        return std::acos(v) / s;
    }
    const double v =
        std::cosh(M) * std::cosh(T) + sgn * std::sinh(M) * std::sinh(T) * ch;
    if (v <= 1.0) return 0.0; // far endpoints not timelike related
    return std::acosh(v) / s;
}

double comparison_angle(double K, double a, double b, double c, Vertex vertex) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw UnrealizableTriangle("triangle sides must be positive");
    if (!realizable(K, a, b, c))
        throw UnrealizableTriangle(
            "side lengths violate the reverse triangle inequality or size bound");
    // Hinge legs (M, T) adjacent to the vertex and the opposite side.
    double M, T, opp;
    switch (vertex) {
    case Vertex::past:   M = a; T = c; opp = b; break;
    case Vertex::middle: M = a; T = b; opp = c; break;
    default:             M = b; T = c; opp = a; break;
    }
    const double sgn = vertex_sign(vertex);
    double x;
    if (K == 0.0) {
        x = sgn * (opp * opp - M * M - T * T) / (2.0 * M * T);
    } else {
        const double s = std::sqrt(std::abs(K));
        M *= s; T *= s; opp *= s;
        if (K < 0.0)
            x = sgn * (std::cos(M) * std::cos(T) - std::cos(opp)) /
                (std::sin(M) * std::sin(T));
        else
            x = sgn * (std::cosh(opp) - std::cosh(M) * std::cosh(T)) /
                (std::sinh(M) * std::sinh(T));
    }
    if (x < 1.0 - kArcoshSlack)
        throw UnrealizableTriangle("no hinge realizes these side lengths");
    return guarded_acosh(x);
}

double comparison_angle(const ModelSpace& ms, double a, double b, double c,
                        Vertex vertex) {
    return comparison_angle(ms.curvature(), a, b, c, vertex);
}

bool realizable(double K, double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) return false;
    const double dk = finite_diameter_constant(K);
    if (c >= dk * (1.0 - kDiameterGuard)) return false;
    // Reverse triangle inequality with floating-point slack.
    return c >= (a + b) * (1.0 - kArcoshSlack);
}

} // namespace lorcomp::model
