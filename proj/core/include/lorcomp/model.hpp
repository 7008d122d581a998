#ifndef LORCOMP_MODEL_HPP
#define LORCOMP_MODEL_HPP

#include <limits>

#include "lorcomp/errors.hpp"

// Two-dimensional Lorentzian model spaces of constant curvature K: the
// Minkowski plane (K = 0), de Sitter space (K > 0) and anti-de Sitter space
// (K < 0). These supply the time separation tau, timelike geodesics, the
// timelike law of cosines and comparison angles used by the comparison engine.
//
// Chart conventions. A ModelPoint always carries the coordinates of the
// *unit-curvature* model (K = -1 or K = +1); a nonunit K only rescales tau by
// 1/sqrt(|K|) and leaves the chart untouched.
//
//   K = 0  global plane (t, x), metric -dt^2 + dx^2.
//   K < 0  conformal coordinates (t, x) on anti-de Sitter space, metric
//          (-dt^2 + dx^2)/cos^2(x). By default the space is restricted to the
//          globally hyperbolic diamond |t| + |x| < pi/2, on which tau < pi and
//          causality agrees with the flat causality of the chart. The opt-in
//          "full" mode uses the whole periodic-time hyperboloid instead, where
//          causal curves can loop and tau is +infinity for every distinct pair.
//   K > 0  global coordinates (t, x) on de Sitter space with x the angle
//          around the spatial circle (period 2*pi), metric
//          -dt^2 + cosh^2(t) dx^2.
namespace lorcomp::model {

struct ModelPoint {
    double t = 0.0; // time coordinate
    double x = 0.0; // space coordinate (angle for K > 0)
};

enum class Chart { plane, ads_conformal, ds_global };

// Vertex of a timelike triangle x << y << z at which an angle is taken.
enum class Vertex { past, middle, future };

// Traversal configuration of a hinge.
//   same:  the legs continue through the vertex, one into the past and one
//          into the future; at angle 0 the opposite side has length m + t.
//   mixed: both legs leave the vertex to the same side (a V); at angle 0 the
//          opposite side has length |m - t|.
enum class HingeOrientation { same, mixed };

// Sign convention for signed comparison angles: +1 for an angle measured at
// the middle vertex (a through hinge), -1 at the past or future vertex (a V).
inline int vertex_sign(Vertex v) { return v == Vertex::middle ? +1 : -1; }
inline int orientation_sign(HingeOrientation o) {
    return o == HingeOrientation::same ? +1 : -1;
}

struct HingeData {
    double K = 0.0;
    double m = 0.0;     // length of the first leg (the past leg for `same`)
    double t = 0.0;     // length of the second leg
    double omega = 0.0; // hyperbolic angle between the legs, >= 0
    HingeOrientation orientation = HingeOrientation::same;
};

// D_K: pi/sqrt(-K) for K < 0, +infinity otherwise. Longest-side lengths must
// stay strictly below this for a configuration to be realizable.
double finite_diameter_constant(double K);

class ModelSpace {
public:
    // full_ads selects the periodic-time anti-de Sitter hyperboloid instead of
    // the globally hyperbolic diamond; only meaningful for K < 0.
    explicit ModelSpace(double K, bool full_ads = false);

    double curvature() const { return K_; }
    Chart chart() const { return chart_; }
    double d_max() const { return d_max_; }
    bool full_ads() const { return full_ads_; }

    bool in_domain(ModelPoint p) const;

    // Time separation tau(p, q): 0 unless q lies in the timelike future of p.
    // Throws ChartDomainError if either point is outside the chart domain.
    double tau(ModelPoint p, ModelPoint q) const;

    // q in the timelike (chronological) future of p.
    bool chron(ModelPoint p, ModelPoint q) const { return tau(p, q) > 0.0; }

    // Point at parameter s in [0, 1] on the constant-speed timelike geodesic
    // from p to q: tau(geodesic(p,q,u), geodesic(p,q,v)) = (v-u) tau(p,q).
    // Throws NotTimelikeRelated if tau(p, q) == 0.
    ModelPoint geodesic(ModelPoint p, ModelPoint q, double s) const;

private:
    void require_domain(ModelPoint p) const;

    double K_;
    double scale_; // sqrt(|K|), or 1 for K = 0
    double d_max_;
    Chart chart_;
    bool full_ads_;
};

// Length of the side opposite a hinge with legs m, t and angle omega in the
// model of curvature h.K. Returns 0 when the far endpoints are not timelike
// related; throws ExceedsModelDiameter when K < 0 and the opposite side would
// reach D_K (no realization below the diameter exists).
double law_of_cosines(const HingeData& h);

// Angle of the comparison triangle with side lengths a = tau(x,y),
// b = tau(y,z), c = tau(x,z) at the chosen vertex, as a nonnegative
// hyperbolic angle. Inverse of law_of_cosines on the common domain.
// Throws UnrealizableTriangle when (a, b, c) violates the reverse triangle
// inequality or the size bound c < D_K.
double comparison_angle(const ModelSpace& ms, double a, double b, double c,
                        Vertex vertex);
double comparison_angle(double K, double a, double b, double c, Vertex vertex);

// True when a timelike triangle with these side lengths embeds in the model
// of curvature K: all sides positive, c >= a + b, and c < D_K.
bool realizable(double K, double a, double b, double c);

inline constexpr double kInfiniteDiameter =
    std::numeric_limits<double>::infinity();

} // namespace lorcomp::model

#endif
