#include "lorcomp/gen.hpp"

#include <algorithm>
#include <cmath>

#include "lorcomp/rng.hpp"

namespace lorcomp::gen {

using model::ModelPoint;
using model::ModelSpace;
using space::DiscreteSpace;
using space::TauMatrix;

namespace {

constexpr double kPi = 3.14159265358979323846;
// Two windings count as one geodesic when their tau agree to this factor.
constexpr double kMultiplicityRel = 1e-9;

double flat_tau(double dt, double dx) {
    return dt > std::abs(dx) ? std::sqrt(dt * dt - dx * dx) : 0.0;
}

// Null-cone angular radius integrand primitive on the de Sitter cylinder.
double gd(double t) { return std::atan(std::sinh(t)); }

// Arc-overlap measure of two circle intervals with half-widths r1, r2 whose
// centers are separation d apart (period per).
double arc_overlap(double r1, double r2, double d, double per) {
    r1 = std::min(r1, per / 2);
    r2 = std::min(r2, per / 2);
    double lim = 2 * std::min(r1, r2);
    double near = std::clamp(r1 + r2 - d, 0.0, lim);
    double far = std::clamp(r1 + r2 - (per - d), 0.0, lim);
    return std::min(near + far, lim);
}

double wrap_to(double v, double per) { // into (-per/2, per/2]
    double r = v - per * std::round(v / per);
    if (r <= -per / 2) r += per;
    return r;
}

struct DiamondFrame {
    double a, b;     // lightcone extents
    double xl, xr;   // left and right corner x
};

DiamondFrame flat_frame(ModelPoint lo, ModelPoint hi) {
    double dt = hi.t - lo.t, dx = hi.x - lo.x;
    DiamondFrame f;
    f.a = dt + dx;
    f.b = dt - dx;
    f.xl = (lo.x + hi.x - dt) / 2;
    f.xr = (lo.x + hi.x + dt) / 2;
    return f;
}

ModelPoint flat_diamond_sample(ModelPoint lo, const DiamondFrame& f,
                               rng::Stream& rs) {
    double u = rs.uniform(), v = rs.uniform();
    return {lo.t + (u * f.a + v * f.b) / 2, lo.x + (u * f.a - v * f.b) / 2};
}

// integral of (A + B x) sec^2 x
double ads_strip_integral(double A, double B, double x0, double x1) {
    auto F = [&](double x) {
        return (A + B * x) * std::tan(x) + B * std::log(std::cos(x));
    };
    return F(x1) - F(x0);
}

double ads_diamond_volume(ModelPoint lo, ModelPoint hi) {
    // Height between the cones, piecewise linear in x with kinks at the
    // corner abscissas.
    DiamondFrame f = flat_frame(lo, hi);
    double ks[2] = {std::min(lo.x, hi.x), std::max(lo.x, hi.x)};
    double vol = 0.0;
    double xs[4] = {f.xl, ks[0], ks[1], f.xr};
    for (int s = 0; s < 3; ++s) {
        double x0 = xs[s], x1 = xs[s + 1];
        if (!(x1 > x0)) continue;
        double xm = (x0 + x1) / 2;
        // h(x) = (hi.t - |x-hi.x|) - (lo.t + |x-lo.x|), locally A + B x
        // with |x-c| = sgn (x-c), sgn fixed per strip.
        double sgn_l = xm < lo.x ? -1.0 : 1.0;
        double sgn_h = xm < hi.x ? -1.0 : 1.0;
        double A = hi.t - lo.t + sgn_h * hi.x + sgn_l * lo.x;
        double B = -sgn_h - sgn_l;
        vol += ads_strip_integral(A, B, x0, x1);
    }
    return vol;
}

double simpson(double a, double b, int panels, auto&& f) {
    if (!(b > a)) return 0.0;
    double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

void check_ads_patch_rect(const ModelSpace& m, const Region& r) {
    ModelPoint cs[4] = {{r.t0, r.x0}, {r.t0, r.x1}, {r.t1, r.x0}, {r.t1, r.x1}};
    for (const ModelPoint& c : cs)
        if (!m.in_domain(c))
            throw ChartDomainError("region leaves the ads chart patch");
}

void check_ads_patch_diamond(const ModelSpace& m, ModelPoint lo,
                             ModelPoint hi) {
    DiamondFrame f = flat_frame(lo, hi);
    double tl = (lo.t + hi.t - (hi.x - lo.x)) / 2; // t at left corner
    double tr = (lo.t + hi.t + (hi.x - lo.x)) / 2;
    ModelPoint cs[4] = {lo, hi, {tl, f.xl}, {tr, f.xr}};
    for (const ModelPoint& c : cs)
        if (!m.in_domain(c))
            throw ChartDomainError("diamond leaves the ads chart patch");
}

void validate(const SprinkleSpec& spec) {
    switch (spec.ambient) {
    case Ambient::minkowski:
        break;
    case Ambient::ads:
        if (!(spec.param < 0.0))
            throw std::invalid_argument("ads requires K < 0");
        break;
    case Ambient::desitter:
        if (!(spec.param > 0.0))
            throw std::invalid_argument("desitter requires K > 0");
        break;
    case Ambient::cylinder:
        if (!(spec.param > 0.0))
            throw std::invalid_argument("cylinder requires circumference > 0");
        break;
    }
    const Region& r = spec.region;
    if (r.kind == Region::Kind::rect) {
        if (!(r.t1 > r.t0) || !(r.x1 > r.x0))
            throw RegionEmpty("empty chart rectangle");
        if (spec.ambient == Ambient::cylinder &&
            r.x1 - r.x0 > spec.param * (1 + 1e-12))
            throw std::invalid_argument("rectangle wider than the cylinder");
        if (spec.ambient == Ambient::ads)
            check_ads_patch_rect(ModelSpace(spec.param), r);
    } else {
        double t = 0.0;
        switch (spec.ambient) {
        case Ambient::minkowski:
            t = flat_tau(r.hi.t - r.lo.t, r.hi.x - r.lo.x);
            break;
        case Ambient::ads: {
            ModelSpace m(spec.param);
            check_ads_patch_diamond(m, r.lo, r.hi);
            t = m.tau(r.lo, r.hi);
            break;
        }
        case Ambient::desitter:
            t = ModelSpace(spec.param).tau(r.lo, r.hi);
            break;
        case Ambient::cylinder:
            t = cylinder_tau(spec.param, r.lo, r.hi);
            break;
        }
        if (!(t > 0.0))
            throw RegionEmpty("diamond endpoints are not timelike related");
    }
}

} // namespace

WindingTau cylinder_tau_full(double circumference, ModelPoint p,
                             ModelPoint q) {
    if (!(circumference > 0.0))
        throw std::invalid_argument("circumference must be positive");
    const double L = circumference;
    WindingTau out;
    double dt = q.t - p.t;
    if (!(dt > 0.0)) return out;
    double dxr = wrap_to(q.x - p.x, L);
    // Beyond this cutoff the displacement exceeds dt, hence spacelike.
    int W = static_cast<int>(std::ceil(dt / L)) + 1;
    for (int w = -W; w <= W; ++w) {
        double dx = dxr + w * L;
        double tv = flat_tau(dt, dx);
        if (tv > 0.0) out.windings.push_back({w, dx, tv});
    }
    bool have = false;
    int best_w = 0;
    for (const auto& e : out.windings) {
        // Ties prefer the smaller winding magnitude, then the positive one.
        bool better =
            !have || e.tau > out.tau ||
            (e.tau == out.tau && (std::abs(e.w) < std::abs(best_w) ||
                                  (std::abs(e.w) == std::abs(best_w) &&
                                   e.w > best_w)));
        if (better) {
            have = true;
            out.tau = e.tau;
            out.dx = e.dx;
            best_w = e.w;
        }
    }
    for (const auto& e : out.windings)
        if (e.tau >= out.tau * (1 - kMultiplicityRel)) ++out.multiplicity;
    return out;
}

double cylinder_tau(double circumference, ModelPoint p, ModelPoint q) {
    return cylinder_tau_full(circumference, p, q).tau;
}

double region_volume(const SprinkleSpec& spec) {
    validate(spec);
    const Region& r = spec.region;
    if (r.kind == Region::Kind::rect) {
        double dt = r.t1 - r.t0;
        switch (spec.ambient) {
        case Ambient::minkowski:
        case Ambient::cylinder:
            return dt * (r.x1 - r.x0);
        case Ambient::ads:
            return dt * (std::tan(r.x1) - std::tan(r.x0));
        case Ambient::desitter:
            return (std::sinh(r.t1) - std::sinh(r.t0)) * (r.x1 - r.x0);
        }
    }
    ModelPoint lo = r.lo, hi = r.hi;
    switch (spec.ambient) {
    case Ambient::minkowski: {
        DiamondFrame f = flat_frame(lo, hi);
        return f.a * f.b / 2.0;
    }
    case Ambient::ads:
        return ads_diamond_volume(lo, hi);
    case Ambient::desitter:
        return simpson(lo.t, hi.t, 2000, [&](double t) {
            double r1 = gd(t) - gd(lo.t);
            double r2 = gd(hi.t) - gd(t);
            double d = std::abs(wrap_to(hi.x - lo.x, 2 * kPi));
            return std::cosh(t) * arc_overlap(r1, r2, d, 2 * kPi);
        });
    case Ambient::cylinder: {
        double L = spec.param;
        return simpson(lo.t, hi.t, 2000, [&](double t) {
            double d = std::abs(wrap_to(hi.x - lo.x, L));
            return arc_overlap(t - lo.t, hi.t - t, d, L);
        });
    }
    }
    return 0.0;
}

DiscreteSpace sprinkle(const SprinkleSpec& spec) {
    validate(spec);
    rng::Stream rs(spec.seed);
    std::size_t n;
    if (spec.use_density) {
        if (!(spec.density > 0.0))
            throw std::invalid_argument("density must be positive");
        double mean = spec.density * region_volume(spec);
        if (mean > 2.0 * static_cast<double>(kMaxPoints))
            throw DensityOverflow("expected point count exceeds the cap");
        n = static_cast<std::size_t>(rs.poisson(mean));
    } else {
        n = spec.count;
    }
    if (n > kMaxPoints)
        throw DensityOverflow("point count exceeds the cap");

    const Region& r = spec.region;
    std::vector<ModelPoint> pts;
    pts.reserve(n);
    std::uint64_t tries = 0;
    const std::uint64_t try_cap = 10'000'000 + 2000 * std::uint64_t(n);

    if (r.kind == Region::Kind::rect) {
        for (std::size_t i = 0; i < n; ++i) {
            double t, x;
            switch (spec.ambient) {
            case Ambient::ads:
                t = rs.uniform(r.t0, r.t1);
                x = std::atan(rs.uniform(std::tan(r.x0), std::tan(r.x1)));
                break;
            case Ambient::desitter:
                t = std::asinh(rs.uniform(std::sinh(r.t0), std::sinh(r.t1)));
                x = rs.uniform(r.x0, r.x1);
                break;
            default:
                t = rs.uniform(r.t0, r.t1);
                x = rs.uniform(r.x0, r.x1);
            }
            pts.push_back({t, x});
        }
    } else {
        ModelPoint lo = r.lo, hi = r.hi;
        DiamondFrame f = flat_frame(lo, hi);
        switch (spec.ambient) {
        case Ambient::minkowski:
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(flat_diamond_sample(lo, f, rs));
            break;
        case Ambient::ads: {
            double xm = std::max(std::abs(f.xl), std::abs(f.xr));
            double peak = 1.0 / (std::cos(xm) * std::cos(xm));
            while (pts.size() < n) {
                if (++tries > try_cap)
                    throw RegionEmpty("diamond sampling stalled");
                ModelPoint c = flat_diamond_sample(lo, f, rs);
                double w = 1.0 / (std::cos(c.x) * std::cos(c.x));
                if (rs.uniform() * peak <= w) pts.push_back(c);
            }
            break;
        }
        case Ambient::desitter: {
            ModelSpace m(spec.param);
            double slo = std::sinh(lo.t), shi = std::sinh(hi.t);
            while (pts.size() < n) {
                if (++tries > try_cap)
                    throw RegionEmpty("diamond sampling stalled");
                ModelPoint c{std::asinh(rs.uniform(slo, shi)),
                             lo.x + rs.uniform(-kPi, kPi)};
                if (m.tau(lo, c) > 0.0 && m.tau(c, hi) > 0.0)
                    pts.push_back(c);
            }
            break;
        }
        case Ambient::cylinder: {
            double L = spec.param;
            while (pts.size() < n) {
                if (++tries > try_cap)
                    throw RegionEmpty("diamond sampling stalled");
                ModelPoint c{rs.uniform(lo.t, hi.t), rs.uniform(0.0, L)};
                if (cylinder_tau(L, lo, c) > 0.0 &&
                    cylinder_tau(L, c, hi) > 0.0)
                    pts.push_back(c);
            }
            break;
        }
        }
    }

    std::sort(pts.begin(), pts.end(), [](ModelPoint a, ModelPoint b) {
        return a.t < b.t || (a.t == b.t && a.x < b.x);
    });

    std::vector<space::PointRec> recs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        recs[i] = {true, pts[i].t, pts[i].x};

    TauMatrix tau(pts.size());
    if (spec.ambient == Ambient::cylinder) {
        for (std::uint32_t i = 0; i < pts.size(); ++i)
            for (std::uint32_t j = i + 1; j < pts.size(); ++j) {
                double v = cylinder_tau(spec.param, pts[i], pts[j]);
                if (v > 0.0) tau.set(i, j, v);
            }
    } else {
        ModelSpace m(spec.ambient == Ambient::minkowski ? 0.0 : spec.param);
        for (std::uint32_t i = 0; i < pts.size(); ++i)
            for (std::uint32_t j = i + 1; j < pts.size(); ++j) {
                double v = m.tau(pts[i], pts[j]);
                if (v > 0.0) tau.set(i, j, v);
            }
    }

    space::AmbientKind kind;
    switch (spec.ambient) {
    case Ambient::minkowski: kind = space::AmbientKind::minkowski; break;
    case Ambient::ads: kind = space::AmbientKind::ads; break;
    case Ambient::desitter: kind = space::AmbientKind::desitter; break;
    default: kind = space::AmbientKind::cylinder; break;
    }
    double param = spec.ambient == Ambient::minkowski ? 0.0 : spec.param;
    auto sp = DiscreteSpace::from_ambient(std::move(recs), {kind, param},
                                          std::move(tau),
                                          space::Provenance::inherited);
    switch (spec.tau_mode) {
    case TauMode::inherited:
        return sp;
    case TauMode::intrinsic_weighted:
        return sp.with_tau(
            space::tau_intrinsic(sp, space::IntrinsicMode::weighted),
            space::Provenance::intrinsic);
    case TauMode::intrinsic_link:
        return sp.with_tau(
            space::tau_intrinsic(sp, space::IntrinsicMode::link_count),
            space::Provenance::intrinsic);
    }
    return sp;
}

namespace {

DiscreteSpace inherited_fixture(space::AmbientKind kind, double param,
                                const std::vector<ModelPoint>& pts,
                                auto&& tau_fn) {
    std::vector<space::PointRec> recs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        recs[i] = {true, pts[i].t, pts[i].x};
    TauMatrix tau(pts.size());
    for (std::uint32_t i = 0; i < pts.size(); ++i)
        for (std::uint32_t j = i + 1; j < pts.size(); ++j) {
            double v = tau_fn(pts[i], pts[j]);
            if (v > 0.0) tau.set(i, j, v);
        }
    return DiscreteSpace::from_ambient(std::move(recs), {kind, param},
                                       std::move(tau),
                                       space::Provenance::inherited);
}

} // namespace

DiscreteSpace fixture(const std::string& name) {
    if (name == "gluing-basic") {
        // Timelike triangle x, y, z with p on the long side, p timelike
        // before y.
        ModelSpace flat(0.0);
        return inherited_fixture(
            space::AmbientKind::minkowski, 0.0,
            {{0, 0}, {1, 0}, {1.5, 0.3}, {3, 0}},
            [&](ModelPoint a, ModelPoint b) { return flat.tau(a, b); });
    }
    if (name == "degenerate-triangle") {
        // Collinear: tau(x,z) = tau(x,y) + tau(y,z) exactly.
        ModelSpace flat(0.0);
        return inherited_fixture(
            space::AmbientKind::minkowski, 0.0, {{0, 0}, {1, 0}, {2, 0}},
            [&](ModelPoint a, ModelPoint b) { return flat.tau(a, b); });
    }
    if (name == "cylinder-counterexample") {
        // Two geodesics wrap between x and z; y sits on the left one,
        // p and q split the sides so that tau(p,q) = 0 while their
        // flat comparison points are timelike related.
        const double L = 2 * kPi;
        return inherited_fixture(
            space::AmbientKind::cylinder, L,
            {{0, 0},
             {1, 7 * kPi / 4},
             {2, 3 * kPi / 2},
             {3, 3 * kPi / 4},
             {4, kPi}},
            [&](ModelPoint a, ModelPoint b) { return cylinder_tau(L, a, b); });
    }
    if (name == "bonnet-hinges") {
        // Finite-diameter comparison situation in the K=-1 model: a hinge
        // vertex x with a past leg to a (length t), future legs to y
        // (length m) and b (length t), rapidity om between the y and b
        // directions. The far sides come from the law of cosines; tau(a,b)
        // is the least value the reverse triangle inequality permits, and
        // with t past pi/2 it strictly exceeds 2t, so the configuration
        // has no realization by model points. Stored as explicit tau
        // without coordinates.
        const double m = 0.15, t = 1.9, om = 1.2;
        double p = model::law_of_cosines(
            {-1.0, t, m, om, model::HingeOrientation::same});
        double q = model::law_of_cosines(
            {-1.0, m, t, om, model::HingeOrientation::mixed});
        std::vector<space::PointRec> recs(4); // a, x, y, b
        return space::DiscreteSpace::from_links(
            std::move(recs), {space::AmbientKind::none, 0.0},
            {{0, 1}, {1, 2}, {2, 3}},
            {{0, 1, t},
             {1, 2, m},
             {1, 3, t},
             {0, 2, p},
             {2, 3, q},
             {0, 3, p + q}},
            space::Provenance::explicit_);
    }
    throw UnknownFixture("unknown fixture: " + name);
}

std::vector<std::string> fixture_names() {
    return {"gluing-basic", "degenerate-triangle", "cylinder-counterexample",
            "bonnet-hinges"};
}

} // namespace lorcomp::gen
