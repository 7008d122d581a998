#include "lorcomp/comparison.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "lorcomp/gen.hpp"
#include "lorcomp/rng.hpp"

namespace lorcomp::comparison {

namespace {

constexpr std::array<Side, 3> kSides = {Side::xy, Side::yz, Side::xz};

int side_index(Side s) { return static_cast<int>(s); }

// Chron successors of x in index order.
std::vector<std::uint32_t> successors(const space::DiscreteSpace& sp,
                                      std::uint32_t x) {
    std::vector<std::uint32_t> out;
    const auto& tm = sp.tau_matrix();
    if (const double* r = tm.row(x)) {
        for (std::uint32_t j = 0; j < tm.size(); ++j)
            if (r[j] > 0.0) out.push_back(j);
    } else {
        for (const auto& [j, v] : tm.sparse_row(x))
            if (v > 0.0) out.push_back(j);
    }
    return out;
}

// Pick k distinct indices out of m, seeded, ascending.
std::vector<std::uint32_t> pick_indices(std::size_t m, std::size_t k,
                                        rng::Stream& rs) {
    std::vector<std::uint32_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<std::uint32_t>(i);
    k = std::min(k, m);
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + rs.index(m - i)]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Per-triangle evaluation context. On spaces that inherit tau from an
// ambient model and carry coordinates, side points are evaluated on the
// ambient geodesics between the vertex coordinates, so comparisons measure
// geometry rather than the off-geodesic scatter of chain vertices. All
// other spaces evaluate at chain vertices through the tau matrix.
struct Frame {
    const space::DiscreteSpace& sp;
    const TimelikeTriangle& tri;
    bool exact = false;
    bool cyl = false;
    double circumference = 0.0;
    std::optional<model::ModelSpace> ms;
    std::array<model::ModelPoint, 3> e0{}, e1{};
    std::array<double, 3> dxs{}; // cylinder unrolled displacement per side
    // Chain-vertex samples per side, endpoints included, ascending fraction.
    std::array<std::vector<SidePoint>, 3> verts;

    Frame(const space::DiscreteSpace& s, const TimelikeTriangle& t)
        : sp(s), tri(t) {
        const auto& tag = sp.ambient();
        exact = sp.all_coords() && tag.kind != space::AmbientKind::none &&
                sp.provenance() == space::Provenance::inherited;
        if (exact) {
            for (int i = 0; i < 3; ++i) {
                const auto& p0 = sp.point(tri.side_start(kSides[i]));
                const auto& p1 = sp.point(tri.side_end(kSides[i]));
                e0[i] = {p0.t, p0.x};
                e1[i] = {p1.t, p1.x};
            }
            if (tag.kind == space::AmbientKind::cylinder) {
                cyl = true;
                circumference = tag.param;
                for (int i = 0; i < 3; ++i)
                    dxs[i] =
                        gen::cylinder_tau_full(circumference, e0[i], e1[i]).dx;
            } else {
                ms.emplace(tag.kind == space::AmbientKind::minkowski
                               ? 0.0
                               : tag.param);
            }
        }
        for (int i = 0; i < 3; ++i) {
            const Side s3 = kSides[i];
            const auto& chain = tri.side(s3).vertices;
            const double len = tri.side_length(s3);
            auto& vs = verts[i];
            vs.push_back({s3, 0.0, chain.front()});
            for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
                const std::uint32_t v = chain[k];
                const double t0 = sp.tau(chain.front(), v);
                const double t1 = sp.tau(v, chain.back());
                if (t0 > 0.0 && t1 > 0.0)
                    vs.push_back({s3, std::min(1.0, t0 / len), v});
            }
            vs.push_back({s3, 1.0, chain.back()});
        }
    }

    model::ModelPoint curve(Side s, double f) const {
        const int i = side_index(s);
        if (cyl)
            return {e0[i].t + f * (e1[i].t - e0[i].t), e0[i].x + f * dxs[i]};
        return ms->geodesic(e0[i], e1[i], f);
    }

    void validate(const SidePoint& p) const {
        if (!(p.fraction >= 0.0 && p.fraction <= 1.0))
            throw PairOffTriangle("side fraction outside [0, 1]");
        if (exact) return;
        if (p.vertex == kNoVertex)
            throw PairOffTriangle(
                "side point needs a chain vertex on this space");
        const auto& vs = verts[side_index(p.side)];
        for (const auto& q : vs)
            if (q.vertex == p.vertex) return;
        throw PairOffTriangle("vertex does not lie on the side's chain");
    }

    // Directed time separation between two side points.
    double tau(const SidePoint& p, const SidePoint& q) const {
        if (exact) {
            const model::ModelPoint u = curve(p.side, p.fraction);
            const model::ModelPoint v = curve(q.side, q.fraction);
            if (cyl) return gen::cylinder_tau(circumference, u, v);
            return ms->tau(u, v);
        }
        return sp.tau(p.vertex, q.vertex);
    }
};

// One side traversed away from a chosen vertex; point(h) sits at tau depth
// h from that vertex.
struct Leg {
    Side side;
    bool from_start; // vertex at fraction 0, else at fraction 1
    double length;
};

Leg leg_a(const TimelikeTriangle& t, model::Vertex v) {
    switch (v) {
    case model::Vertex::past: return {Side::xy, true, t.a};
    case model::Vertex::middle: return {Side::xy, false, t.a};
    default: return {Side::yz, false, t.b};
    }
}

Leg leg_b(const TimelikeTriangle& t, model::Vertex v) {
    switch (v) {
    case model::Vertex::past: return {Side::xz, true, t.c};
    case model::Vertex::middle: return {Side::yz, true, t.b};
    default: return {Side::xz, false, t.c};
    }
}

SidePoint vertex_point(const TimelikeTriangle& t, const Leg& leg) {
    const double f = leg.from_start ? 0.0 : 1.0;
    const std::uint32_t v =
        leg.from_start ? t.side_start(leg.side) : t.side_end(leg.side);
    return {leg.side, f, v};
}

// Sample at depth h; snaps to the nearest chain vertex when the space has
// no exact ambient evaluation.
SidePoint leg_point(const Frame& fr, const Leg& leg, double h) {
    double f = leg.from_start ? h / leg.length : 1.0 - h / leg.length;
    f = std::clamp(f, 0.0, 1.0);
    if (fr.exact) return {leg.side, f, kNoVertex};
    const auto& vs = fr.verts[side_index(leg.side)];
    const SidePoint* best = &vs.front();
    for (const auto& q : vs)
        if (std::abs(q.fraction - f) < std::abs(best->fraction - f)) best = &q;
    return *best;
}

// Depth of a leg sample as measured in the space (may differ from the
// requested depth after vertex snapping).
double leg_depth(const Frame& fr, const TimelikeTriangle& t, const Leg& leg,
                 const SidePoint& p) {
    const SidePoint v = vertex_point(t, leg);
    return leg.from_start ? fr.tau(v, p) : fr.tau(p, v);
}

// Signed comparison angle of the sub-triangle spanned by the vertex and the
// samples at depths (ha, hb) along its two legs; nullopt when the samples
// are not timelike related the way a timelike triangle needs.
std::optional<double> angle_at(const Frame& fr, const TimelikeTriangle& t,
                               model::Vertex vertex, double K, double ha,
                               double hb) {
    const Leg A = leg_a(t, vertex), B = leg_b(t, vertex);
    const SidePoint p = leg_point(fr, A, ha);
    const SidePoint q = leg_point(fr, B, hb);
    const double da = leg_depth(fr, t, A, p);
    const double db = leg_depth(fr, t, B, q);
    if (!(da > 0.0) || !(db > 0.0)) return std::nullopt;
    try {
        if (vertex == model::Vertex::middle) {
            const double opp = fr.tau(p, q);
            if (!(opp > 0.0)) return std::nullopt;
            return model::comparison_angle(K, da, db, opp,
                                           model::Vertex::middle);
        }
        if (vertex == model::Vertex::past) {
            const double tpq = fr.tau(p, q);
            if (tpq > 0.0)
                return model::comparison_angle(K, da, tpq, db,
                                               model::Vertex::past);
            const double tqp = fr.tau(q, p);
            if (tqp > 0.0)
                return model::comparison_angle(K, db, tqp, da,
                                               model::Vertex::past);
            return std::nullopt;
        }
        const double tqp = fr.tau(q, p); // q on leg B deeper in the past
        if (tqp > 0.0)
            return model::comparison_angle(K, tqp, da, db,
                                           model::Vertex::future);
        const double tpq = fr.tau(p, q);
        if (tpq > 0.0)
            return model::comparison_angle(K, tpq, db, da,
                                           model::Vertex::future);
        return std::nullopt;
    } catch (const UnrealizableTriangle&) {
        return std::nullopt; // rounding at a degenerate corner
    } catch (const ExceedsModelDiameter&) {
        return std::nullopt;
    }
}

double severity(Direction dir, double margin) {
    return dir == Direction::below ? margin : -margin;
}

void keep_worst(std::vector<Witness>& all, Direction dir,
                ComparisonVerdict& v) {
    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) {
                         return severity(dir, all[i].margin) >
                                severity(dir, all[j].margin);
                     });
    const std::size_t keep = std::min<std::size_t>(5, order.size());
    for (std::size_t i = 0; i < keep; ++i)
        v.witnesses.push_back(all[order[i]]);
    if (!order.empty()) v.worst_margin = all[order[0]].margin;
}

} // namespace

const char* to_string(Side s) {
    switch (s) {
    case Side::xy: return "xy";
    case Side::yz: return "yz";
    default: return "xz";
    }
}

const char* to_string(Direction d) {
    return d == Direction::above ? "above" : "below";
}

const char* to_string(Formulation f) {
    switch (f) {
    case Formulation::triangle: return "triangle";
    case Formulation::monotonicity: return "monotonicity";
    case Formulation::angle: return "angle";
    default: return "hinge";
    }
}

const space::Chain& TimelikeTriangle::side(Side s) const {
    switch (s) {
    case Side::xy: return side_xy;
    case Side::yz: return side_yz;
    default: return side_xz;
    }
}

double TimelikeTriangle::side_length(Side s) const {
    switch (s) {
    case Side::xy: return a;
    case Side::yz: return b;
    default: return c;
    }
}

std::uint32_t TimelikeTriangle::side_start(Side s) const {
    return s == Side::yz ? y : x;
}

std::uint32_t TimelikeTriangle::side_end(Side s) const {
    return s == Side::xy ? y : z;
}

TimelikeTriangle make_triangle(const space::DiscreteSpace& sp, std::uint32_t x,
                               std::uint32_t y, std::uint32_t z) {
    if (!(sp.chron(x, y) && sp.chron(y, z)))
        throw NotTimelikeRelated("triangle vertices must satisfy x << y << z");
    TimelikeTriangle t;
    t.x = x;
    t.y = y;
    t.z = z;
    t.a = sp.tau(x, y);
    t.b = sp.tau(y, z);
    t.c = sp.tau(x, z);
    if (!(t.c > 0.0))
        throw NotTimelikeRelated("tau(x, z) vanishes on a chron-related pair");
    t.side_xy = space::geodesic_chain(sp, x, y).chain;
    t.side_yz = space::geodesic_chain(sp, y, z).chain;
    t.side_xz = space::geodesic_chain(sp, x, z).chain;
    t.degenerate = t.c - (t.a + t.b) < kDegenerateRel * t.c;
    return t;
}

std::vector<TimelikeTriangle>
enumerate_triangles(const space::DiscreteSpace& sp, const TriangleFilter& f,
                    std::size_t budget, std::uint64_t seed) {
    std::vector<TimelikeTriangle> out;
    if (budget == 0 || sp.size() < 3) return out;
    const std::size_t n = sp.size();

    auto admissible = [&](std::uint32_t x, std::uint32_t y,
                          std::uint32_t z) -> bool {
        const double a = sp.tau(x, y);
        if (!(a > 0.0)) return false;
        const double b = sp.tau(y, z);
        if (!(b > 0.0)) return false;
        const double c = sp.tau(x, z);
        if (!model::realizable(f.K, a, b, c)) return false;
        if (std::min(a, b) < f.min_side) return false;
        if (!f.include_degenerate && c - (a + b) < kDegenerateRel * c)
            return false;
        return true;
    };

    std::vector<std::array<std::uint32_t, 3>> triples;
    if (n <= 60) {
        std::vector<std::vector<std::uint32_t>> succ(n);
        for (std::uint32_t i = 0; i < n; ++i) succ[i] = successors(sp, i);
        for (std::uint32_t x = 0; x < n; ++x)
            for (std::uint32_t y : succ[x])
                for (std::uint32_t z : succ[y])
                    if (admissible(x, y, z)) triples.push_back({x, y, z});
    } else {
        std::unordered_set<std::uint64_t> seen;
        auto key = [n](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
            return (std::uint64_t{x} * n + y) * n + z;
        };
        rng::Stream rs(rng::derive_seed(seed, "tri-sample"));
        std::size_t attempts = 64 * budget + 1024;
        while (triples.size() < budget && attempts-- > 0) {
            const std::uint32_t x = static_cast<std::uint32_t>(rs.index(n));
            const auto sx = successors(sp, x);
            if (sx.empty()) continue;
            const std::uint32_t y = sx[rs.index(sx.size())];
            const auto sy = successors(sp, y);
            if (sy.empty()) continue;
            const std::uint32_t z = sy[rs.index(sy.size())];
            if (!seen.insert(key(x, y, z)).second) continue;
            if (admissible(x, y, z)) triples.push_back({x, y, z});
        }
        // Seed near-degenerate triples: the middle vertex drawn from an
        // interval, keeping the candidate closest to a maximizing chain.
        rng::Stream rd(rng::derive_seed(seed, "tri-degen"));
        std::size_t extra = budget / 4 + 8;
        attempts = 16 * extra + 256;
        while (extra > 0 && attempts-- > 0) {
            const std::uint32_t x = static_cast<std::uint32_t>(rd.index(n));
            const auto sx = successors(sp, x);
            if (sx.empty()) continue;
            const std::uint32_t z = sx[rd.index(sx.size())];
            const auto iv = sp.interval(x, z);
            if (iv.empty()) continue;
            std::uint32_t best = iv[rd.index(iv.size())];
            double best_sum = sp.tau(x, best) + sp.tau(best, z);
            for (int k = 0; k < 7; ++k) {
                const std::uint32_t y = iv[rd.index(iv.size())];
                const double s = sp.tau(x, y) + sp.tau(y, z);
                if (s > best_sum) {
                    best = y;
                    best_sum = s;
                }
            }
            if (!seen.insert(key(x, best, z)).second) continue;
            if (admissible(x, best, z)) {
                triples.push_back({x, best, z});
                --extra;
            }
        }
    }

    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    if (triples.size() > budget) {
        rng::Stream rt(rng::derive_seed(seed, "tri-trim"));
        const auto keep = pick_indices(triples.size(), budget, rt);
        std::vector<std::array<std::uint32_t, 3>> trimmed;
        trimmed.reserve(keep.size());
        for (auto i : keep) trimmed.push_back(triples[i]);
        triples.swap(trimmed);
    }

    out.reserve(triples.size());
    for (const auto& [x, y, z] : triples)
        out.push_back(make_triangle(sp, x, y, z));
    return out;
}

ComparisonConfiguration realize_sides(double K, double a, double b, double c) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) ||
        !(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw UnrealizableTriangle("side lengths must be positive and finite");
    const double dk = model::finite_diameter_constant(K);
    if (c >= dk * (1.0 - 1e-12))
        throw UnrealizableTriangle("longest side reaches the model diameter");
    if (c < (a + b) * (1.0 - 1e-12))
        throw UnrealizableTriangle(
            "reverse triangle inequality fails: c < a + b");

    ComparisonConfiguration cfg;
    cfg.K = K;
    cfg.a = a;
    cfg.b = b;
    cfg.c = c;
    // Inside the degeneracy tolerance the realization is made exactly
    // collinear; the side-length error this introduces is below 1e-9 * c.
    const double raw = c - a - b;
    const double deficit = raw < kDegenerateRel * c ? 0.0 : raw;
    if (K == 0.0) {
        const double ty = (c * c + a * a - b * b) / (2.0 * c);
        // Factored discriminant; the direct form ty^2 - a^2 cancels badly
        // near degeneracy.
        const double prod =
            deficit * (c - a + b) * (c + a - b) * (c + a + b);
        const double hx = std::sqrt(std::max(0.0, prod)) / (2.0 * c);
        cfg.xbar = {0.0, 0.0};
        cfg.ybar = {ty, hx};
        cfg.zbar = {c, 0.0};
        return cfg;
    }
    const double s = std::sqrt(std::abs(K));
    const double ah = a * s, bh = b * s, ch = c * s;
    const double h = ch / 2.0;
    const double dh = deficit * s / 2.0;
    const double sh = (ah + bh + ch) / 2.0;
    if (K < 0.0) {
        // Embedded coordinates relative to the time axis endpoints; the
        // transverse part uses a product form stable near degeneracy.
        const double Y0 = (std::cos(ah) + std::cos(bh)) / (2.0 * std::cos(h));
        const double Y1 = (std::cos(bh) - std::cos(ah)) / (2.0 * std::sin(h));
        const double prod = std::sin(sh) * std::sin(dh) * std::sin(sh - ah) *
                            std::sin(sh - bh);
        const double Y2 = std::sqrt(std::max(0.0, prod)) / (0.5 * std::sin(ch));
        cfg.xbar = {-h, 0.0};
        cfg.zbar = {h, 0.0};
        cfg.ybar = {std::atan2(Y1, Y0), std::atan(Y2)};
        return cfg;
    }
    if (ch > 300.0)
        throw UnrealizableTriangle(
            "side too long to realize numerically at this curvature");
    const double Y1 = (std::cosh(ah) + std::cosh(bh)) / (2.0 * std::cosh(h));
    const double Y0 = (std::cosh(ah) - std::cosh(bh)) / (2.0 * std::sinh(h));
    const double prod =
        std::sinh(sh) * std::sinh(dh) * std::sinh(sh - ah) * std::sinh(sh - bh);
    const double Y2 = std::sqrt(std::max(0.0, prod)) / (0.5 * std::sinh(ch));
    cfg.xbar = {-h, 0.0};
    cfg.zbar = {h, 0.0};
    cfg.ybar = {std::asinh(Y0), std::atan2(Y2, Y1)};
    return cfg;
}

ComparisonConfiguration realize_triangle(double K, const TimelikeTriangle& t) {
    return realize_sides(K, t.a, t.b, t.c);
}

model::ModelPoint comparison_point(const ComparisonConfiguration& cfg,
                                   const SidePoint& p) {
    if (!(p.fraction >= 0.0 && p.fraction <= 1.0))
        throw PairOffTriangle("side fraction outside [0, 1]");
    const model::ModelSpace mk(cfg.K);
    switch (p.side) {
    case Side::xy: return mk.geodesic(cfg.xbar, cfg.ybar, p.fraction);
    case Side::yz: return mk.geodesic(cfg.ybar, cfg.zbar, p.fraction);
    default: return mk.geodesic(cfg.xbar, cfg.zbar, p.fraction);
    }
}

std::vector<std::pair<SidePoint, SidePoint>>
default_pairs(const space::DiscreteSpace& sp, const TimelikeTriangle& t,
              std::size_t budget, std::uint64_t seed) {
    std::vector<std::pair<SidePoint, SidePoint>> pairs;
    if (budget == 0) return pairs;
    const Frame fr(sp, t);

    std::array<std::vector<SidePoint>, 3> samples;
    for (int i = 0; i < 3; ++i) {
        std::vector<SidePoint> vs = fr.verts[i];
        if (vs.size() > 14) {
            // Keep the endpoints, subsample the interior.
            rng::Stream rs(rng::derive_seed(seed, "side-vert", i));
            std::vector<SidePoint> mid(vs.begin() + 1, vs.end() - 1);
            const auto keep = pick_indices(mid.size(), 12, rs);
            std::vector<SidePoint> trimmed{vs.front()};
            for (auto k : keep) trimmed.push_back(mid[k]);
            trimmed.push_back(vs.back());
            vs.swap(trimmed);
        }
        if (fr.exact) {
            for (int k = 1; k <= 7; ++k)
                vs.push_back({kSides[i], k / 8.0, kNoVertex});
            rng::Stream rs(rng::derive_seed(seed, "side-grid", i));
            vs.push_back({kSides[i], rs.uniform(), kNoVertex});
            vs.push_back({kSides[i], rs.uniform(), kNoVertex});
        }
        std::stable_sort(vs.begin(), vs.end(),
                         [](const SidePoint& u, const SidePoint& v) {
                             if (u.fraction != v.fraction)
                                 return u.fraction < v.fraction;
                             // vertex-backed samples first, for witnesses
                             return (u.vertex != kNoVertex) >
                                    (v.vertex != kNoVertex);
                         });
        std::vector<SidePoint> dedup;
        for (const auto& p : vs)
            if (dedup.empty() ||
                p.fraction - dedup.back().fraction > 1e-12)
                dedup.push_back(p);
        samples[i] = std::move(dedup);
    }

    auto cross = [&](int i, int j, bool both) {
        for (const auto& p : samples[i])
            for (const auto& q : samples[j]) {
                pairs.emplace_back(p, q);
                if (both) pairs.emplace_back(q, p);
            }
    };
    cross(0, 1, false); // xy vs yz: the xy point always precedes causally
    cross(0, 2, true);
    cross(1, 2, true);

    if (pairs.size() > budget) {
        rng::Stream rs(rng::derive_seed(seed, "pair-trim"));
        const auto keep = pick_indices(pairs.size(), budget, rs);
        std::vector<std::pair<SidePoint, SidePoint>> trimmed;
        trimmed.reserve(keep.size());
        for (auto k : keep) trimmed.push_back(pairs[k]);
        pairs.swap(trimmed);
    }
    return pairs;
}

ComparisonVerdict
compare_triangle(const space::DiscreteSpace& sp, double K, Direction dir,
                 const TimelikeTriangle& t, const ComparisonConfiguration& cfg,
                 const std::vector<std::pair<SidePoint, SidePoint>>& pairs,
                 double tol) {
    auto near = [](double u, double v) {
        return std::abs(u - v) <= 1e-6 * std::max({1.0, std::abs(u),
                                                   std::abs(v)});
    };
    if (cfg.K != K || !near(cfg.a, t.a) || !near(cfg.b, t.b) ||
        !near(cfg.c, t.c))
        throw std::invalid_argument(
            "configuration does not realize the triangle");

    const Frame fr(sp, t);
    const model::ModelSpace mk(K);
    ComparisonVerdict v;
    v.formulation = Formulation::triangle;
    v.direction = dir;
    v.K = K;
    v.tolerance = tol;
    v.x = t.x;
    v.y = t.y;
    v.z = t.z;

    std::vector<Witness> all;
    all.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
        fr.validate(p);
        fr.validate(q);
        const double ts = fr.tau(p, q);
        const double tm = mk.tau(comparison_point(cfg, p),
                                 comparison_point(cfg, q));
        // Chronology implications are gated by the tolerance so that pairs
        // straddling the light cone by rounding noise are not miscounted.
        if (dir == Direction::below) {
            if (ts > tol) {
                ++v.implications_checked;
                if (!(tm > 0.0)) ++v.implications_failed;
            }
        } else {
            if (tm > tol) {
                ++v.implications_checked;
                if (!(ts > 0.0)) ++v.implications_failed;
            }
        }
        all.push_back({p, q, ts, tm, ts - tm});
    }
    v.samples = all.size();
    keep_worst(all, dir, v);
    v.pass = all.empty() || severity(dir, v.worst_margin) <= tol;
    return v;
}

AngleResult measure_angle(const space::DiscreteSpace& sp,
                          const TimelikeTriangle& t, model::Vertex vertex,
                          double K, const AngleOptions& opt) {
    if (!(opt.start_fraction > 0.0 && opt.start_fraction <= 1.0) ||
        opt.levels < 3 || opt.levels > 24)
        throw std::invalid_argument("bad angle options");
    const Frame fr(sp, t);
    const Leg A = leg_a(t, vertex), B = leg_b(t, vertex);

    struct Sched {
        double ra, rb;
    };
    std::vector<Sched> cands;
    if (vertex == model::Vertex::middle) {
        cands.push_back({1.0, 1.0});
    } else {
        // Legs of equal time orientation: only asymmetric depth pairs are
        // timelike related, so search the ratio in powers of two.
        for (double r = 2.0; r <= 512.0; r *= 2.0) {
            cands.push_back({1.0, r});
            cands.push_back({r, 1.0});
        }
    }

    std::vector<double> vals;
    double ratio = 1.0;
    bool found = false;
    for (const auto& sc : cands) {
        const double h0 = opt.start_fraction *
                          std::min(A.length / sc.ra, B.length / sc.rb);
        std::vector<double> trial;
        bool ok = true;
        double h = h0;
        for (int k = 0; k < opt.levels; ++k, h *= 0.5) {
            const auto w = angle_at(fr, t, vertex, K, sc.ra * h, sc.rb * h);
            if (!w) {
                ok = false;
                break;
            }
            trial.push_back(*w);
        }
        if (!ok) continue;
        if (!fr.exact) {
            // Vertex snapping can collapse levels; demand real variation.
            std::vector<double> d(trial);
            std::sort(d.begin(), d.end());
            d.erase(std::unique(d.begin(), d.end()), d.end());
            if (d.size() < 3) continue;
        }
        vals = std::move(trial);
        ratio = sc.rb / sc.ra;
        found = true;
        break;
    }
    if (!found)
        throw AngleUndefined("no admissible shrink schedule at this vertex");

    AngleResult r;
    r.level_values = vals;
    r.levels_used = static_cast<int>(vals.size());
    r.ratio = ratio;
    const std::size_t n = vals.size();
    const double d1 = vals[n - 1] - vals[n - 2];
    const double d0 = vals[n - 2] - vals[n - 3];
    if (std::abs(d1) <= 1e-13) {
        r.angle = vals.back();
        r.error_estimate = std::abs(d1);
    } else if (std::abs(d1) >= std::abs(d0)) {
        if (std::abs(d1) > 10.0 * opt.tol)
            throw NonConvergent("angle levels do not contract");
        r.angle = vals.back();
        r.error_estimate = std::abs(d1);
    } else {
        // Aitken extrapolation of the geometric tail; the reported estimate
        // stays the raw last-two-level delta.
        r.angle = vals[n - 1] - d1 * d1 / (d1 - d0);
        r.error_estimate = std::abs(d1);
    }
    r.angle = std::max(0.0, r.angle);
    r.signed_angle = model::vertex_sign(vertex) * r.angle;
    return r;
}

ComparisonVerdict compare_monotonicity(const space::DiscreteSpace& sp,
                                       double K, Direction dir,
                                       const TimelikeTriangle& t,
                                       model::Vertex vertex,
                                       const std::vector<double>& s_grid,
                                       const std::vector<double>& t_grid,
                                       double tol) {
    if (s_grid.empty() || t_grid.empty())
        throw InsufficientSamples("empty scale grid");
    const Frame fr(sp, t);
    const Leg A = leg_a(t, vertex), B = leg_b(t, vertex);
    auto check_grid = [](const std::vector<double>& g, double len) {
        double prev = 0.0;
        for (double v : g) {
            if (!(v > prev))
                throw std::invalid_argument(
                    "scale grid must be positive and ascending");
            if (v > len * (1.0 + 1e-12))
                throw PairOffTriangle("scale exceeds the leg length");
            prev = v;
        }
    };
    check_grid(s_grid, A.length);
    check_grid(t_grid, B.length);

    const int sign = model::vertex_sign(vertex);
    const std::size_t ns = s_grid.size(), nt = t_grid.size();
    std::vector<std::optional<double>> grid(ns * nt);
    std::size_t admissible = 0;
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            auto w = angle_at(fr, t, vertex, K, s_grid[i], t_grid[j]);
            if (w) {
                grid[i * nt + j] = sign * *w;
                ++admissible;
            }
        }

    ComparisonVerdict v;
    v.formulation = Formulation::monotonicity;
    v.direction = dir;
    v.K = K;
    v.tolerance = tol;
    v.x = t.x;
    v.y = t.y;
    v.z = t.z;
    v.samples = admissible;

    // Wrong-way increment between admissible neighbours along each axis:
    // below wants the signed angle nondecreasing, above nonincreasing.
    std::vector<Witness> moves;
    auto scan = [&](bool rows) {
        const std::size_t outer = rows ? nt : ns;
        const std::size_t inner = rows ? ns : nt;
        for (std::size_t o = 0; o < outer; ++o) {
            std::optional<double> prev;
            for (std::size_t i = 0; i < inner; ++i) {
                const auto& cell =
                    rows ? grid[i * nt + o] : grid[o * nt + i];
                if (!cell) continue;
                if (prev) {
                    const double inc = *cell - *prev;
                    Witness w;
                    w.p = leg_point(fr, A, rows ? s_grid[i] : s_grid[o]);
                    w.q = leg_point(fr, B, rows ? t_grid[o] : t_grid[i]);
                    w.lhs = *prev;
                    w.rhs = *cell;
                    w.margin = dir == Direction::below ? -inc : inc;
                    moves.push_back(w);
                }
                prev = *cell;
            }
        }
    };
    scan(true);
    scan(false);
    if (moves.empty())
        throw InsufficientSamples(
            "no axis has two admissible grid points");

    std::stable_sort(moves.begin(), moves.end(),
                     [](const Witness& u, const Witness& w) {
                         return u.margin > w.margin;
                     });
    v.worst_margin = moves.front().margin;
    const std::size_t keep = std::min<std::size_t>(5, moves.size());
    v.witnesses.assign(moves.begin(), moves.begin() + keep);
    v.pass = v.worst_margin <= tol;
    return v;
}

std::vector<double> default_scale_grid(double leg_length) {
    std::vector<double> g;
    for (int k = 1; k <= 7; ++k) g.push_back(leg_length * k / 8.0);
    return g;
}

ComparisonVerdict compare_angle(const space::DiscreteSpace& sp, double K,
                                Direction dir, const TimelikeTriangle& t,
                                const AngleOptions& aopt, double tol) {
    ComparisonVerdict v;
    v.formulation = Formulation::angle;
    v.direction = dir;
    v.K = K;
    v.tolerance = tol;
    v.x = t.x;
    v.y = t.y;
    v.z = t.z;

    std::vector<Witness> all;
    for (model::Vertex vertex :
         {model::Vertex::past, model::Vertex::middle, model::Vertex::future}) {
        AngleResult ar;
        try {
            ar = measure_angle(sp, t, vertex, K, aopt);
        } catch (const AngleUndefined&) {
            continue;
        } catch (const NonConvergent&) {
            continue;
        }
        const double full = model::vertex_sign(vertex) *
                            model::comparison_angle(K, t.a, t.b, t.c, vertex);
        Witness w;
        w.p = vertex_point(t, leg_a(t, vertex));
        w.q = vertex_point(t, leg_b(t, vertex));
        w.lhs = ar.signed_angle;
        w.rhs = full;
        w.margin = ar.signed_angle - full;
        all.push_back(w);
    }
    if (all.empty())
        throw AngleUndefined("angle limit undefined at every vertex");
    v.samples = all.size();
    keep_worst(all, dir, v);
    v.pass = severity(dir, v.worst_margin) <= tol;
    return v;
}

ComparisonVerdict compare_hinge(const space::DiscreteSpace& sp, double K,
                                Direction dir, const TimelikeTriangle& t,
                                const AngleOptions& aopt, double tol) {
    ComparisonVerdict v;
    v.formulation = Formulation::hinge;
    v.direction = dir;
    v.K = K;
    v.tolerance = tol;
    v.x = t.x;
    v.y = t.y;
    v.z = t.z;

    std::vector<Witness> all;
    for (model::Vertex vertex :
         {model::Vertex::past, model::Vertex::middle, model::Vertex::future}) {
        AngleResult ar;
        try {
            ar = measure_angle(sp, t, vertex, K, aopt);
        } catch (const AngleUndefined&) {
            continue;
        } catch (const NonConvergent&) {
            continue;
        }
        double m_leg, t_leg, far;
        model::HingeOrientation orient;
        switch (vertex) {
        case model::Vertex::middle:
            m_leg = t.a;
            t_leg = t.b;
            far = t.c;
            orient = model::HingeOrientation::same;
            break;
        case model::Vertex::past:
            m_leg = t.a;
            t_leg = t.c;
            far = t.b;
            orient = model::HingeOrientation::mixed;
            break;
        default:
            m_leg = t.b;
            t_leg = t.c;
            far = t.a;
            orient = model::HingeOrientation::mixed;
            break;
        }
        double model_far;
        try {
            model_far =
                model::law_of_cosines({K, m_leg, t_leg, ar.angle, orient});
        } catch (const ExceedsModelDiameter&) {
            model_far = model::finite_diameter_constant(K);
        }
        Witness w;
        w.p = vertex_point(t, leg_a(t, vertex));
        w.q = vertex_point(t, leg_b(t, vertex));
        w.lhs = far;
        w.rhs = model_far;
        w.margin = far - model_far;
        all.push_back(w);
    }
    if (all.empty())
        throw AngleUndefined("angle limit undefined at every vertex");
    v.samples = all.size();
    // The hinge inequality runs opposite to the pairwise one.
    const Direction flipped =
        dir == Direction::below ? Direction::above : Direction::below;
    keep_worst(all, flipped, v);
    v.pass = severity(flipped, v.worst_margin) <= tol;
    return v;
}

std::pair<TimelikeTriangle, TimelikeTriangle>
glue_subdivide(const space::DiscreteSpace& sp, const TimelikeTriangle& t,
               const SidePoint& p) {
    const auto& chain = t.side(p.side).vertices;
    bool interior = false;
    for (std::size_t k = 1; k + 1 < chain.size(); ++k)
        if (chain[k] == p.vertex) {
            interior = true;
            break;
        }
    if (!interior)
        throw PairOffTriangle(
            "subdivision point must be an interior chain vertex of its side");
    const std::uint32_t pv = p.vertex;
    switch (p.side) {
    case Side::xz:
        if (sp.chron(pv, t.y))
            return {make_triangle(sp, t.x, pv, t.y),
                    make_triangle(sp, pv, t.y, t.z)};
        if (sp.chron(t.y, pv))
            return {make_triangle(sp, t.x, t.y, pv),
                    make_triangle(sp, t.y, pv, t.z)};
        throw NotTimelikeRelated(
            "subdivision point incomparable with the middle vertex");
    case Side::xy:
        return {make_triangle(sp, t.x, pv, t.z),
                make_triangle(sp, pv, t.y, t.z)};
    default:
        return {make_triangle(sp, t.x, t.y, pv),
                make_triangle(sp, t.x, pv, t.z)};
    }
}

} // namespace lorcomp::comparison
