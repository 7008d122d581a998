#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lorcomp/model.hpp"
#include "lorcomp/rng.hpp"
#include "lorcomp/space.hpp"

using namespace lorcomp;
using model::ModelPoint;
using model::ModelSpace;
using space::DiscreteSpace;
using space::TauMatrix;

namespace oracle {

// Covering relation of the chronology order, computed the naive O(n^3) way.
std::vector<std::pair<std::uint32_t, std::uint32_t>>
covering_edges(const DiscreteSpace& sp) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    const std::uint32_t n = static_cast<std::uint32_t>(sp.size());
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            if (!sp.chron(i, j)) continue;
            bool direct = true;
            for (std::uint32_t m = 0; m < n && direct; ++m)
                if (sp.chron(i, m) && sp.chron(m, j)) direct = false;
            if (direct) out.emplace_back(i, j);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Exhaustive longest path over a given edge list (weighted or edge count).
double longest_path(const std::vector<std::pair<std::uint32_t, std::uint32_t>>&
                        edges,
                    const DiscreteSpace& sp, std::uint32_t x, std::uint32_t y,
                    bool weighted) {
    double best = -1.0;
    std::vector<std::uint32_t> stack{x};
    auto rec = [&](auto&& self, std::uint32_t cur, double acc) -> void {
        if (cur == y) {
            if (acc > best) best = acc;
            return;
        }
        for (auto [a, b] : edges)
            if (a == cur)
                self(self, b, acc + (weighted ? sp.tau(a, b) : 1.0));
    };
    rec(rec, x, 0.0);
    return best;
}

} // namespace oracle

namespace {

// Inherited-tau space from explicit coordinates in a model space.
DiscreteSpace inherited(const ModelSpace& m, std::vector<ModelPoint> pts,
                        std::size_t dense_threshold =
                            TauMatrix::kDefaultDenseThreshold) {
    std::sort(pts.begin(), pts.end(),
              [](const ModelPoint& a, const ModelPoint& b) {
                  return a.t < b.t || (a.t == b.t && a.x < b.x);
              });
    const std::size_t n = pts.size();
    std::vector<space::PointRec> recs(n);
    TauMatrix tau(n, dense_threshold);
    for (std::size_t i = 0; i < n; ++i) {
        recs[i] = {true, pts[i].t, pts[i].x};
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = m.tau(pts[i], pts[j]);
            if (v > 0.0)
                tau.set(static_cast<std::uint32_t>(i),
                        static_cast<std::uint32_t>(j), v);
        }
    }
    space::AmbientKind kind = m.curvature() == 0.0 ? space::AmbientKind::minkowski
                              : m.curvature() < 0.0 ? space::AmbientKind::ads
                                                    : space::AmbientKind::desitter;
    return DiscreteSpace::from_ambient(std::move(recs), {kind, m.curvature()},
                                       std::move(tau),
                                       space::Provenance::inherited);
}

std::vector<ModelPoint> flat_diamond_points(std::size_t n, std::uint64_t seed,
                                            double height = 2.0) {
    rng::Stream rs(seed);
    std::vector<ModelPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rs.uniform(), v = rs.uniform();
        pts.push_back({(u + v) / 2.0 * height, (u - v) / 2.0 * height});
    }
    return pts;
}

DiscreteSpace three_chain(double t02) {
    std::vector<space::PointRec> pts(3);
    return DiscreteSpace::from_links(
        std::move(pts), {}, {{0, 1}, {1, 2}},
        {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, t02}});
}

} // namespace

TEST_CASE("three-point chain: reverse triangle pass and fail") {
    auto good = space::validate_axioms(three_chain(2.5));
    CHECK(good.pass);
    REQUIRE(good.checks.size() == 6);
    for (const auto& c : good.checks) {
        CHECK(c.pass);
        CHECK(c.witness.empty());
    }
    CHECK(good.find("reverse-triangle")->checked == 1);

    auto bad = space::validate_axioms(three_chain(1.5));
    CHECK_FALSE(bad.pass);
    const auto* rti = bad.find("reverse-triangle");
    REQUIRE(rti != nullptr);
    CHECK_FALSE(rti->pass);
    CHECK(rti->witness.find("x=0 y=1 z=2") != std::string::npos);
    CHECK(rti->witness.find("tau(x,z)=1.5") != std::string::npos);
    CHECK(rti->witness.find("tau(x,y)+tau(y,z)=2") != std::string::npos);
    // Only the triangle inequality is broken, not the order axioms.
    CHECK(bad.find("antisymmetry")->pass);
    CHECK(bad.find("chron-transitive")->pass);

    // Slack inside the tolerance is accepted.
    CHECK(space::validate_axioms(three_chain(2.0 - 1e-10)).pass);
    CHECK_FALSE(space::validate_axioms(three_chain(2.0 - 1e-6)).pass);
}

TEST_CASE("construction rejects cyclic input") {
    std::vector<space::PointRec> pts(3);
    CHECK_THROWS_AS(DiscreteSpace::from_links(pts, {}, {{0, 1}, {1, 2}, {2, 0}},
                                              {}),
                    CyclicOrder);
    CHECK_THROWS_AS(DiscreteSpace::from_links(pts, {}, {{1, 1}}, {}),
                    CyclicOrder);
    CHECK_THROWS_AS(DiscreteSpace::from_links(pts, {}, {{0, 3}}, {}),
                    FormatError);

    TauMatrix back(2);
    back.set(1, 0, 1.0); // tau positive against the index order
    CHECK_THROWS_AS(DiscreteSpace::from_ambient(
                        std::vector<space::PointRec>(2), {}, std::move(back),
                        space::Provenance::explicit_),
                    CyclicOrder);
}

TEST_CASE("antisymmetry violations are reported, not rejected") {
    std::vector<space::PointRec> pts(2);
    auto sp = DiscreteSpace::from_links(pts, {}, {{0, 1}},
                                        {{0, 1, 1.0}, {1, 0, 1.0}});
    auto rep = space::validate_axioms(sp);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.find("antisymmetry")->pass);
    // tau(1,0) > 0 but 1 does not precede 0 in the order.
    CHECK_FALSE(rep.find("chron-in-causal")->pass);
}

TEST_CASE("transitive reduction keeps only covering links") {
    ModelSpace flat(0.0);
    auto sp = inherited(flat, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK(sp.link_count() == 3);
    auto links = sp.all_links();
    REQUIRE(links.size() == 3);
    CHECK(links[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});
    CHECK(links[1] == std::pair<std::uint32_t, std::uint32_t>{1, 2});
    CHECK(links[2] == std::pair<std::uint32_t, std::uint32_t>{2, 3});
    // Reachability still holds the full order.
    CHECK(sp.causal(0, 3));
    CHECK(sp.causal(0, 2));
    CHECK(sp.chron(0, 3));
    CHECK(sp.tau(0, 3) == 3.0);
}

TEST_CASE("diamond order: lexicographically smallest maximizing chain") {
    // 0 below 1 and 2 (incomparable), both below 3; both routes sum to 2.
    std::vector<space::PointRec> pts(4);
    auto sp = DiscreteSpace::from_links(
        pts, {}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
        {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}, {0, 3, 2.0}});
    CHECK(space::validate_axioms(sp).pass);
    CHECK_FALSE(sp.causal(1, 2));
    CHECK_FALSE(sp.causal(2, 1));

    auto rc = space::geodesic_chain(sp, 0, 3);
    CHECK(rc.chain.vertices == std::vector<std::uint32_t>{0, 1, 3});
    CHECK(rc.chain.tau_length == 2.0);
    CHECK(rc.gap == 0.0);
    CHECK(rc.consecutive_timelike);

    auto tw = space::tau_intrinsic(sp, space::IntrinsicMode::weighted);
    CHECK(tw.get(0, 3) == 2.0);
    auto tc = space::tau_intrinsic(sp, space::IntrinsicMode::link_count);
    CHECK(tc.get(0, 3) == 2.0);
    CHECK(tc.get(0, 1) == 1.0);

    CHECK_THROWS_AS(space::geodesic_chain(sp, 1, 2), NotTimelikeRelated);
    CHECK_THROWS_AS(space::geodesic_chain(sp, 0, 0), NotTimelikeRelated);
    CHECK_THROWS_AS(space::geodesic_chain(sp, 3, 0), NotTimelikeRelated);
}

TEST_CASE("null links participate in chains but flag the realized chain") {
    // 0 -> 1 null, 1 -> 2 timelike; tau(0,2) respects the inequality.
    std::vector<space::PointRec> pts(3);
    auto sp = DiscreteSpace::from_links(pts, {}, {{0, 1}, {1, 2}},
                                        {{1, 2, 1.0}, {0, 2, 1.25}});
    CHECK(space::validate_axioms(sp).pass);
    auto rc = space::geodesic_chain(sp, 0, 2);
    CHECK(rc.chain.vertices == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(rc.chain.tau_length == 1.0);
    CHECK(rc.gap == 0.25);
    CHECK_FALSE(rc.consecutive_timelike);

    // Undercounting tau(0,2) against the null leg is a violation.
    auto bad = DiscreteSpace::from_links(std::vector<space::PointRec>(3), {},
                                         {{0, 1}, {1, 2}},
                                         {{1, 2, 1.0}, {0, 2, 0.5}});
    auto rep = space::validate_axioms(bad);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.find("reverse-triangle")->pass);
}

TEST_CASE("null-pair sweep works on the sampled validation path") {
    // Same broken configuration embedded in a space large enough to take
    // the sampled sweep instead of the exhaustive one.
    const std::size_t n = 601;
    std::vector<space::PointRec> pts(n);
    auto bad = DiscreteSpace::from_links(std::move(pts), {},
                                         {{0, 1}, {1, 2}},
                                         {{1, 2, 1.0}, {0, 2, 0.5}});
    auto rep = space::validate_axioms(bad);
    CHECK_FALSE(rep.pass);
    const auto* rti = rep.find("reverse-triangle");
    REQUIRE(rti != nullptr);
    CHECK_FALSE(rti->pass);
    CHECK(rti->witness.find("x=0 y=1 z=2") != std::string::npos);
}

TEST_CASE("inherited flat diamond passes every axiom") {
    ModelSpace flat(0.0);
    auto sp = inherited(flat, flat_diamond_points(80, 11));
    auto rep = space::validate_axioms(sp);
    CHECK(rep.pass);
    CHECK(rep.points == 80);
    CHECK(rep.find("reverse-triangle")->checked > 1000);
    CHECK(sp.provenance() == space::Provenance::inherited);
    CHECK(sp.all_coords());
}

TEST_CASE("intrinsic tau: bounded by inherited, equal on links, idempotent") {
    ModelSpace ads(-1.0);
    rng::Stream rs(77);
    std::vector<ModelPoint> pts;
    while (pts.size() < 60) {
        ModelPoint p{rs.uniform(-0.65, 0.65), rs.uniform(-0.65, 0.65)};
        if (ads.in_domain(p)) pts.push_back(p);
    }
    auto sp = inherited(ads, pts);
    REQUIRE(space::validate_axioms(sp).pass);

    auto tw = space::tau_intrinsic(sp, space::IntrinsicMode::weighted);
    const std::uint32_t n = static_cast<std::uint32_t>(sp.size());
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            double inh = sp.tau(i, j), intr = tw.get(i, j);
            CHECK(intr <= inh + 1e-12);
            if (intr > 0.0) CHECK(sp.chron(i, j));
        }
    for (auto [a, b] : sp.all_links())
        if (sp.tau(a, b) > 0.0) CHECK(tw.get(a, b) == sp.tau(a, b));

    auto spw = sp.with_tau(tw, space::Provenance::intrinsic);
    CHECK(space::validate_axioms(spw).pass);
    auto tw2 = space::tau_intrinsic(spw, space::IntrinsicMode::weighted);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            CHECK(tw2.get(i, j) == tw.get(i, j));

    // Chains on the intrinsic space realize tau exactly.
    std::size_t tested = 0;
    for (std::uint32_t i = 0; i < n && tested < 25; ++i)
        for (std::uint32_t j = i + 1; j < n && tested < 25; ++j) {
            if (!spw.chron(i, j)) continue;
            auto rc = space::geodesic_chain(spw, i, j);
            CHECK(rc.gap == 0.0);
            CHECK(rc.chain.tau_length == tw.get(i, j));
            ++tested;
        }
    CHECK(tested == 25);

    auto tc = space::tau_intrinsic(sp, space::IntrinsicMode::link_count);
    auto spc = sp.with_tau(tc, space::Provenance::intrinsic);
    auto tc2 = space::tau_intrinsic(spc, space::IntrinsicMode::link_count);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            CHECK(tc2.get(i, j) == tc.get(i, j));
            if (tc.get(i, j) > 0.0)
                CHECK(tc.get(i, j) == std::floor(tc.get(i, j)));
        }
}

TEST_CASE("small spaces against exhaustive path enumeration") {
    ModelSpace flat(0.0);
    for (std::uint64_t seed : {3u, 4u, 5u, 6u}) {
        auto sp = inherited(flat, flat_diamond_points(11, seed));
        auto cov = oracle::covering_edges(sp);
        CHECK(sp.all_links() == cov);

        auto tw = space::tau_intrinsic(sp, space::IntrinsicMode::weighted);
        auto tc = space::tau_intrinsic(sp, space::IntrinsicMode::link_count);
        const std::uint32_t n = static_cast<std::uint32_t>(sp.size());
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) {
                if (!sp.chron(i, j)) {
                    CHECK(tw.get(i, j) == 0.0);
                    continue;
                }
                double w = oracle::longest_path(cov, sp, i, j, true);
                double c = oracle::longest_path(cov, sp, i, j, false);
                CHECK(tw.get(i, j) == doctest::Approx(w).epsilon(1e-14));
                CHECK(tc.get(i, j) == c);
                auto rc = space::geodesic_chain(sp, i, j);
                CHECK(rc.chain.tau_length ==
                      doctest::Approx(w).epsilon(1e-14));
                CHECK(rc.gap >= -1e-12);
                CHECK(rc.chain.vertices.front() == i);
                CHECK(rc.chain.vertices.back() == j);
                for (std::size_t k = 0; k + 1 < rc.chain.vertices.size(); ++k)
                    CHECK(sp.chron(rc.chain.vertices[k],
                                   rc.chain.vertices[k + 1]));
            }
    }
}

TEST_CASE("dense and sparse storage agree") {
    ModelSpace flat(0.0);
    auto pts = flat_diamond_points(50, 21);
    auto dense = inherited(flat, pts);
    auto sparse = inherited(flat, pts, 1); // force sparse rows
    REQUIRE(dense.tau_matrix().dense());
    REQUIRE_FALSE(sparse.tau_matrix().dense());

    CHECK(dense.all_links() == sparse.all_links());
    CHECK(dense.chron_pair_count() == sparse.chron_pair_count());
    const std::uint32_t n = static_cast<std::uint32_t>(dense.size());
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            CHECK(dense.tau(i, j) == sparse.tau(i, j));
            CHECK(dense.causal(i, j) == sparse.causal(i, j));
        }

    auto rd = space::validate_axioms(dense);
    auto rp = space::validate_axioms(sparse);
    CHECK(rd.pass);
    CHECK(rp.pass);

    auto twd = space::tau_intrinsic(dense, space::IntrinsicMode::weighted);
    auto tws = space::tau_intrinsic(sparse, space::IntrinsicMode::weighted);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            CHECK(twd.get(i, j) == tws.get(i, j));

    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (!dense.chron(i, j)) continue;
            auto cd = space::geodesic_chain(dense, i, j);
            auto cs = space::geodesic_chain(sparse, i, j);
            CHECK(cd.chain.vertices == cs.chain.vertices);
            CHECK(cd.chain.tau_length == cs.chain.tau_length);
        }
}

TEST_CASE("interval and diameter") {
    ModelSpace flat(0.0);
    auto sp = inherited(flat, flat_diamond_points(60, 31));
    const std::uint32_t n = static_cast<std::uint32_t>(sp.size());
    // Naive cross-check of the interval query.
    for (std::uint32_t p = 0; p < n; p += 7)
        for (std::uint32_t q = 0; q < n; q += 5) {
            std::vector<std::uint32_t> naive;
            for (std::uint32_t r = 0; r < n; ++r)
                if (sp.chron(p, r) && sp.chron(r, q)) naive.push_back(r);
            CHECK(sp.interval(p, q) == naive);
        }

    double want = 0.0;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            want = std::max(want, sp.tau(i, j));
    CHECK(space::finite_diameter(sp) == want);
    CHECK(want > 0.0);

    // Antichain: equal times, no relations at all.
    auto anti = inherited(flat, {{0, -3}, {0, -1}, {0, 1}, {0, 3}});
    CHECK(space::finite_diameter(anti) == 0.0);
    CHECK(anti.chron_pair_count() == 0);
    CHECK(anti.link_count() == 0);

    DiscreteSpace empty;
    CHECK(space::finite_diameter(empty) == 0.0);
}

TEST_CASE("sampled validation path on a larger inherited diamond") {
    ModelSpace flat(0.0);
    auto sp = inherited(flat, flat_diamond_points(700, 41));
    auto rep = space::validate_axioms(sp);
    CHECK(rep.pass);
    CHECK(rep.find("reverse-triangle")->checked >= 100000);
}

TEST_CASE("construction and queries are deterministic") {
    ModelSpace ds(1.0);
    rng::Stream rs(55);
    std::vector<ModelPoint> pts;
    for (int i = 0; i < 70; ++i)
        pts.push_back({rs.uniform(-1.0, 1.0), rs.uniform(-3.0, 3.0)});
    auto a = inherited(ds, pts);
    auto b = inherited(ds, pts);
    CHECK(a.all_links() == b.all_links());
    auto ra = space::validate_axioms(a);
    auto rb = space::validate_axioms(b);
    REQUIRE(ra.checks.size() == rb.checks.size());
    for (std::size_t k = 0; k < ra.checks.size(); ++k) {
        CHECK(ra.checks[k].pass == rb.checks[k].pass);
        CHECK(ra.checks[k].checked == rb.checks[k].checked);
        CHECK(ra.checks[k].witness == rb.checks[k].witness);
    }
    CHECK(ra.pass);
}
