#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "lorcomp/gen.hpp"
#include "lorcomp/model.hpp"
#include "lorcomp/rng.hpp"
#include "lorcomp/space.hpp"

using namespace lorcomp;
using gen::Ambient;
using gen::Region;
using gen::SprinkleSpec;
using model::ModelPoint;
using model::ModelSpace;

namespace {

constexpr double kPi = 3.14159265358979323846;

double flat_tau(ModelPoint p, ModelPoint q) {
    double dt = q.t - p.t, dx = q.x - p.x;
    return dt > std::abs(dx) ? std::sqrt(dt * dt - dx * dx) : 0.0;
}

SprinkleSpec base_spec(Ambient a, double param, Region r, std::size_t n,
                       std::uint64_t seed) {
    SprinkleSpec s;
    s.ambient = a;
    s.param = param;
    s.region = r;
    s.count = n;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("cylinder tau: windings, multiplicity, limits") {
    const double L = 2 * kPi;
    auto full = gen::cylinder_tau_full(L, {0, 0}, {4, kPi});
    CHECK(full.tau == doctest::Approx(std::sqrt(16 - kPi * kPi)).epsilon(1e-15));
    CHECK(full.multiplicity == 2);
    // Oracle: enumerate a generous winding range directly.
    double best = 0.0;
    int timelike = 0;
    for (int w = -3; w <= 3; ++w) {
        double v = flat_tau({0, 0}, {4, kPi + w * L});
        best = std::max(best, v);
        if (v > 0) ++timelike;
    }
    CHECK(full.tau == best);
    CHECK(static_cast<int>(full.windings.size()) == timelike);

    // Spacelike on every winding.
    CHECK(gen::cylinder_tau(L, {0, 0}, {1, kPi}) == 0.0);
    CHECK(gen::cylinder_tau_full(L, {0, 0}, {1, kPi}).windings.empty());
    CHECK(gen::cylinder_tau(L, {0, 0}, {-1, 0.1}) == 0.0);

    // Directly above with a huge circumference: plain Minkowski.
    CHECK(gen::cylinder_tau(1e9, {0, 0}, {1, 0}) == 1.0);

    // Always at least the single-winding value; equal for large L.
    rng::Stream rs(5);
    for (int k = 0; k < 500; ++k) {
        ModelPoint p{rs.uniform(-2, 2), rs.uniform(0, L)};
        ModelPoint q{rs.uniform(-2, 6), rs.uniform(0, L)};
        double single = flat_tau(p, q);
        CHECK(gen::cylinder_tau(L, p, q) >= single);
        CHECK(gen::cylinder_tau(1e12, p, q) == single);
    }

    // Invariant under shifting one argument by whole turns.
    for (int k = 0; k < 200; ++k) {
        ModelPoint p{rs.uniform(-1, 1), rs.uniform(-9, 9)};
        ModelPoint q{rs.uniform(-1, 4), rs.uniform(-9, 9)};
        double a = gen::cylinder_tau(L, p, q);
        double b = gen::cylinder_tau(L, p, {q.t, q.x + 17 * L});
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }

    CHECK_THROWS_AS(gen::cylinder_tau(0.0, {0, 0}, {1, 0}),
                    std::invalid_argument);
}

TEST_CASE("flat diamond sprinkle: membership, inherited tau, determinism") {
    auto spec = base_spec(Ambient::minkowski, 0.0,
                          Region::diamond({0, 0}, {4, 0}), 500, 42);
    auto sp = gen::sprinkle(spec);
    REQUIRE(sp.size() == 500);
    CHECK(space::validate_axioms(sp).pass);
    CHECK(sp.provenance() == space::Provenance::inherited);
    CHECK(sp.ambient().kind == space::AmbientKind::minkowski);

    for (std::uint32_t i = 0; i < sp.size(); ++i) {
        ModelPoint p{sp.point(i).t, sp.point(i).x};
        CHECK(flat_tau({0, 0}, p) > 0.0);
        CHECK(flat_tau(p, {4, 0}) > 0.0);
        if (i > 0) CHECK(sp.point(i - 1).t <= sp.point(i).t);
        for (std::uint32_t j = i + 1; j < sp.size(); ++j) {
            ModelPoint q{sp.point(j).t, sp.point(j).x};
            CHECK(sp.tau(i, j) == flat_tau(p, q));
        }
    }

    auto again = gen::sprinkle(spec);
    REQUIRE(again.size() == sp.size());
    for (std::uint32_t i = 0; i < sp.size(); ++i) {
        CHECK(again.point(i).t == sp.point(i).t);
        CHECK(again.point(i).x == sp.point(i).x);
    }
    CHECK(again.all_links() == sp.all_links());

    auto other = gen::sprinkle(base_spec(Ambient::minkowski, 0.0,
                                         Region::diamond({0, 0}, {4, 0}), 500,
                                         43));
    bool same = true;
    for (std::uint32_t i = 0; i < 500 && same; ++i)
        same = other.point(i).t == sp.point(i).t;
    CHECK_FALSE(same);
}

TEST_CASE("tiny counts") {
    auto spec = base_spec(Ambient::minkowski, 0.0,
                          Region::rect(0, 1, 0, 1), 0, 7);
    auto none = gen::sprinkle(spec);
    CHECK(none.size() == 0);
    CHECK(space::validate_axioms(none).pass);

    spec.count = 1;
    auto one = gen::sprinkle(spec);
    CHECK(one.size() == 1);
    CHECK(one.tau(0, 0) == 0.0);
    CHECK(space::validate_axioms(one).pass);
}

TEST_CASE("every ambient validates across seeds and tau modes") {
    std::vector<SprinkleSpec> specs = {
        base_spec(Ambient::minkowski, 0.0, Region::rect(0, 2, -1, 1), 120, 0),
        base_spec(Ambient::ads, -1.0, Region::rect(-0.5, 0.5, -0.6, 0.6), 120,
                  0),
        base_spec(Ambient::ads, -2.5, Region::diamond({-0.6, 0.05}, {0.7, -0.1}),
                  120, 0),
        base_spec(Ambient::desitter, 1.0, Region::rect(-1, 1, 0, 2 * kPi), 120,
                  0),
        base_spec(Ambient::desitter, 0.5, Region::diamond({-1.2, 1.0},
                                                          {1.2, 1.3}),
                  120, 0),
        base_spec(Ambient::cylinder, 3.0, Region::rect(0, 2, 0, 3), 120, 0),
        base_spec(Ambient::cylinder, 3.0, Region::diamond({0, 1}, {2.5, 2.2}),
                  120, 0),
    };
    for (auto& s : specs) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            s.seed = seed;
            s.tau_mode = gen::TauMode::inherited;
            auto sp = gen::sprinkle(s);
            REQUIRE(sp.size() == 120);
            auto rep = space::validate_axioms(sp);
            INFO("ambient " << static_cast<int>(s.ambient) << " seed "
                            << seed);
            CHECK(rep.pass);

            s.tau_mode = gen::TauMode::intrinsic_weighted;
            auto spw = gen::sprinkle(s);
            CHECK(space::validate_axioms(spw).pass);
            CHECK(spw.provenance() == space::Provenance::intrinsic);
            for (std::uint32_t i = 0; i < spw.size(); ++i)
                for (std::uint32_t j = 0; j < spw.size(); ++j)
                    CHECK(spw.tau(i, j) <= sp.tau(i, j) + 1e-12);

            s.tau_mode = gen::TauMode::intrinsic_link;
            auto spc = gen::sprinkle(s);
            CHECK(space::validate_axioms(spc).pass);
        }
    }
}

TEST_CASE("ambient tau matches the model on sprinkled pairs") {
    auto ads = gen::sprinkle(base_spec(Ambient::ads, -1.0,
                                       Region::rect(-0.4, 0.4, -0.5, 0.5), 80,
                                       9));
    ModelSpace m(-1.0);
    for (std::uint32_t i = 0; i < ads.size(); ++i)
        for (std::uint32_t j = i + 1; j < ads.size(); ++j)
            CHECK(ads.tau(i, j) ==
                  m.tau({ads.point(i).t, ads.point(i).x},
                        {ads.point(j).t, ads.point(j).x}));

    auto cyl = gen::sprinkle(base_spec(Ambient::cylinder, 3.0,
                                       Region::rect(0, 2.5, 0, 3), 80, 9));
    for (std::uint32_t i = 0; i < cyl.size(); ++i)
        for (std::uint32_t j = i + 1; j < cyl.size(); ++j)
            CHECK(cyl.tau(i, j) ==
                  gen::cylinder_tau(3.0, {cyl.point(i).t, cyl.point(i).x},
                                    {cyl.point(j).t, cyl.point(j).x}));
}

TEST_CASE("diamond sprinkles stay inside their diamonds") {
    auto ds = gen::sprinkle(base_spec(Ambient::desitter, 0.5,
                                      Region::diamond({-1.2, 1.0}, {1.2, 1.3}),
                                      200, 3));
    ModelSpace m(0.5);
    for (std::uint32_t i = 0; i < ds.size(); ++i) {
        ModelPoint p{ds.point(i).t, ds.point(i).x};
        CHECK(m.tau({-1.2, 1.0}, p) > 0.0);
        CHECK(m.tau(p, {1.2, 1.3}) > 0.0);
    }

    auto cy = gen::sprinkle(base_spec(Ambient::cylinder, 3.0,
                                      Region::diamond({0, 1}, {2.5, 2.2}), 200,
                                      3));
    for (std::uint32_t i = 0; i < cy.size(); ++i) {
        ModelPoint p{cy.point(i).t, cy.point(i).x};
        CHECK(gen::cylinder_tau(3.0, {0, 1}, p) > 0.0);
        CHECK(gen::cylinder_tau(3.0, p, {2.5, 2.2}) > 0.0);
    }
}

TEST_CASE("region volumes") {
    // Flat diamond: closed form.
    auto flat = base_spec(Ambient::minkowski, 0.0,
                          Region::diamond({0, 0.3}, {3, 1.0}), 1, 0);
    double dt = 3.0, dx = 0.7;
    CHECK(gen::region_volume(flat) ==
          doctest::Approx((dt * dt - dx * dx) / 2).epsilon(1e-14));

    // ads rectangle: separable closed form.
    auto ar = base_spec(Ambient::ads, -1.0, Region::rect(-0.5, 0.5, -0.6, 0.6),
                        1, 0);
    CHECK(gen::region_volume(ar) ==
          doctest::Approx(1.0 * 2 * std::tan(0.6)).epsilon(1e-14));

    // ads diamond: against a brute-force grid of the chart density.
    auto ad = base_spec(Ambient::ads, -1.0,
                        Region::diamond({-0.6, 0.05}, {0.7, -0.1}), 1, 0);
    double got = gen::region_volume(ad);
    ModelPoint lo{-0.6, 0.05}, hi{0.7, -0.1};
    double gsum = 0.0;
    const int N = 1500;
    double tlo = lo.t, thi = hi.t, xlo = -1.0, xhi = 1.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            double t = tlo + (a + 0.5) * (thi - tlo) / N;
            double x = xlo + (b + 0.5) * (xhi - xlo) / N;
            if (flat_tau(lo, {t, x}) > 0 && flat_tau({t, x}, hi) > 0)
                gsum += 1.0 / (std::cos(x) * std::cos(x));
        }
    gsum *= (thi - tlo) / N * (xhi - xlo) / N;
    CHECK(got == doctest::Approx(gsum).epsilon(5e-3));

    // Large cylinder: reduces to the flat diamond.
    auto cl = base_spec(Ambient::cylinder, 100.0,
                        Region::diamond({0, 0}, {2, 0.5}), 1, 0);
    CHECK(gen::region_volume(cl) ==
          doctest::Approx((4 - 0.25) / 2).epsilon(1e-6));

    // Small de Sitter diamond: flat limit.
    auto dd = base_spec(Ambient::desitter, 1.0,
                        Region::diamond({-0.01, 0}, {0.01, 0}), 1, 0);
    CHECK(gen::region_volume(dd) ==
          doctest::Approx(0.02 * 0.02 / 2).epsilon(1e-2));

    // Degenerate and invalid regions.
    CHECK_THROWS_AS(gen::region_volume(base_spec(
                        Ambient::minkowski, 0.0,
                        Region::diamond({0, 0}, {1, 2}), 1, 0)),
                    RegionEmpty);
    CHECK_THROWS_AS(gen::region_volume(base_spec(Ambient::minkowski, 0.0,
                                                 Region::rect(1, 0, 0, 1), 1,
                                                 0)),
                    RegionEmpty);
    CHECK_THROWS_AS(gen::region_volume(base_spec(
                        Ambient::ads, -1.0, Region::rect(-1.5, 1.5, -0.5, 0.5),
                        1, 0)),
                    ChartDomainError);
    CHECK_THROWS_AS(gen::region_volume(base_spec(Ambient::ads, 1.0,
                                                 Region::rect(0, 1, 0, 0.5), 1,
                                                 0)),
                    std::invalid_argument);
}

TEST_CASE("density mode hits the Poisson mean") {
    SprinkleSpec s = base_spec(Ambient::minkowski, 0.0,
                               Region::diamond({0, 0}, {2, 0}), 0, 0);
    s.use_density = true;
    s.density = 100.0; // mean 200 per sprinkle
    double mean = s.density * gen::region_volume(s);
    std::uint64_t total = 0;
    const int reps = 120;
    for (int k = 0; k < reps; ++k) {
        s.seed = 1000 + k;
        total += gen::sprinkle(s).size();
    }
    double mu = mean * reps;
    CHECK(std::abs(static_cast<double>(total) - mu) < 5 * std::sqrt(mu));
}

TEST_CASE("count cap") {
    auto s = base_spec(Ambient::minkowski, 0.0, Region::rect(0, 1, 0, 1),
                       gen::kMaxPoints + 1, 0);
    CHECK_THROWS_AS(gen::sprinkle(s), DensityOverflow);
    s.count = 0;
    s.use_density = true;
    s.density = 1e9;
    CHECK_THROWS_AS(gen::sprinkle(s), DensityOverflow);
}

TEST_CASE("fixture: gluing-basic") {
    auto sp = gen::fixture("gluing-basic");
    REQUIRE(sp.size() == 4);
    CHECK(space::validate_axioms(sp).pass);
    // x=0, p=1, y=2, z=3 after time sorting.
    CHECK(sp.tau(0, 1) == 1.0);
    CHECK(sp.tau(0, 3) == 3.0);
    CHECK(sp.tau(1, 3) == 2.0);
    CHECK(sp.tau(1, 2) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(sp.tau(0, 2) == doctest::Approx(std::sqrt(2.16)).epsilon(1e-15));
    CHECK(sp.tau(2, 3) == doctest::Approx(std::sqrt(2.16)).epsilon(1e-15));
    // p lies on the x-z geodesic: the long side is degenerate through p.
    CHECK(sp.tau(0, 1) + sp.tau(1, 3) == sp.tau(0, 3));
}

TEST_CASE("fixture: degenerate-triangle") {
    auto sp = gen::fixture("degenerate-triangle");
    REQUIRE(sp.size() == 3);
    CHECK(sp.tau(0, 2) == sp.tau(0, 1) + sp.tau(1, 2));
    CHECK(sp.tau(0, 2) == 2.0);
    CHECK(space::validate_axioms(sp).pass);
}

TEST_CASE("fixture: cylinder-counterexample") {
    auto sp = gen::fixture("cylinder-counterexample");
    REQUIRE(sp.size() == 5);
    CHECK(space::validate_axioms(sp).pass);
    CHECK(sp.ambient().kind == space::AmbientKind::cylinder);
    const double L = sp.ambient().param;
    CHECK(L == 2 * kPi);

    // Order by time: x=0, p=1, y=2, q=3, z=4.
    double txz = std::sqrt(16 - kPi * kPi);
    CHECK(sp.tau(0, 4) == doctest::Approx(txz).epsilon(1e-15));
    // Two distinct geodesics wrap around the cylinder between x and z.
    ModelPoint x{sp.point(0).t, sp.point(0).x}, z{sp.point(4).t, sp.point(4).x};
    CHECK(gen::cylinder_tau_full(L, x, z).multiplicity == 2);

    // y is the midpoint of the left geodesic, q sits 3/4 along the right.
    CHECK(sp.tau(0, 2) + sp.tau(2, 4) ==
          doctest::Approx(txz).epsilon(1e-14));
    CHECK(sp.tau(0, 3) + sp.tau(3, 4) ==
          doctest::Approx(txz).epsilon(1e-14));
    CHECK(sp.tau(0, 3) == doctest::Approx(0.75 * txz).epsilon(1e-14));
    // p is the midpoint of the x-y side.
    CHECK(sp.tau(0, 1) + sp.tau(1, 2) ==
          doctest::Approx(sp.tau(0, 2)).epsilon(1e-14));
    CHECK(sp.tau(0, 1) == doctest::Approx(sp.tau(0, 2) / 2).epsilon(1e-14));

    // The failure pair: never timelike on the cylinder.
    CHECK(sp.tau(1, 3) == 0.0);
    CHECK_FALSE(sp.causal(1, 3));
}

TEST_CASE("fixture: bonnet-hinges") {
    auto sp = gen::fixture("bonnet-hinges");
    REQUIRE(sp.size() == 4);
    CHECK(space::validate_axioms(sp).pass);
    CHECK(sp.ambient().kind == space::AmbientKind::none);
    CHECK_FALSE(sp.point(0).has_coords);
    const double m = 0.15, t = 1.9, om = 1.2;

    // a=0, x=1, y=2, b=3.
    CHECK(sp.tau(0, 1) == t);
    CHECK(sp.tau(1, 2) == m);
    CHECK(sp.tau(1, 3) == t);

    double p = sp.tau(0, 2), q = sp.tau(2, 3);
    using model::HingeData;
    using model::HingeOrientation;
    double p_want = model::law_of_cosines(
        HingeData{-1.0, t, m, om, HingeOrientation::same});
    double q_want = model::law_of_cosines(
        HingeData{-1.0, m, t, om, HingeOrientation::mixed});
    CHECK(p == p_want);
    CHECK(q == q_want);

    // The strict inequality window the finite-diameter argument runs on,
    // and its conclusion: the configuration forces tau(a,b) beyond 2t.
    CHECK(t > kPi / 2);
    CHECK(t < kPi);
    CHECK(p - q > 2 * m);
    CHECK(p - q < kPi / 4);
    CHECK(p + q > 2 * t);
    CHECK(sp.tau(0, 3) == p + q);
    CHECK(sp.tau(0, 3) > sp.tau(0, 1) + sp.tau(1, 3));
    CHECK(std::cos(t) * std::cos(m) ==
          doctest::Approx(std::cos((p + q) / 2) * std::cos((p - q) / 2))
              .epsilon(1e-12));
}

TEST_CASE("fixture names and unknown fixtures") {
    auto names = gen::fixture_names();
    REQUIRE(names.size() == 4);
    for (const auto& n : names) {
        auto sp = gen::fixture(n);
        CHECK(sp.size() >= 3);
        CHECK(space::validate_axioms(sp).pass);
    }
    CHECK_THROWS_AS(gen::fixture("no-such-fixture"), UnknownFixture);
}
