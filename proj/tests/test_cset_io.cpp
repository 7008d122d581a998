#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "lorcomp/cset.hpp"
#include "lorcomp/gen.hpp"
#include "lorcomp/space.hpp"

using namespace lorcomp;
using space::DiscreteSpace;

namespace {

std::string saved(const DiscreteSpace& sp) {
    std::ostringstream os;
    cset::save(sp, os);
    return os.str();
}

DiscreteSpace loaded(const std::string& text) {
    std::istringstream is(text);
    return cset::load(is);
}

void check_equal(const DiscreteSpace& a, const DiscreteSpace& b) {
    REQUIRE(a.size() == b.size());
    CHECK(a.provenance() == b.provenance());
    CHECK(a.ambient().kind == b.ambient().kind);
    CHECK(a.ambient().param == b.ambient().param);
    for (std::uint32_t i = 0; i < a.size(); ++i) {
        CHECK(a.point(i).has_coords == b.point(i).has_coords);
        if (a.point(i).has_coords) {
            CHECK(a.point(i).t == b.point(i).t);
            CHECK(a.point(i).x == b.point(i).x);
        }
    }
    CHECK(a.all_links() == b.all_links());
    for (std::uint32_t i = 0; i < a.size(); ++i)
        for (std::uint32_t j = 0; j < a.size(); ++j) {
            CHECK(a.tau(i, j) == b.tau(i, j));
            CHECK(a.causal(i, j) == b.causal(i, j));
        }
}

} // namespace

TEST_CASE("round trip: sprinkled spaces, bit-exact") {
    gen::SprinkleSpec s;
    s.ambient = gen::Ambient::ads;
    s.param = -1.0;
    s.region = gen::Region::diamond({-0.5, 0.0}, {0.6, 0.1});
    s.count = 80;
    s.seed = 12;
    auto sp = gen::sprinkle(s);

    std::string text = saved(sp);
    auto back = loaded(text);
    check_equal(sp, back);
    // Canonical writer: serialize(load(serialize(x))) is stable.
    CHECK(saved(back) == text);

    s.ambient = gen::Ambient::cylinder;
    s.param = 3.0;
    s.region = gen::Region::rect(0, 2, 0, 3);
    auto cy = gen::sprinkle(s);
    check_equal(cy, loaded(saved(cy)));
}

TEST_CASE("round trip: fixtures and coordinate-free spaces") {
    for (const auto& name : gen::fixture_names()) {
        auto sp = gen::fixture(name);
        check_equal(sp, loaded(saved(sp)));
    }

    std::vector<space::PointRec> pts(3); // no coordinates
    auto sp = DiscreteSpace::from_links(pts, {}, {{0, 1}, {1, 2}},
                                        {{0, 1, 1.0}, {1, 2, 1.0},
                                         {0, 2, 2.5}});
    auto back = loaded(saved(sp));
    check_equal(sp, back);
    CHECK_FALSE(back.point(0).has_coords);
}

TEST_CASE("empty space round trip") {
    DiscreteSpace empty = DiscreteSpace::from_links({}, {}, {}, {});
    auto back = loaded(saved(empty));
    CHECK(back.size() == 0);
}

TEST_CASE("comments, blank lines, token layout") {
    auto sp = loaded("# leading comment\n"
                     "\n"
                     "lorcomp-cset v1\n"
                     "# another\n"
                     "provenance explicit\n"
                     "points 2\n"
                     "0 0 0   # inline comment\n"
                     "1 1 0\n"
                     "links 1\n"
                     "0 1\n"
                     "tau 1\n"
                     "0 1 1\n");
    CHECK(sp.size() == 2);
    CHECK(sp.tau(0, 1) == 1.0);
    CHECK(sp.causal(0, 1));
}

TEST_CASE("missing tau section: ambient recomputation") {
    auto sp = loaded("lorcomp-cset v1\n"
                     "ambient minkowski\n"
                     "points 3\n"
                     "0 0 0\n"
                     "1 1 0\n"
                     "2 2 0\n"
                     "links 2\n"
                     "0 1\n"
                     "1 2\n");
    CHECK(sp.provenance() == space::Provenance::inherited);
    CHECK(sp.tau(0, 1) == 1.0);
    CHECK(sp.tau(0, 2) == 2.0); // closure pair recomputed from the chart
    CHECK(space::validate_axioms(sp).pass);

    auto cyl = loaded("lorcomp-cset v1\n"
                      "ambient cylinder 6.283185307179586\n"
                      "points 2\n"
                      "0 0 0\n"
                      "1 4 3.141592653589793\n"
                      "links 1\n"
                      "0 1\n");
    CHECK(cyl.tau(0, 1) ==
          doctest::Approx(std::sqrt(16 - 9.8696044010893586)).epsilon(1e-12));
}

TEST_CASE("missing tau section without ambient: link counting") {
    auto sp = loaded("lorcomp-cset v1\n"
                     "points 3\n"
                     "0 -\n"
                     "1 -\n"
                     "2 -\n"
                     "links 2\n"
                     "0 1\n"
                     "1 2\n");
    CHECK(sp.provenance() == space::Provenance::intrinsic);
    CHECK(sp.tau(0, 1) == 1.0);
    CHECK(sp.tau(0, 2) == 2.0);
}

TEST_CASE("redundant links are reduced on load") {
    auto sp = loaded("lorcomp-cset v1\n"
                     "points 3\n"
                     "0 -\n"
                     "1 -\n"
                     "2 -\n"
                     "links 3\n"
                     "0 1\n"
                     "1 2\n"
                     "0 2\n" // implied, dropped by reduction
                     "tau 3\n"
                     "0 1 1\n"
                     "1 2 1\n"
                     "0 2 2\n");
    CHECK(sp.link_count() == 2);
    CHECK(sp.causal(0, 2));
}

TEST_CASE("format errors carry line numbers") {
    CHECK_THROWS_AS(loaded("nonsense v1\npoints 0\n"), FormatError);
    CHECK_THROWS_AS(loaded(""), FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v2\npoints 0\n"), FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\nwhatever 3\n"), FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\npoints 2\n0 0 0\n"), FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\npoints 2\n1 0 0\n0 1 0\n"),
                    FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\npoints 1\n0 0 0\nlinks 1\n0 5\n"),
                    FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\nambient ads 1\npoints 0\n"),
                    FormatError);
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\npoints 1\n0 zero 0\n"),
                    FormatError);
    CHECK_THROWS_AS(
        loaded("lorcomp-cset v1\nlinks 1\n0 1\npoints 2\n0 -\n1 -\n"),
        FormatError);

    try {
        loaded("lorcomp-cset v1\npoints 1\n0 zero 0\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("cycles in the link section fail to construct") {
    CHECK_THROWS_AS(loaded("lorcomp-cset v1\npoints 2\n0 -\n1 -\n"
                           "links 2\n0 1\n1 0\n"),
                    CyclicOrder);
}

TEST_CASE("json export mirrors the text content") {
    auto sp = gen::fixture("gluing-basic");
    auto j = cset::to_json(sp);
    CHECK(j["format"] == "lorcomp-cset");
    CHECK(j["version"] == 1);
    CHECK(j["ambient"]["kind"] == "minkowski");
    CHECK(j["provenance"] == "inherited");
    REQUIRE(j["points"].size() == 4);
    CHECK(j["points"][0][0] == 0.0);
    CHECK(j["links"].size() == sp.link_count());
    CHECK(j["tau"].size() == sp.chron_pair_count());
    double t01 = j["tau"][0][2];
    CHECK(t01 == sp.tau(0, 1));

    std::vector<space::PointRec> pts(2);
    auto bare = DiscreteSpace::from_links(pts, {}, {{0, 1}}, {{0, 1, 2.0}});
    auto jb = cset::to_json(bare);
    CHECK(jb["points"][0].is_null());
    CHECK(jb["ambient"]["kind"] == "none");
}

TEST_CASE("file save and load") {
    auto sp = gen::fixture("degenerate-triangle");
    const std::string path = "cset_io_test_tmp.cset";
    cset::save_file(sp, path);
    auto back = cset::load_file(path);
    check_equal(sp, back);
    std::remove(path.c_str());
    CHECK_THROWS_AS(cset::load_file("definitely-missing-file.cset"),
                    FormatError);
}
