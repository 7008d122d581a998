#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lorcomp/comparison.hpp"
#include "lorcomp/config.hpp"
#include "lorcomp/cset.hpp"
#include "lorcomp/gen.hpp"
#include "lorcomp/model.hpp"
#include "lorcomp/report.hpp"
#include "lorcomp/strfmt.hpp"
#include "lorcomp/verifier.hpp"
#include "lorcomp/version.hpp"

using namespace lorcomp;
namespace cmp = lorcomp::comparison;
using detail::g17;

namespace {

const double kPi = std::acos(-1.0);

// "t,x" -> ModelPoint
model::ModelPoint parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError("expected t,x but got '" + s + "'");
    char* end = nullptr;
    const std::string ts = s.substr(0, comma), xs = s.substr(comma + 1);
    const double t = std::strtod(ts.c_str(), &end);
    if (end == ts.c_str() || *end) throw ConfigError("bad number '" + ts + "'");
    const double x = std::strtod(xs.c_str(), &end);
    if (end == xs.c_str() || *end) throw ConfigError("bad number '" + xs + "'");
    return {t, x};
}

std::vector<double> parse_doubles(const std::string& s, std::size_t n,
                                  const char* what) {
    std::vector<double> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        char* end = nullptr;
        const double v = std::strtod(cur.c_str(), &end);
        if (end == cur.c_str() || *end)
            throw ConfigError(std::string("bad number '") + cur + "' in " +
                              what);
        out.push_back(v);
    }
    if (out.size() != n)
        throw ConfigError(std::string(what) + " needs " + std::to_string(n) +
                          " comma-separated numbers");
    return out;
}

struct Polyline {
    std::string name;
    std::vector<model::ModelPoint> pts;
};

// Plot data: one polyline per curve, plain CSV ready for any plotting tool.
void write_polylines(const std::string& path,
                     const std::vector<Polyline>& lines) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open " + path);
    f << "curve,idx,t,x\n";
    for (const auto& pl : lines)
        for (std::size_t i = 0; i < pl.pts.size(); ++i)
            f << pl.name << "," << i << "," << g17(pl.pts[i].t) << ","
              << g17(pl.pts[i].x) << "\n";
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string ambient = "minkowski";
    double param = std::numeric_limits<double>::quiet_NaN();
    std::string diamond, rect, fixture, tau = "inherited", output;
    std::size_t count = 0;
    double density = 0.0;
    std::uint64_t seed = 1;
    bool have_count = false, have_density = false;
};

int cmd_generate(const GenerateArgs& a) {
    space::DiscreteSpace sp = [&] {
        if (!a.fixture.empty()) return gen::fixture(a.fixture);
        gen::SprinkleSpec spec;
        spec.ambient = config::parse_ambient(a.ambient);
        // Per-ambient defaults so a bare invocation produces something
        // sensible: a flat diamond, a window inside the ads chart domain,
        // a full de Sitter belt, a cylinder of circumference 2 pi.
        switch (spec.ambient) {
        case gen::Ambient::minkowski:
            spec.param = 0.0;
            spec.region = gen::Region::diamond({0.0, 0.0}, {2.0, 0.0});
            break;
        case gen::Ambient::ads:
            spec.param = -1.0;
            spec.region = gen::Region::rect(-1.2, 1.2, -0.3, 0.3);
            break;
        case gen::Ambient::desitter:
            spec.param = 1.0;
            spec.region = gen::Region::rect(-1.0, 1.0, 0.0, 2 * kPi);
            break;
        case gen::Ambient::cylinder:
            spec.param = 2 * kPi;
            spec.region = gen::Region::rect(0.0, 4.0, 0.0, 2 * kPi);
            break;
        }
        if (!std::isnan(a.param)) spec.param = a.param;
        if (!a.diamond.empty()) {
            const auto colon = a.diamond.find(':');
            if (colon == std::string::npos)
                throw ConfigError("--diamond expects t,x:t,x");
            spec.region =
                gen::Region::diamond(parse_point(a.diamond.substr(0, colon)),
                                     parse_point(a.diamond.substr(colon + 1)));
        } else if (!a.rect.empty()) {
            const auto v = parse_doubles(a.rect, 4, "--rect");
            spec.region = gen::Region::rect(v[0], v[1], v[2], v[3]);
        }
        if (a.have_density) {
            spec.use_density = true;
            spec.density = a.density;
        } else {
            spec.count = a.have_count ? a.count : 500;
        }
        spec.seed = a.seed;
        spec.tau_mode = config::parse_tau_mode(a.tau);
        return gen::sprinkle(spec);
    }();
    cset::save_file(sp, a.output);
    std::cout << "points " << sp.size() << " links " << sp.link_count() << "\n"
              << "saved " << a.output << "\n";
    return 0;
}

// ------------------------------------------------------------------ verify

int finish_report(const verifier::VerificationReport& rep,
                  const std::string& report_path, const std::string& csv_path,
                  bool include_runtime) {
    if (report_path.empty()) {
        report::write(std::cout, rep, include_runtime);
    } else {
        report::write_file(report_path, rep, include_runtime);
        std::cout << "report " << report_path << "\n";
    }
    if (!csv_path.empty()) {
        report::write_margins_csv_file(csv_path, rep);
        std::cout << "margins " << csv_path << "\n";
    }
    if (rep.all_pass) {
        std::cout << "all checks passed: no violation found\n";
        return 0;
    }
    std::cout << "violations " << rep.violations << "\n";
    for (const auto& o : rep.outcomes) {
        if (o.pass) continue;
        std::cout << "violation: " << cmp::to_string(o.formulation) << " "
                  << cmp::to_string(o.direction) << " K=" << g17(o.K);
        if (o.has_worst) {
            const auto& w = o.worst;
            std::cout << " triangle " << w.x << " " << w.y << " " << w.z
                      << " worst_margin=" << g17(w.worst_margin);
            if (!w.witnesses.empty())
                std::cout << " witness lhs=" << g17(w.witnesses.front().lhs)
                          << " rhs=" << g17(w.witnesses.front().rhs);
        }
        std::cout << "\n";
    }
    if (rep.diameter.ran && !rep.diameter.pass)
        std::cout << "violation: diameter " << g17(rep.diameter.diameter)
                  << " at pair " << rep.diameter.x << " " << rep.diameter.y
                  << " exceeds bound " << g17(rep.diameter.bound) << "\n";
    if (rep.perimeter.ran && !rep.perimeter.pass)
        std::cout << "violation: perimeter "
                  << g17(rep.perimeter.max_perimeter) << " of triangle "
                  << rep.perimeter.x << " " << rep.perimeter.y << " "
                  << rep.perimeter.z << " exceeds bound "
                  << g17(rep.perimeter.bound) << "\n";
    for (const auto& lg : rep.local_global) {
        if (!lg.ran) continue;
        if (!lg.global_pass)
            std::cout << "violation: global check failed at K=" << g17(lg.K)
                      << "\n";
        if (!lg.local_pass)
            std::cout << "violation: a local diamond failed at K=" << g17(lg.K)
                      << "\n";
        if (!lg.implication_held)
            std::cout << "violation: local passes plus unique maximizers did "
                         "not yield a global pass at K="
                      << g17(lg.K) << "\n";
    }
    if (rep.nondegeneracy.ran && !rep.nondegeneracy.pass)
        std::cout << "violation: equal-angles probe failed, worst gap "
                  << g17(rep.nondegeneracy.worst_angle_gap) << "\n";
    return 1;
}

int cmd_verify(const config::ExperimentConfig& cfg) {
    const auto sp = config::realize_space(cfg);
    const auto rep = verifier::run_campaign(sp, cfg.campaign);
    return finish_report(rep, cfg.report_path, cfg.margins_csv,
                         cfg.include_runtime);
}

// ---------------------------------------------------------------- reproduce

// Flat cylinder: two geodesics wrap opposite ways between the endpoints of a
// degenerate triangle, and a pair of side points has tau = 0 while their
// comparison points in the plane are timelike related. Globally the K = 0
// above-bound check fails; restricted to small diamonds it passes.
int reproduce_cylinder(const std::string& outdir, std::uint64_t seed,
                       bool local) {
    auto sp = gen::fixture("cylinder-counterexample");
    const double L = sp.ambient().param;

    if (local) {
        verifier::DiamondParams dp;
        const auto fx = verifier::check_local_vs_global(
            sp, 0.0, cmp::Direction::above, dp, 30, 200, cmp::kTauTol, seed);
        std::cout << "fixture: admissible diamonds " << fx.admissible_diamonds
                  << ", local " << (fx.local_pass ? "pass" : "FAIL") << "\n";

        gen::SprinkleSpec spec;
        spec.ambient = gen::Ambient::cylinder;
        spec.param = L;
        spec.region = gen::Region::rect(0.0, 4.0, 0.0, L);
        spec.count = 500;
        spec.seed = seed;
        const auto dense = gen::sprinkle(spec);
        verifier::DiamondParams dpd;
        dpd.count = 10;
        dpd.min_interior = 8;
        dpd.triangle_budget = 10;
        dpd.pair_budget = 100;
        dpd.max_height = 2.0; // below the wrap scale: diamonds stay flat
        const auto lg = verifier::check_local_vs_global(
            dense, 0.0, cmp::Direction::above, dpd, 30, 200, cmp::kTauTol,
            seed);
        std::cout << "sprinkle " << dense.size() << " points: admissible "
                  << lg.admissible_diamonds << " diamonds, local "
                  << (lg.local_pass ? "pass" : "FAIL") << "\n";
        for (const auto& d : lg.diamonds)
            std::cout << "  diamond " << d.p << "-" << d.q << " interior "
                      << d.interior << " triangles " << d.triangles << " "
                      << (d.pass ? "pass" : "FAIL") << "\n";
        const bool ok = fx.local_pass && lg.local_pass;
        std::cout << (ok ? "local diamond checks pass at K=0\n"
                         : "local diamond checks FAILED\n");
        return ok ? 0 : 1;
    }

    verifier::Campaign c;
    c.label = "cylinder-counterexample";
    c.k_grid = {0.0};
    c.directions = {cmp::Direction::above};
    c.formulations = {cmp::Formulation::triangle};
    c.triangle_budget = 20;
    c.pair_budget = 200;
    c.seed = seed;
    c.check_nondegeneracy = false;
    const auto rep = verifier::run_campaign(sp, c);

    const auto tri = cmp::make_triangle(sp, 0, 2, 4);
    std::cout << "triangle 0 2 4: a=" << g17(tri.a) << " b=" << g17(tri.b)
              << " c=" << g17(tri.c)
              << (tri.degenerate ? " (degenerate: c = a + b)" : "") << "\n";

    const auto& o = rep.outcomes.front();
    std::cout << "above-bound check at K=0: " << (o.pass ? "pass" : "FAIL")
              << ", worst margin " << g17(o.worst.worst_margin) << "\n";
    for (const auto& w : o.worst.witnesses)
        if (w.lhs == 0.0 && w.rhs > 0.5) {
            std::cout << "witness pair: tau = 0 on the cylinder, comparison "
                         "tau = "
                      << g17(w.rhs) << " in the plane\n";
            break;
        }

    // Both maximizing chains of the far pair, unrolled to the plane.
    const auto chains = verifier::maximal_chains(sp, 0, 4, 4);
    std::vector<Polyline> lines;
    Polyline pts{"points", {}};
    for (std::uint32_t i = 0; i < sp.size(); ++i)
        pts.pts.push_back({sp.point(i).t, sp.point(i).x});
    lines.push_back(std::move(pts));
    for (std::size_t ci = 0; ci < chains.size(); ++ci) {
        Polyline pl{"geodesic-" + std::to_string(ci + 1), {}};
        const auto& vs = chains[ci].vertices;
        double x = sp.point(vs.front()).x;
        pl.pts.push_back({sp.point(vs.front()).t, x});
        std::cout << "geodesic " << ci + 1 << " (tau "
                  << g17(chains[ci].tau_length) << "): (" << g17(pl.pts[0].t)
                  << ", " << g17(pl.pts[0].x) << ")";
        for (std::size_t i = 1; i < vs.size(); ++i) {
            const auto& pa = sp.point(vs[i - 1]);
            const auto& pb = sp.point(vs[i]);
            x += gen::cylinder_tau_full(L, {pa.t, pa.x}, {pb.t, pb.x}).dx;
            pl.pts.push_back({pb.t, x});
            std::cout << " -> (" << g17(pb.t) << ", " << g17(x) << ")";
        }
        std::cout << "\n";
        lines.push_back(std::move(pl));
    }
    const auto cfg = cmp::realize_triangle(0.0, tri);
    lines.push_back(
        {"comparison-triangle", {cfg.xbar, cfg.ybar, cfg.zbar, cfg.xbar}});

    const auto rp = join_path(outdir, "cylinder.report");
    const auto pp = join_path(outdir, "cylinder_polylines.csv");
    report::write_file(rp, rep);
    write_polylines(pp, lines);
    std::cout << "report " << rp << "\npolylines " << pp << "\n"
              << "global check fails as constructed\n";
    return rep.all_pass ? 0 : 1;
}

// Flat triangle subdivided at an interior chain vertex of its long side:
// both parts and the whole pass below and above at K = 0.
int reproduce_gluing(const std::string& outdir, std::uint64_t seed) {
    auto sp = gen::fixture("gluing-basic");
    const auto whole = cmp::make_triangle(sp, 0, 2, 3);
    const double f = sp.tau(0, 1) / whole.c;
    const auto parts = cmp::glue_subdivide(sp, whole, {cmp::Side::xz, f, 1});

    std::cout << "triangle 0 2 3 split on side xz at vertex 1, fraction "
              << g17(f) << "\n";
    const struct {
        const char* name;
        const cmp::TimelikeTriangle* t;
    } entries[] = {{"part", &parts.first},
                   {"part", &parts.second},
                   {"whole", &whole}};
    bool all = true;
    for (const auto& e : entries) {
        const auto cfg = cmp::realize_triangle(0.0, *e.t);
        const auto pairs = cmp::default_pairs(sp, *e.t, 200, seed);
        for (auto dir : {cmp::Direction::below, cmp::Direction::above}) {
            const auto v =
                cmp::compare_triangle(sp, 0.0, dir, *e.t, cfg, pairs);
            all = all && v.pass;
            std::cout << e.name << " " << e.t->x << "-" << e.t->y << "-"
                      << e.t->z << " " << cmp::to_string(dir)
                      << " K=0: " << (v.pass ? "pass" : "FAIL")
                      << ", worst margin " << g17(v.worst_margin) << " over "
                      << v.samples << " samples\n";
        }
    }
    std::cout << (all ? "both parts and the whole pass\n"
                      : "subdivision transfer FAILED\n");

    verifier::Campaign c;
    c.label = "gluing-basic";
    c.k_grid = {0.0};
    c.seed = seed;
    const auto rep = verifier::run_campaign(sp, c);

    std::vector<Polyline> lines;
    auto at = [&](std::uint32_t i) {
        return model::ModelPoint{sp.point(i).t, sp.point(i).x};
    };
    lines.push_back({"triangle", {at(0), at(2), at(3), at(0)}});
    lines.push_back({"long-side-chain", {at(0), at(1), at(2), at(3)}});
    lines.push_back({"split-segment", {at(1), at(2)}});
    const auto rp = join_path(outdir, "gluing.report");
    const auto pp = join_path(outdir, "gluing_polylines.csv");
    report::write_file(rp, rep);
    write_polylines(pp, lines);
    std::cout << "report " << rp << "\npolylines " << pp << "\n";
    return (all && rep.all_pass) ? 0 : 1;
}

// A K = -1 hinge whose law-of-cosines far sides force tau(a, b) past the
// diameter bound pi: printed step by step, then confirmed by the diameter
// check failing on the explicit four-point space.
int reproduce_bonnet(const std::string& outdir, std::uint64_t seed) {
    auto sp = gen::fixture("bonnet-hinges");
    const double t = sp.tau(0, 1); // past leg a -> x, also tau(x, b)
    const double m = sp.tau(1, 2); // short leg x -> y
    const double p = sp.tau(0, 2); // far side of the same-orientation hinge
    const double q = sp.tau(2, 3); // far side of the mixed-orientation hinge
    const double om =
        model::comparison_angle(-1.0, t, m, p, model::Vertex::middle);

    std::cout << "hinge at x: legs tau(a,x) = " << g17(t)
              << ", tau(x,y) = " << g17(m) << ", tau(x,b) = " << g17(t)
              << ", rapidity omega = " << g17(om) << "\n";
    std::cout << "law of cosines, same orientation:  tau(a,y) = " << g17(p)
              << "\n";
    std::cout << "law of cosines, mixed orientation: tau(y,b) = " << g17(q)
              << "\n";
    std::cout << "reverse triangle inequality through y: tau(a,b) >= "
              << g17(p) << " + " << g17(q) << " = " << g17(p + q) << "\n";
    std::cout << "window: 0 < 2m = " << g17(2 * m)
              << " < p - q = " << g17(p - q) << " < pi/4 = " << g17(kPi / 4)
              << "\n";
    std::cout << "cos((p+q)/2) = " << g17(std::cos((p + q) / 2))
              << " < cos(t) = " << g17(std::cos(t))
              << ", so p + q > 2t = " << g17(2 * t) << "\n";

    const auto dia = verifier::check_diameter_bound(sp, -1.0);
    std::cout << "diameter at K=-1: tau(a,b) = " << g17(dia.diameter)
              << " against bound pi = " << g17(dia.bound) << ": "
              << (dia.pass ? "pass" : "FAIL, margin " + g17(dia.margin))
              << "\n";

    verifier::Campaign c;
    c.label = "bonnet-hinges";
    c.k_grid = {-1.0};
    c.seed = seed;
    const auto rep = verifier::run_campaign(sp, c);

    std::vector<Polyline> lines;
    const auto axy = cmp::realize_sides(-1.0, t, m, p);
    const auto xyb = cmp::realize_sides(-1.0, m, q, t);
    lines.push_back({"hinge-axy", {axy.xbar, axy.ybar, axy.zbar, axy.xbar}});
    lines.push_back({"hinge-xyb", {xyb.xbar, xyb.ybar, xyb.zbar, xyb.xbar}});
    const auto rp = join_path(outdir, "bonnet.report");
    const auto pp = join_path(outdir, "bonnet_polylines.csv");
    report::write_file(rp, rep);
    write_polylines(pp, lines);
    std::cout << "report " << rp << "\npolylines " << pp << "\n"
              << "the configuration exceeds the K=-1 diameter bound\n";
    return rep.all_pass ? 0 : 1;
}

int cmd_reproduce(const std::string& name, const std::string& outdir,
                  std::uint64_t seed, bool local) {
    if (!outdir.empty() && outdir != ".")
        std::filesystem::create_directories(outdir);
    if (name == "cylinder") return reproduce_cylinder(outdir, seed, local);
    if (name == "gluing") return reproduce_gluing(outdir, seed);
    if (name == "bonnet") return reproduce_bonnet(outdir, seed);
    throw UnknownScenario("unknown scenario '" + name +
                          "', expected cylinder, gluing or bonnet");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite Lorentzian spaces and timelike curvature bounds"};
    app.set_version_flag("--version", std::string("lorcomp ") + kVersion);
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* g =
        app.add_subcommand("generate", "sprinkle a space or emit a fixture");
    g->add_option("--ambient", ga.ambient,
                  "minkowski, ads, desitter or cylinder")
        ->capture_default_str();
    g->add_option("--param", ga.param,
                  "curvature for ads/desitter, circumference for cylinder");
    g->add_option("--diamond", ga.diamond, "causal diamond region t,x:t,x");
    g->add_option("--rect", ga.rect, "chart rectangle t0,t1,x0,x1");
    auto* gc = g->add_option("--count", ga.count, "exact point count");
    auto* gd = g->add_option("--density", ga.density, "points per unit volume");
    gd->excludes(gc);
    g->add_option("--seed", ga.seed, "sprinkle seed")
        ->envname("LORCOMP_SEED")
        ->capture_default_str();
    g->add_option("--tau", ga.tau,
                  "inherited, intrinsic-weighted or intrinsic-link")
        ->capture_default_str();
    std::string fixture_help = "fixture name:";
    for (const auto& n : gen::fixture_names()) fixture_help += " " + n;
    g->add_option("--fixture", ga.fixture, fixture_help);
    g->add_option("-o,--output", ga.output, "output cset path")->required();

    config::ExperimentConfig vc;
    std::string v_input, v_config, v_k, v_dir, v_form, v_label;
    bool v_local = false, v_no_runtime = false;
    auto* v = app.add_subcommand("verify", "run curvature-bound checks");
    v->add_option("input", v_input, "causal-set file to verify");
    auto* ov_config =
        v->add_option("--config", v_config, "experiment configuration file");
    auto* ov_k = v->add_option("--K", v_k, "comma-separated curvature grid");
    auto* ov_dir = v->add_option("--direction", v_dir, "below, above or both");
    auto* ov_form = v->add_option(
        "--formulation", v_form,
        "comma list of triangle, monotonicity, angle, hinge, or all");
    auto* ov_tri = v->add_option("--triangles", vc.campaign.triangle_budget,
                                 "triangle sample budget");
    auto* ov_pairs = v->add_option("--pairs", vc.campaign.pair_budget,
                                   "side-point pair budget per triangle");
    auto* ov_min =
        v->add_option("--min-side", vc.campaign.min_side,
                      "drop triangles with a side shorter than this");
    auto* ov_seed = v->add_option("--seed", vc.campaign.seed, "campaign seed")
                        ->envname("LORCOMP_SEED");
    auto* ov_tol =
        v->add_option("--tol", vc.campaign.tau_tol, "tau margin tolerance");
    auto* ov_atol = v->add_option("--angle-tol", vc.campaign.angle_tol,
                                  "angle margin tolerance");
    auto* ov_label = v->add_option("--label", v_label, "campaign label");
    v->add_flag("--local", v_local,
                "restrict comparisons to sampled diamonds and test the "
                "local-to-global transfer");
    auto* ov_dia = v->add_option("--diamonds", vc.campaign.diamonds.count,
                                 "diamonds to sample in --local mode");
    auto* ov_int =
        v->add_option("--min-interior", vc.campaign.diamonds.min_interior,
                      "interior points a diamond needs to qualify");
    auto* ov_hgt =
        v->add_option("--max-height", vc.campaign.diamonds.max_height,
                      "cap on tau(p,q) of a sampled diamond");
    auto* ov_jobs = v->add_option("--jobs", vc.campaign.jobs, "worker threads");
    auto* ov_ax = v->add_flag("--axioms,!--no-axioms", vc.campaign.check_axioms,
                              "audit the space axioms first");
    auto* ov_diam =
        v->add_flag("--diameter,!--no-diameter", vc.campaign.check_diameter,
                    "check the diameter bound when some K < 0");
    auto* ov_per =
        v->add_flag("--perimeter,!--no-perimeter", vc.campaign.check_perimeter,
                    "check the perimeter bound when some K < 0");
    auto* ov_nd = v->add_flag("--nondegeneracy,!--no-nondegeneracy",
                              vc.campaign.check_nondegeneracy,
                              "run the equal-angles probe at chain vertices");
    auto* ov_rep =
        v->add_option("--report", vc.report_path, "write the report here");
    auto* ov_csv =
        v->add_option("--csv", vc.margins_csv, "write witness margins here");
    v->add_flag("--no-runtime", v_no_runtime,
                "omit the runtime section from the report");

    std::string r_name, r_outdir = ".";
    std::uint64_t r_seed = 1;
    bool r_local = false;
    auto* r = app.add_subcommand("reproduce", "rebuild a documented scenario");
    r->add_option("name", r_name, "cylinder, gluing or bonnet")->required();
    r->add_option("-o,--outdir", r_outdir,
                  "directory for report and plot files")
        ->capture_default_str();
    r->add_option("--seed", r_seed, "scenario seed")
        ->envname("LORCOMP_SEED")
        ->capture_default_str();
    r->add_flag("--local", r_local,
                "cylinder only: run the diamond-local checks instead of the "
                "global one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(g)) {
            ga.have_count = gc->count() > 0;
            ga.have_density = gd->count() > 0;
            return cmd_generate(ga);
        }
        if (app.got_subcommand(v)) {
            // --config supplies the baseline; explicit flags override it.
            if (ov_config->count()) {
                auto file_cfg = config::parse_file(v_config);
                if (ov_tri->count())
                    file_cfg.campaign.triangle_budget =
                        vc.campaign.triangle_budget;
                if (ov_pairs->count())
                    file_cfg.campaign.pair_budget = vc.campaign.pair_budget;
                if (ov_min->count())
                    file_cfg.campaign.min_side = vc.campaign.min_side;
                if (ov_seed->count())
                    file_cfg.campaign.seed = vc.campaign.seed;
                if (ov_tol->count())
                    file_cfg.campaign.tau_tol = vc.campaign.tau_tol;
                if (ov_atol->count())
                    file_cfg.campaign.angle_tol = vc.campaign.angle_tol;
                if (ov_dia->count())
                    file_cfg.campaign.diamonds.count =
                        vc.campaign.diamonds.count;
                if (ov_int->count())
                    file_cfg.campaign.diamonds.min_interior =
                        vc.campaign.diamonds.min_interior;
                if (ov_hgt->count())
                    file_cfg.campaign.diamonds.max_height =
                        vc.campaign.diamonds.max_height;
                if (ov_jobs->count()) file_cfg.campaign.jobs = vc.campaign.jobs;
                if (ov_ax->count())
                    file_cfg.campaign.check_axioms = vc.campaign.check_axioms;
                if (ov_diam->count())
                    file_cfg.campaign.check_diameter =
                        vc.campaign.check_diameter;
                if (ov_per->count())
                    file_cfg.campaign.check_perimeter =
                        vc.campaign.check_perimeter;
                if (ov_nd->count())
                    file_cfg.campaign.check_nondegeneracy =
                        vc.campaign.check_nondegeneracy;
                if (ov_rep->count()) file_cfg.report_path = vc.report_path;
                if (ov_csv->count()) file_cfg.margins_csv = vc.margins_csv;
                vc = std::move(file_cfg);
            } else if (v_input.empty()) {
                throw ConfigError("verify needs a causal-set file or --config");
            }
            if (!v_input.empty()) {
                vc.source = config::ExperimentConfig::Source::file;
                vc.path = v_input;
            }
            if (ov_k->count()) vc.campaign.k_grid = config::parse_k_grid(v_k);
            if (ov_dir->count())
                vc.campaign.directions = config::parse_directions(v_dir);
            if (ov_form->count())
                vc.campaign.formulations = config::parse_formulations(v_form);
            if (ov_label->count()) vc.campaign.label = v_label;
            if (v_local) vc.campaign.locality = verifier::Locality::diamonds;
            if (v_no_runtime) vc.include_runtime = false;
            return cmd_verify(vc);
        }
        if (app.got_subcommand(r))
            return cmd_reproduce(r_name, r_outdir, r_seed, r_local);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
