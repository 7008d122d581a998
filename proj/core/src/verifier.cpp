#include "lorcomp/verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "lorcomp/model.hpp"
#include "lorcomp/rng.hpp"

namespace lorcomp::verifier {

namespace cmp = lorcomp::comparison;

namespace {

// Severity orders verdicts of one formulation/direction: larger is worse.
// The sign flips follow the pass predicates documented on ComparisonVerdict.
double severity(cmp::Formulation f, cmp::Direction dir, double margin) {
    switch (f) {
    case cmp::Formulation::triangle:
    case cmp::Formulation::angle:
        return dir == cmp::Direction::below ? margin : -margin;
    case cmp::Formulation::hinge:
        return dir == cmp::Direction::below ? -margin : margin;
    case cmp::Formulation::monotonicity:
        return margin;
    }
    return margin;
}

void add_reason(std::vector<std::string>& reasons, const std::string& r) {
    if (std::find(reasons.begin(), reasons.end(), r) == reasons.end())
        reasons.push_back(r);
}

void merge_verdict(CheckOutcome& out, const cmp::ComparisonVerdict& v,
                   bool count_triangle) {
    if (count_triangle) ++out.triangles;
    out.samples += v.samples;
    out.implications_checked += v.implications_checked;
    out.implications_failed += v.implications_failed;
    if (!v.pass) out.pass = false;
    const double sev = severity(v.formulation, v.direction, v.worst_margin);
    if (!out.has_worst ||
        sev > severity(out.worst.formulation, out.worst.direction,
                       out.worst.worst_margin)) {
        out.worst = v;
        out.has_worst = true;
    }
}

CheckOutcome
run_outcome(const space::DiscreteSpace& sp,
            const std::vector<cmp::TimelikeTriangle>& tris, double K,
            cmp::Direction dir, cmp::Formulation form, const Campaign& c) {
    CheckOutcome out;
    out.formulation = form;
    out.direction = dir;
    out.K = K;
    cmp::AngleOptions aopt;
    aopt.tol = c.angle_tol;
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
        const cmp::TimelikeTriangle& t = tris[ti];
        try {
            switch (form) {
            case cmp::Formulation::triangle: {
                const auto cfg = cmp::realize_triangle(K, t);
                const auto pairs = cmp::default_pairs(
                    sp, t, c.pair_budget, rng::derive_seed(c.seed, "pairs", ti));
                merge_verdict(
                    out, cmp::compare_triangle(sp, K, dir, t, cfg, pairs,
                                               c.tau_tol),
                    true);
                break;
            }
            case cmp::Formulation::monotonicity: {
                // Legs per vertex: past (a, c), middle (a, b), future (b, c).
                const model::Vertex verts[3] = {model::Vertex::past,
                                                model::Vertex::middle,
                                                model::Vertex::future};
                const double first[3] = {t.a, t.a, t.b};
                const double second[3] = {t.c, t.b, t.c};
                bool any = false;
                for (int vi = 0; vi < 3; ++vi) {
                    try {
                        const auto v = cmp::compare_monotonicity(
                            sp, K, dir, t, verts[vi],
                            cmp::default_scale_grid(first[vi]),
                            cmp::default_scale_grid(second[vi]), c.angle_tol);
                        merge_verdict(out, v, !any);
                        any = true;
                    } catch (const InsufficientSamples&) {
                        add_reason(out.skip_reasons,
                                   "monotonicity: too few grid samples");
                    }
                }
                if (!any) ++out.skipped;
                break;
            }
            case cmp::Formulation::angle:
                merge_verdict(out,
                              cmp::compare_angle(sp, K, dir, t, aopt,
                                                 c.angle_tol),
                              true);
                break;
            case cmp::Formulation::hinge:
                merge_verdict(out,
                              cmp::compare_hinge(sp, K, dir, t, aopt,
                                                 c.tau_tol),
                              true);
                break;
            }
        } catch (const Error& e) {
            ++out.skipped;
            add_reason(out.skip_reasons, e.what());
        }
    }
    return out;
}

} // namespace

DiameterOutcome check_diameter_bound(const space::DiscreteSpace& sp, double K,
                                     double tol) {
    if (!(K < 0.0))
        throw std::invalid_argument(
            "diameter bound requires negative curvature");
    DiameterOutcome out;
    out.ran = true;
    out.K = K;
    out.bound = model::finite_diameter_constant(K);
    out.tolerance = tol;
    out.diameter = space::finite_diameter(sp);
    double best = -1.0;
    sp.tau_matrix().for_each_positive(
        [&](std::uint32_t i, std::uint32_t j, double v) {
            if (std::isfinite(v) && v > best) {
                best = v;
                out.x = i;
                out.y = j;
            }
        });
    out.margin = out.diameter - out.bound;
    out.pass = out.margin <= tol;
    return out;
}

PerimeterOutcome
check_perimeter_bound(const std::vector<cmp::TimelikeTriangle>& tris, double K,
                      double tol) {
    if (!(K < 0.0))
        throw std::invalid_argument(
            "perimeter bound requires negative curvature");
    PerimeterOutcome out;
    out.ran = true;
    out.K = K;
    out.bound = 2.0 * model::finite_diameter_constant(K);
    out.tolerance = tol;
    out.triangles = tris.size();
    for (const auto& t : tris) {
        const double p = t.perimeter();
        if (p > out.max_perimeter) {
            out.max_perimeter = p;
            out.x = t.x;
            out.y = t.y;
            out.z = t.z;
        }
    }
    out.margin = out.max_perimeter - out.bound;
    out.pass = out.margin <= tol;
    return out;
}

std::vector<space::Chain> maximal_chains(const space::DiscreteSpace& sp,
                                         std::uint32_t x, std::uint32_t y,
                                         std::size_t cap, double rel_slack) {
    if (!sp.chron(x, y))
        throw NotTimelikeRelated("maximal_chains requires a timelike pair");
    const std::size_t n = sp.size();
    // Longest tau-sum from each vertex to y over the link skeleton,
    // restricted to vertices that can still reach y.
    std::vector<double> g(n, -1.0);
    g[y] = 0.0;
    const auto& topo = sp.topo_order();
    for (std::size_t k = topo.size(); k-- > 0;) {
        const std::uint32_t v = topo[k];
        if (v == y || !sp.causal(v, y)) continue;
        double best = -1.0;
        for (std::uint32_t w : sp.links_from(v)) {
            if (g[w] < 0.0) continue;
            const double s = sp.tau(v, w) + g[w];
            if (s > best) best = s;
        }
        g[v] = best;
    }
    std::vector<space::Chain> found;
    if (g[x] < 0.0) return found;
    const double best = g[x];
    const double slack =
        rel_slack * std::max({std::fabs(best), sp.tau(x, y), 1e-300});
    std::vector<std::uint32_t> path{x};
    // Lex-ascending depth-first enumeration of near-maximal link paths.
    auto dfs = [&](auto&& self, std::uint32_t v, double acc) -> void {
        if (found.size() >= cap) return;
        if (v == y) {
            found.push_back({path, acc});
            return;
        }
        for (std::uint32_t w : sp.links_from(v)) {
            if (g[w] < 0.0) continue;
            const double through = acc + sp.tau(v, w) + g[w];
            if (through + slack < best) continue;
            path.push_back(w);
            self(self, w, acc + sp.tau(v, w));
            path.pop_back();
            if (found.size() >= cap) return;
        }
    };
    dfs(dfs, x, 0.0);
    return found;
}

LocalGlobalOutcome check_local_vs_global(const space::DiscreteSpace& sp,
                                         double K, cmp::Direction dir,
                                         const DiamondParams& dp,
                                         std::size_t triangle_budget,
                                         std::size_t pair_budget, double tol,
                                         std::uint64_t seed) {
    LocalGlobalOutcome out;
    out.ran = true;
    out.K = K;
    out.direction = dir;

    // Global sample.
    cmp::TriangleFilter filt;
    filt.K = K;
    const auto gtris = cmp::enumerate_triangles(
        sp, filt, triangle_budget, rng::derive_seed(seed, "lg-global"));
    for (std::size_t ti = 0; ti < gtris.size(); ++ti) {
        const auto& t = gtris[ti];
        try {
            const auto cfg = cmp::realize_triangle(K, t);
            const auto pairs = cmp::default_pairs(
                sp, t, pair_budget, rng::derive_seed(seed, "lg-gpair", ti));
            const auto v = cmp::compare_triangle(sp, K, dir, t, cfg, pairs, tol);
            ++out.global_triangles;
            if (!v.pass) out.global_pass = false;
            const double sev = severity(v.formulation, dir, v.worst_margin);
            if (!out.has_global_worst ||
                sev > severity(out.global_worst.formulation, dir,
                               out.global_worst.worst_margin)) {
                out.global_worst = v;
                out.has_global_worst = true;
                out.global_worst_margin = v.worst_margin;
            }
        } catch (const Error&) {
        }
    }

    // Diamond sample: chron pairs whose interval is populated enough.
    const std::size_t n = sp.size();
    rng::Stream ds(rng::derive_seed(seed, "lg-diamond"));
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> picked;
    for (std::size_t attempt = 0;
         attempt < dp.count * 60 && picked.size() < dp.count && n > 1;
         ++attempt) {
        const auto p = static_cast<std::uint32_t>(ds.index(n));
        const auto desc = sp.reach().row_indices(p);
        if (desc.empty()) continue;
        const auto q = desc[ds.index(desc.size())];
        if (!sp.chron(p, q)) continue;
        if (sp.tau(p, q) > dp.max_height) continue;
        if (!seen.insert({p, q}).second) continue;
        if (sp.interval(p, q).size() < dp.min_interior) continue;
        picked.push_back({p, q});
    }
    out.admissible_diamonds = picked.size();
    if (picked.empty())
        out.skip_reason = "no sampled diamond reached the interior threshold";

    for (std::size_t di = 0; di < picked.size(); ++di) {
        DiamondOutcome d;
        d.p = picked[di].first;
        d.q = picked[di].second;
        const auto members = sp.interval(d.p, d.q);
        d.interior = members.size();

        // Triangles with all three vertices inside the diamond.
        std::vector<std::array<std::uint32_t, 3>> triples;
        const std::size_t m = members.size();
        if (m <= 28) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    if (!sp.chron(members[i], members[j])) continue;
                    for (std::size_t k = j + 1; k < m; ++k) {
                        if (sp.chron(members[j], members[k]))
                            triples.push_back(
                                {members[i], members[j], members[k]});
                    }
                }
        } else {
            rng::Stream ts(rng::derive_seed(seed, "lg-ltri", di));
            std::set<std::array<std::uint32_t, 3>> tset;
            for (std::size_t attempt = 0;
                 attempt < dp.triangle_budget * 40 &&
                 tset.size() < dp.triangle_budget * 2;
                 ++attempt) {
                std::size_t i = ts.index(m), j = ts.index(m), k = ts.index(m);
                std::size_t lo = std::min({i, j, k}), hi = std::max({i, j, k});
                std::size_t mid = i + j + k - lo - hi;
                if (lo == mid || mid == hi) continue;
                if (!sp.chron(members[lo], members[mid]) ||
                    !sp.chron(members[mid], members[hi]))
                    continue;
                tset.insert({members[lo], members[mid], members[hi]});
            }
            triples.assign(tset.begin(), tset.end());
        }
        if (triples.size() > dp.triangle_budget) {
            rng::Stream sel(rng::derive_seed(seed, "lg-lsel", di));
            std::vector<std::array<std::uint32_t, 3>> kept;
            for (std::size_t i = 0;
                 i < triples.size() && kept.size() < dp.triangle_budget; ++i) {
                const std::size_t left = triples.size() - i;
                const std::size_t need = dp.triangle_budget - kept.size();
                if (sel.index(left) < need) kept.push_back(triples[i]);
            }
            triples.swap(kept);
        }

        for (std::size_t ti = 0; ti < triples.size(); ++ti) {
            try {
                const auto t = cmp::make_triangle(sp, triples[ti][0],
                                                  triples[ti][1],
                                                  triples[ti][2]);
                if (!model::realizable(K, t.a, t.b, t.c)) continue;
                const auto cfg = cmp::realize_triangle(K, t);
                const auto pairs = cmp::default_pairs(
                    sp, t, dp.pair_budget,
                    rng::derive_seed(seed, "lg-lpair", di * 100003 + ti));
                const auto v =
                    cmp::compare_triangle(sp, K, dir, t, cfg, pairs, tol);
                ++d.triangles;
                if (!v.pass) d.pass = false;
                const double sev = severity(v.formulation, dir, v.worst_margin);
                if (!d.has_worst ||
                    sev > severity(d.worst.formulation, dir,
                                   d.worst.worst_margin)) {
                    d.worst = v;
                    d.has_worst = true;
                    d.worst_margin = v.worst_margin;
                }
            } catch (const Error&) {
            }
        }
        if (!d.pass) out.local_pass = false;
        out.diamonds.push_back(std::move(d));
    }

    // Uniqueness proxy: the diamond pairs plus extra sampled chron pairs.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> upairs = picked;
    rng::Stream us(rng::derive_seed(seed, "lg-uniq"));
    for (std::size_t attempt = 0;
         attempt < dp.count * 40 && upairs.size() < dp.count * 5 && n > 1;
         ++attempt) {
        const auto p = static_cast<std::uint32_t>(us.index(n));
        const auto desc = sp.reach().row_indices(p);
        if (desc.empty()) continue;
        const auto q = desc[us.index(desc.size())];
        if (!sp.chron(p, q)) continue;
        upairs.push_back({p, q});
    }
    std::sort(upairs.begin(), upairs.end());
    upairs.erase(std::unique(upairs.begin(), upairs.end()), upairs.end());
    for (const auto& [p, q] : upairs) {
        ++out.uniqueness_pairs;
        if (maximal_chains(sp, p, q, 2).size() > 1) ++out.uniqueness_violations;
    }
    out.uniqueness_hypothesis = out.uniqueness_violations == 0;

    out.implication_held =
        !(out.local_pass && out.uniqueness_hypothesis) || out.global_pass;
    out.restriction_consistent = !out.global_pass || out.local_pass;
    return out;
}

NondegeneracyOutcome check_nondegeneracy_probe(const space::DiscreteSpace& sp,
                                               double K, std::size_t budget,
                                               double angle_tol,
                                               std::uint64_t seed) {
    NondegeneracyOutcome out;
    out.ran = true;
    out.K = K;
    out.tolerance = angle_tol;
    const std::size_t n = sp.size();

    // Fraction of chron pairs with a non-degenerate triangle through their
    // interval.
    rng::Stream ps(rng::derive_seed(seed, "nd-pairs"));
    std::set<std::pair<std::uint32_t, std::uint32_t>> sampled;
    for (std::size_t attempt = 0;
         attempt < budget * 40 && sampled.size() < budget && n > 1; ++attempt) {
        const auto p = static_cast<std::uint32_t>(ps.index(n));
        const auto desc = sp.reach().row_indices(p);
        if (desc.empty()) continue;
        const auto q = desc[ps.index(desc.size())];
        if (!sp.chron(p, q)) continue;
        sampled.insert({p, q});
    }
    for (const auto& [p, q] : sampled) {
        ++out.pairs_sampled;
        const double c = sp.tau(p, q);
        for (std::uint32_t y : sp.interval(p, q)) {
            if (c - sp.tau(p, y) - sp.tau(y, q) > cmp::kDegenerateRel * c) {
                ++out.pairs_nondegenerate;
                break;
            }
        }
    }
    out.fraction = out.pairs_sampled == 0
                       ? 0.0
                       : static_cast<double>(out.pairs_nondegenerate) /
                             static_cast<double>(out.pairs_sampled);

    // Equal-angles configurations: a << x << y with x tau-additive on a
    // maximizing chain from a to b and (x, y, b) non-degenerate. The angle
    // at x inside (a, x, y) is taken at its middle vertex, the angle inside
    // (x, y, b) at its past vertex; the two must agree.
    cmp::AngleOptions aopt;
    aopt.tol = angle_tol;
    rng::Stream cs(rng::derive_seed(seed, "nd-conf"));
    for (std::size_t attempt = 0;
         attempt < budget * 60 && out.configurations < budget && n > 1;
         ++attempt) {
        const auto a = static_cast<std::uint32_t>(cs.index(n));
        const auto desc = sp.reach().row_indices(a);
        if (desc.empty()) continue;
        const auto b = desc[cs.index(desc.size())];
        if (!sp.chron(a, b)) continue;
        const auto rc = space::geodesic_chain(sp, a, b);
        const auto& verts = rc.chain.vertices;
        if (verts.size() < 3) continue;
        const double tab = sp.tau(a, b);
        for (std::size_t vi = 1; vi + 1 < verts.size(); ++vi) {
            const std::uint32_t x = verts[vi];
            if (!sp.chron(a, x) || !sp.chron(x, b)) continue;
            // Additivity gate coupled to the angle tolerance: a vertex a
            // residual tau deficit off the geodesic bends the legs by about
            // sqrt(2 residual / shorter_leg), so the residual must be small
            // enough that the bend cannot masquerade as a violation.
            const double leg_ax = sp.tau(a, x), leg_xb = sp.tau(x, b);
            const double residual = std::fabs(leg_ax + leg_xb - tab);
            const double bend_gate =
                std::min(leg_ax, leg_xb) * angle_tol * angle_tol / 200.0;
            if (residual > std::min(1e-9 * tab, bend_gate)) continue;
            const auto mids = sp.interval(x, b);
            std::size_t tried = 0;
            for (std::size_t yi = 0; yi < mids.size() && tried < 2; ++yi) {
                const std::uint32_t y = mids[(yi + cs.index(mids.size())) %
                                             mids.size()];
                const double txb = sp.tau(x, b);
                if (txb - sp.tau(x, y) - sp.tau(y, b) <=
                    cmp::kDegenerateRel * txb)
                    continue;
                ++tried;
                ++out.configurations;
                try {
                    const auto t1 = cmp::make_triangle(sp, a, x, y);
                    if (t1.degenerate) {
                        ++out.degenerate_transfers;
                        continue;
                    }
                    const auto t2 = cmp::make_triangle(sp, x, y, b);
                    const auto a1 = cmp::measure_angle(
                        sp, t1, model::Vertex::middle, K, aopt);
                    const auto a2 = cmp::measure_angle(
                        sp, t2, model::Vertex::past, K, aopt);
                    const double gap = std::fabs(a1.angle - a2.angle);
                    ++out.angles_measured;
                    if (gap > out.worst_angle_gap) out.worst_angle_gap = gap;
                    if (gap > angle_tol) ++out.angles_failed;
                } catch (const AngleUndefined&) {
                    ++out.angles_skipped;
                } catch (const NonConvergent&) {
                    ++out.angles_skipped;
                }
                if (out.configurations >= budget) break;
            }
            if (out.configurations >= budget) break;
        }
    }
    if (out.configurations == 0)
        throw InsufficientSamples(
            "no tau-additive chain vertex with a non-degenerate transversal");
    out.pass = out.degenerate_transfers == 0 && out.angles_failed == 0;
    return out;
}

VerificationReport run_campaign(const space::DiscreteSpace& sp,
                                const Campaign& c) {
    if (c.k_grid.empty()) throw ConfigError("k_grid must be nonempty");
    if (c.directions.empty()) throw ConfigError("directions must be nonempty");
    if (c.formulations.empty())
        throw ConfigError("formulations must be nonempty");
    if (c.triangle_budget == 0 || c.pair_budget == 0)
        throw ConfigError("budgets must be positive");
    if (c.locality == Locality::diamonds &&
        (c.diamonds.count == 0 || c.diamonds.triangle_budget == 0 ||
         c.diamonds.pair_budget == 0))
        throw ConfigError("diamond budgets must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.campaign = c;
    rep.space.points = sp.size();
    rep.space.links = sp.link_count();
    rep.space.chron_pairs = sp.chron_pair_count();
    rep.space.ambient = sp.ambient().kind;
    rep.space.ambient_param = sp.ambient().param;
    rep.space.provenance = sp.provenance();
    rep.space.all_coords = sp.all_coords();

    if (c.check_axioms) {
        rep.axioms = space::validate_axioms(sp);
        rep.axioms_ran = true;
    }

    // One triangle sample at the most negative curvature: its size bound
    // c < D_K is the strictest over the grid, so the sample realizes at
    // every requested K.
    const double k_min = *std::min_element(c.k_grid.begin(), c.k_grid.end());
    rep.sample_K = k_min;
    cmp::TriangleFilter filt;
    filt.K = k_min;
    filt.min_side = c.min_side;
    const auto tris = cmp::enumerate_triangles(
        sp, filt, c.triangle_budget, rng::derive_seed(c.seed, "tri"));
    rep.sample_triangles = tris.size();
    if (tris.empty()) rep.notes.push_back("triangle sample is empty");

    struct Task {
        double K;
        cmp::Direction dir;
        cmp::Formulation form;
    };
    std::vector<Task> tasks;
    for (double K : c.k_grid)
        for (auto dir : c.directions)
            for (auto form : c.formulations) tasks.push_back({K, dir, form});
    rep.outcomes.resize(tasks.size());
    const std::size_t jobs =
        std::max<std::size_t>(1, std::min(c.jobs, tasks.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            rep.outcomes[i] = run_outcome(sp, tris, tasks[i].K, tasks[i].dir,
                                          tasks[i].form, c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    rep.outcomes[i] = run_outcome(sp, tris, tasks[i].K,
                                                  tasks[i].dir, tasks[i].form,
                                                  c);
                }
            });
        for (auto& th : pool) th.join();
    }

    if (c.check_diameter) {
        if (k_min < 0.0) {
            rep.diameter = check_diameter_bound(sp, k_min);
        } else {
            rep.diameter.skip_reason = "no negative curvature in the grid";
            rep.notes.push_back("diameter: " + rep.diameter.skip_reason);
        }
    } else {
        rep.diameter.skip_reason = "disabled";
    }

    if (c.check_perimeter) {
        if (k_min < 0.0) {
            rep.perimeter = check_perimeter_bound(tris, k_min);
        } else {
            rep.perimeter.skip_reason = "no negative curvature in the grid";
            rep.notes.push_back("perimeter: " + rep.perimeter.skip_reason);
        }
    } else {
        rep.perimeter.skip_reason = "disabled";
    }

    if (c.locality == Locality::diamonds) {
        const bool has_above =
            std::find(c.directions.begin(), c.directions.end(),
                      cmp::Direction::above) != c.directions.end();
        if (!has_above) {
            rep.notes.push_back(
                "local-global: skipped, needs the above direction");
        } else {
            for (std::size_t ki = 0; ki < c.k_grid.size(); ++ki) {
                try {
                    rep.local_global.push_back(check_local_vs_global(
                        sp, c.k_grid[ki], cmp::Direction::above, c.diamonds,
                        c.triangle_budget, c.pair_budget, c.tau_tol,
                        rng::derive_seed(c.seed, "lg", ki)));
                } catch (const Error& e) {
                    rep.notes.push_back(std::string("local-global: ") +
                                        e.what());
                }
            }
        }
    }

    if (c.check_nondegeneracy) {
        try {
            rep.nondegeneracy = check_nondegeneracy_probe(
                sp, k_min, 64, c.angle_tol, rng::derive_seed(c.seed, "nondeg"));
        } catch (const InsufficientSamples& e) {
            rep.nondegeneracy.skip_reason = e.what();
            rep.notes.push_back(std::string("nondegeneracy: ") + e.what());
        } catch (const Error& e) {
            rep.nondegeneracy.skip_reason = e.what();
            rep.notes.push_back(std::string("nondegeneracy: ") + e.what());
        }
    } else {
        rep.nondegeneracy.skip_reason = "disabled";
    }

    // Tally.
    auto fail = [&](bool cond) {
        if (cond) {
            rep.all_pass = false;
            ++rep.violations;
        }
    };
    if (rep.axioms_ran) fail(!rep.axioms.pass);
    for (const auto& o : rep.outcomes) fail(!o.pass);
    if (rep.diameter.ran) fail(!rep.diameter.pass);
    if (rep.perimeter.ran) fail(!rep.perimeter.pass);
    for (const auto& lg : rep.local_global) {
        if (!lg.ran) continue;
        fail(!lg.global_pass);
        fail(!lg.local_pass);
        fail(!lg.implication_held);
        fail(!lg.restriction_consistent);
    }
    if (rep.nondegeneracy.ran) fail(!rep.nondegeneracy.pass);

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

} // namespace lorcomp::verifier
