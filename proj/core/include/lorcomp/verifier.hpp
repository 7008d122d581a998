#ifndef LORCOMP_VERIFIER_HPP
#define LORCOMP_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lorcomp/comparison.hpp"
#include "lorcomp/space.hpp"

// Campaign driver: runs curvature-bound checks over a curvature grid and
// aggregates the verdicts, together with the axiom audit, the diameter and
// perimeter bounds for negative curvature, diamond-local versus global
// comparisons, and the equal-angles probe at geodesic vertices. A report
// never claims a bound "holds"; a passing check means no violation was found
// at the sampled resolution.
namespace lorcomp::verifier {

enum class Locality { global, diamonds };

// Sampling controls for diamond-local checks. A diamond is the strict
// chronological interval of a sampled pair; only diamonds with at least
// min_interior points inside qualify. max_height caps tau(p, q) and sets
// the neighbourhood scale the locality claim is made at.
struct DiamondParams {
    std::size_t count = 12;
    std::size_t min_interior = 8;
    std::size_t triangle_budget = 12;
    std::size_t pair_budget = 120;
    double max_height = model::kInfiniteDiameter;
};

struct Campaign {
    std::string label = "campaign";
    std::vector<double> k_grid; // required nonempty
    std::vector<comparison::Direction> directions{comparison::Direction::below,
                                                  comparison::Direction::above};
    std::vector<comparison::Formulation> formulations{
        comparison::Formulation::triangle};
    std::size_t triangle_budget = 40;
    std::size_t pair_budget = 400;
    double min_side = 0.0;
    std::uint64_t seed = 1;
    double tau_tol = comparison::kTauTol;
    double angle_tol = comparison::kAngleTol;
    Locality locality = Locality::global;
    DiamondParams diamonds;
    bool check_axioms = true;
    bool check_diameter = true;
    bool check_perimeter = true;
    bool check_nondegeneracy = true;
    std::size_t jobs = 1; // worker threads; results independent of the value
};

// Aggregated result of one formulation at one (K, direction) over the shared
// triangle sample. worst is the most severe per-triangle verdict (kept with
// its witnesses); severity follows the margin sense of the formulation.
struct CheckOutcome {
    comparison::Formulation formulation = comparison::Formulation::triangle;
    comparison::Direction direction = comparison::Direction::below;
    double K = 0.0;
    bool pass = true;
    std::size_t triangles = 0; // verdicts aggregated
    std::size_t skipped = 0;   // triangles without a verdict
    std::size_t samples = 0;
    std::size_t implications_checked = 0;
    std::size_t implications_failed = 0;
    bool has_worst = false;
    comparison::ComparisonVerdict worst;
    std::vector<std::string> skip_reasons; // deduplicated
};

struct DiameterOutcome {
    bool ran = false;
    std::string skip_reason;
    double K = 0.0;
    double bound = 0.0;    // pi / sqrt(-K)
    double diameter = 0.0; // largest finite tau
    double margin = 0.0;   // diameter - bound; pass iff margin <= tol
    double tolerance = 0.0;
    bool pass = true;
    std::uint32_t x = 0, y = 0; // pair attaining the diameter
};

struct PerimeterOutcome {
    bool ran = false;
    std::string skip_reason;
    double K = 0.0;
    double bound = 0.0;         // 2 D_K
    double max_perimeter = 0.0; // over the sampled triangles
    double margin = 0.0;        // max_perimeter - bound; pass iff <= tol
    double tolerance = 0.0;
    bool pass = true;
    std::size_t triangles = 0;
    std::uint32_t x = 0, y = 0, z = 0; // triangle attaining the maximum
};

struct DiamondOutcome {
    std::uint32_t p = 0, q = 0; // the diamond is the interval between them
    std::size_t interior = 0;
    std::size_t triangles = 0;
    bool pass = true;
    double worst_margin = 0.0;
    bool has_worst = false;
    comparison::ComparisonVerdict worst;
};

// Local-versus-global comparison at one (K, direction). The discrete stand-in
// for the geodesic-uniqueness hypothesis is recorded, not assumed: a sampled
// pair violates it when two distinct maximizing chains connect it.
struct LocalGlobalOutcome {
    bool ran = false;
    std::string skip_reason;
    double K = 0.0;
    comparison::Direction direction = comparison::Direction::above;
    std::vector<DiamondOutcome> diamonds;
    std::size_t admissible_diamonds = 0; // >= min_interior interior points
    bool local_pass = true;              // every sampled diamond passes
    bool global_pass = true;
    std::size_t global_triangles = 0;
    double global_worst_margin = 0.0;
    bool has_global_worst = false;
    comparison::ComparisonVerdict global_worst;
    // Uniqueness proxy over sampled chron pairs.
    std::size_t uniqueness_pairs = 0;
    std::size_t uniqueness_violations = 0;
    bool uniqueness_hypothesis = true;
    // (local pass and uniqueness) implies global pass.
    bool implication_held = true;
    // global pass implies every sampled diamond passes.
    bool restriction_consistent = true;
};

// Equal-angles probe at vertices lying exactly on a maximizing chain,
// plus the fraction of sampled chron pairs admitting a non-degenerate
// triangle through their interval. The fraction is reported, never gated.
struct NondegeneracyOutcome {
    bool ran = false;
    std::string skip_reason;
    double K = 0.0;
    // Hypothesis fraction: pairs x << z with some y in I(x, z) forming a
    // non-degenerate triangle.
    std::size_t pairs_sampled = 0;
    std::size_t pairs_nondegenerate = 0;
    double fraction = 0.0;
    // Equal-angles configurations a << x << y with x on a maximizing chain
    // from a to b and the triangle (x, y, b) non-degenerate.
    std::size_t configurations = 0;
    std::size_t degenerate_transfers = 0; // (a, x, y) degenerate anyway
    std::size_t angles_measured = 0;
    std::size_t angles_failed = 0;
    std::size_t angles_skipped = 0; // angle limit undefined or nonconvergent
    double worst_angle_gap = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct SpaceSummary {
    std::size_t points = 0;
    std::size_t links = 0;
    std::uint64_t chron_pairs = 0;
    space::AmbientKind ambient = space::AmbientKind::none;
    double ambient_param = 0.0;
    space::Provenance provenance = space::Provenance::explicit_;
    bool all_coords = false;
};

struct VerificationReport {
    Campaign campaign; // effective values, defaults materialized
    SpaceSummary space;
    bool axioms_ran = false;
    space::AxiomReport axioms;
    double sample_K = 0.0; // curvature at which the shared sample was drawn
    std::size_t sample_triangles = 0;
    std::vector<CheckOutcome> outcomes; // K-major, then direction, formulation
    DiameterOutcome diameter;
    PerimeterOutcome perimeter;
    std::vector<LocalGlobalOutcome> local_global; // one per K when requested
    NondegeneracyOutcome nondegeneracy;
    std::vector<std::string> notes; // skipped checks and recovered errors
    bool all_pass = true;           // every executed check passed
    std::size_t violations = 0;     // executed checks that failed
    // Runtime-only fields, excluded from byte comparisons.
    double wall_seconds = 0.0;
};

// Runs every requested check. Deterministic for a fixed seed: the triangle
// sample is drawn once at the most negative curvature of the grid (its size
// bound is the strictest) and shared by all outcomes, and per-triangle pair
// samples depend only on the seed and the triangle index. Sub-check errors
// are recorded in notes and the remaining checks still run. Throws
// ConfigError for an empty grid, empty direction/formulation lists, or zero
// budgets.
VerificationReport run_campaign(const space::DiscreteSpace& sp,
                                const Campaign& c);

// Largest finite tau against pi / sqrt(-K). Throws std::invalid_argument
// unless K < 0.
DiameterOutcome check_diameter_bound(const space::DiscreteSpace& sp, double K,
                                     double tol = 1e-9);

// Maximum perimeter of the given triangles against 2 pi / sqrt(-K). Throws
// std::invalid_argument unless K < 0.
PerimeterOutcome
check_perimeter_bound(const std::vector<comparison::TimelikeTriangle>& tris,
                      double K, double tol = 1e-9);

// Diamond-local triangle checks against a global sample at one curvature.
// Self-contained: draws its own global triangle sample and its own diamonds.
LocalGlobalOutcome check_local_vs_global(const space::DiscreteSpace& sp,
                                         double K, comparison::Direction dir,
                                         const DiamondParams& dp,
                                         std::size_t triangle_budget,
                                         std::size_t pair_budget,
                                         double tol, std::uint64_t seed);

// Up to cap maximizing chains from x to y over the links, lexicographically
// ascending. Chains within relative rel_slack of the maximum count as
// maximizing, so rounding-level ties are caught. Requires x << y.
std::vector<space::Chain> maximal_chains(const space::DiscreteSpace& sp,
                                         std::uint32_t x, std::uint32_t y,
                                         std::size_t cap,
                                         double rel_slack = 1e-9);

// Equal-angles probe: for configurations a << x << y with x an interior
// vertex of a maximizing chain from a to some b, tau-additive at x, and
// triangle (x, y, b) non-degenerate, the angle at x between the incoming
// leg and the leg to y must match the angle between the outgoing leg and
// the leg to y. The additivity gate shrinks with angle_tol^2 so that a
// vertex merely near the geodesic cannot bend the legs by a detectable
// amount; configurations that fail the gate are skipped. Throws
// InsufficientSamples when the space has no qualifying configuration.
NondegeneracyOutcome check_nondegeneracy_probe(const space::DiscreteSpace& sp,
                                               double K, std::size_t budget,
                                               double angle_tol,
                                               std::uint64_t seed);

} // namespace lorcomp::verifier

#endif
