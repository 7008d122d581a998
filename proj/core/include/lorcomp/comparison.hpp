#ifndef LORCOMP_COMPARISON_HPP
#define LORCOMP_COMPARISON_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lorcomp/model.hpp"
#include "lorcomp/space.hpp"

// The comparison engine. A timelike triangle of a DiscreteSpace is realized
// with the same side lengths in the model space of curvature K, side points
// are mapped to comparison points at equal tau fractions, and curvature
// bounds are tested in four formulations: time separations of side-point
// pairs, monotonicity of comparison-angle grids, measured angles against
// full-triangle comparison angles, and hinges via the law of cosines.
//
// Direction convention:
//   below = curvature bounded below by K. Side-point pairs must satisfy
//           tau(p,q) <= tau(pbar,qbar), so timelike relatedness transfers
//           from the space into the model; signed comparison angles are
//           nondecreasing in the scale parameters; measured angles do not
//           exceed the full comparison angle; hinge far separations dominate
//           the law-of-cosines value (the hinge check inverts the pairwise
//           inequality sense).
//   above = curvature bounded above by K; every inequality is reversed.
namespace lorcomp::comparison {

enum class Side { xy, yz, xz };
enum class Direction { above, below };
enum class Formulation { triangle, monotonicity, angle, hinge };

const char* to_string(Side s);
const char* to_string(Direction d);
const char* to_string(Formulation f);

// Relative slack under which c - (a + b) counts as zero and the triangle as
// degenerate (its realization is collinear). Degenerate triangles are still
// compared; the wrap-around counterexample on the cylinder is one.
inline constexpr double kDegenerateRel = 1e-9;

// Default tolerances: absolute on tau margins, absolute on angles.
inline constexpr double kTauTol = 1e-6;
inline constexpr double kAngleTol = 1e-4;

// A chron-related triple x << y << z with side lengths a = tau(x,y),
// b = tau(y,z), c = tau(x,z) and the maximizing chains realizing the sides.
// The reverse triangle inequality gives c >= a + b.
struct TimelikeTriangle {
    std::uint32_t x = 0, y = 0, z = 0;
    double a = 0.0, b = 0.0, c = 0.0;
    space::Chain side_xy, side_yz, side_xz;
    bool degenerate = false;

    const space::Chain& side(Side s) const;
    double side_length(Side s) const; // a, b or c
    std::uint32_t side_start(Side s) const;
    std::uint32_t side_end(Side s) const;
    double perimeter() const { return a + b + c; }
};

// Throws NotTimelikeRelated unless x << y << z.
TimelikeTriangle make_triangle(const space::DiscreteSpace& sp, std::uint32_t x,
                               std::uint32_t y, std::uint32_t z);

struct TriangleFilter {
    double K = 0.0;                 // realizability bound: keep c < D_K
    bool include_degenerate = true;
    double min_side = 0.0;          // drop triangles with a shorter side
};

// Deterministic seeded sample of timelike triangles, sorted by vertex
// indices, at most `budget` of them. Small spaces are enumerated
// exhaustively; larger ones are sampled, with an extra pass that seeds
// near-degenerate triples (middle vertex close to a maximizing chain),
// which stress the comparisons hardest.
std::vector<TimelikeTriangle>
enumerate_triangles(const space::DiscreteSpace& sp, const TriangleFilter& f,
                    std::size_t budget, std::uint64_t seed);

// Triangle with the same side lengths in the model of curvature K, in unit
// chart coordinates. Normalization: xbar and zbar lie on the time axis with
// tau(xbar, zbar) = c and ybar has nonnegative space coordinate. For K = 0
// xbar sits at the origin; for curved models the pair is centered about
// t = 0 so that the whole triangle stays inside the chart domain.
struct ComparisonConfiguration {
    double K = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    model::ModelPoint xbar, ybar, zbar;
};

// Throws UnrealizableTriangle when c < a + b or c >= D_K. The realized side
// lengths reproduce (a, b, c) to 1e-9 relative; triangles inside the
// degeneracy tolerance realize exactly collinear.
ComparisonConfiguration realize_triangle(double K, const TimelikeTriangle& t);
ComparisonConfiguration realize_sides(double K, double a, double b, double c);

// A parameter position on one side of a triangle: the point at this tau
// fraction along the side. `vertex` names the space point the sample came
// from (kNoVertex for pure grid samples on coordinate-backed spaces).
inline constexpr std::uint32_t kNoVertex = 0xffffffffu;

struct SidePoint {
    Side side = Side::xy;
    double fraction = 0.0; // tau-arclength fraction in [0, 1]
    std::uint32_t vertex = kNoVertex;
};

// Model point at the side point's fraction on the corresponding realized
// side. Throws PairOffTriangle for fractions outside [0, 1].
model::ModelPoint comparison_point(const ComparisonConfiguration& cfg,
                                   const SidePoint& p);

// One evaluated comparison sample. For the triangle formulation lhs/rhs are
// tau(p,q) and tau(pbar,qbar); for angle grids they are the two signed
// angles of an adjacent cell pair; for hinges the far separation and the
// law-of-cosines value. margin is the violation-signed gap described at each
// compare_* operation.
struct Witness {
    SidePoint p, q;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

struct ComparisonVerdict {
    Formulation formulation = Formulation::triangle;
    Direction direction = Direction::below;
    double K = 0.0;
    bool pass = true;
    // Most violating signed value; the pass predicate per formulation:
    //   triangle:     margin = tau - taubar; below max <= tol, above min >= -tol
    //   hinge:        margin = far - law_of_cosines; below min >= -tol,
    //                 above max <= tol
    //   angle:        margin = measured - comparison (signed angles);
    //                 below max <= tol, above min >= -tol
    //   monotonicity: margin = largest wrong-way grid increment; <= tol
    double worst_margin = 0.0;
    double tolerance = 0.0;
    std::uint32_t x = 0, y = 0, z = 0; // triangle under test
    std::vector<Witness> witnesses;    // worst five, most severe first
    std::size_t samples = 0;
    // Timelike-relatedness transfer: below counts pairs with tau(p,q) > tol
    // and flags those whose comparison points are unrelated; above counts
    // the converse. Gating by tol keeps rounding-level light-cone crossings
    // out of the failure count.
    std::size_t implications_checked = 0;
    std::size_t implications_failed = 0;
};

// Cross-side sample pairs for a triangle: chain vertices at their exact tau
// fractions plus, on coordinate-backed spaces, an eighth grid and two seeded
// fractions per side; seeded uniform subsample above `budget`. The sampled
// sides are evaluated on the ambient geodesics between the vertex
// coordinates when the space inherits tau from an ambient model, so margins
// reflect geometry rather than sprinkling noise.
std::vector<std::pair<SidePoint, SidePoint>>
default_pairs(const space::DiscreteSpace& sp, const TimelikeTriangle& t,
              std::size_t budget, std::uint64_t seed);

// Pairwise time-separation comparison over the given side-point pairs.
// Throws PairOffTriangle for malformed side points and std::invalid_argument
// when cfg does not realize t.
ComparisonVerdict
compare_triangle(const space::DiscreteSpace& sp, double K, Direction dir,
                 const TimelikeTriangle& t, const ComparisonConfiguration& cfg,
                 const std::vector<std::pair<SidePoint, SidePoint>>& pairs,
                 double tol = kTauTol);

// Controls for the angle limit: geometric shrink schedule s_k = s0 / 2^k.
struct AngleOptions {
    double start_fraction = 0.5; // s0 as a fraction of the shorter leg
    int levels = 6;
    double tol = kAngleTol; // convergence threshold on the final delta
};

struct AngleResult {
    double angle = 0.0;        // nonnegative hyperbolic angle
    double signed_angle = 0.0; // vertex_sign * angle
    double error_estimate = 0.0;
    int levels_used = 0;
    double ratio = 1.0; // t:s leg ratio (end vertices need asymmetric pairs)
    std::vector<double> level_values;
};

// Angle at a triangle vertex as the limit of comparison angles of shrinking
// sub-triangles, extrapolated over the shrink schedule. At the past/future
// vertex the two legs have the same time orientation and only asymmetric
// (s, t) pairs are timelike related; the ratio is searched in powers of two.
// Throws AngleUndefined when no admissible schedule exists and NonConvergent
// when the level values oscillate beyond tolerance.
AngleResult measure_angle(const space::DiscreteSpace& sp,
                          const TimelikeTriangle& t, model::Vertex vertex,
                          double K, const AngleOptions& opt = {});

// Signed comparison-angle grid over scales (s, t) measured from the vertex
// along its two legs (absolute tau depths, ascending). The legs are, per
// vertex: past (xy, xz), middle (xy, yz), future (yz, xz); s runs on the
// first leg. Checks monotonicity in each argument: nondecreasing for below,
// nonincreasing for above. Throws InsufficientSamples when no axis has two
// admissible cells.
ComparisonVerdict compare_monotonicity(const space::DiscreteSpace& sp,
                                       double K, Direction dir,
                                       const TimelikeTriangle& t,
                                       model::Vertex vertex,
                                       const std::vector<double>& s_grid,
                                       const std::vector<double>& t_grid,
                                       double tol = kAngleTol);

// Default monotonicity scale grid: eighths of the leg length.
std::vector<double> default_scale_grid(double leg_length);

// Measured angle at each vertex against the comparison angle of the full
// side lengths, signed. Skips vertices whose angle limit is undefined;
// throws AngleUndefined when that leaves nothing to check.
ComparisonVerdict compare_angle(const space::DiscreteSpace& sp, double K,
                                Direction dir, const TimelikeTriangle& t,
                                const AngleOptions& aopt = {},
                                double tol = kAngleTol);

// Hinge check at each vertex: the far side length against the law of
// cosines evaluated on the legs and the measured angle. Note the inverted
// inequality sense (below demands far >= model). Skips undefined vertices;
// throws AngleUndefined when every vertex is undefined.
ComparisonVerdict compare_hinge(const space::DiscreteSpace& sp, double K,
                                Direction dir, const TimelikeTriangle& t,
                                const AngleOptions& aopt = {},
                                double tol = kTauTol);

// Subdivision of a triangle at an interior chain vertex p of one side.
// Splitting the long side depends on how p relates to y: p << y gives
// (x,p,y)+(p,y,z), y << p gives (x,y,p)+(y,p,z), and incomparable p throws
// NotTimelikeRelated. Splitting side xy gives (x,p,z)+(p,y,z); side yz
// gives (x,y,p)+(x,p,z). Throws PairOffTriangle when p.vertex is not an
// interior vertex of the named side's chain.
std::pair<TimelikeTriangle, TimelikeTriangle>
glue_subdivide(const space::DiscreteSpace& sp, const TimelikeTriangle& t,
               const SidePoint& p);

} // namespace lorcomp::comparison

#endif
