#ifndef LORCOMP_GEN_HPP
#define LORCOMP_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lorcomp/model.hpp"
#include "lorcomp/space.hpp"

// Construction of finite spaces: Poisson sprinkles into model-space charts
// and the flat cylinder, plus hand-built fixture configurations.
namespace lorcomp::gen {

enum class Ambient { minkowski, ads, desitter, cylinder };

// Chart rectangle [t0,t1]x[x0,x1] or the open causal diamond between two
// timelike-related chart points.
struct Region {
    enum class Kind { rect, diamond };
    Kind kind = Kind::rect;
    double t0 = 0, t1 = 0, x0 = 0, x1 = 0;
    model::ModelPoint lo{}, hi{};

    static Region rect(double t0, double t1, double x0, double x1) {
        Region r;
        r.kind = Kind::rect;
        r.t0 = t0; r.t1 = t1; r.x0 = x0; r.x1 = x1;
        return r;
    }
    static Region diamond(model::ModelPoint lo, model::ModelPoint hi) {
        Region r;
        r.kind = Kind::diamond;
        r.lo = lo; r.hi = hi;
        return r;
    }
};

enum class TauMode { inherited, intrinsic_weighted, intrinsic_link };

struct SprinkleSpec {
    Ambient ambient = Ambient::minkowski;
    // Curvature K for ads (<0) / desitter (>0), circumference for cylinder.
    double param = 0.0;
    Region region;
    bool use_density = false;
    double density = 0.0;     // expected points per unit chart volume
    std::size_t count = 0;    // exact point count when use_density is false
    std::uint64_t seed = 0;
    TauMode tau_mode = TauMode::inherited;
};

// Hard cap on generated point counts.
inline constexpr std::size_t kMaxPoints = 200'000;

// Chart volume of the region (the measure the sprinkle is uniform against).
double region_volume(const SprinkleSpec& spec);

// Deterministic Poisson sprinkle; points sorted by chart time.
space::DiscreteSpace sprinkle(const SprinkleSpec& spec);

// Cylinder time separation: best Minkowski value over windings.
struct WindingTau {
    double tau = 0.0;   // max over windings, 0 if spacelike on all
    double dx = 0.0;    // unwrapped x displacement of the chosen winding
    int multiplicity = 0; // windings within relative 1e-9 of the max
    struct Entry {
        int w;
        double dx;
        double tau;
    };
    std::vector<Entry> windings; // timelike windings, ascending w
};

WindingTau cylinder_tau_full(double circumference, model::ModelPoint p,
                             model::ModelPoint q);
double cylinder_tau(double circumference, model::ModelPoint p,
                    model::ModelPoint q);

// Named deterministic configurations used by the verification scenarios.
// Throws UnknownFixture for anything else.
space::DiscreteSpace fixture(const std::string& name);
std::vector<std::string> fixture_names();

} // namespace lorcomp::gen

#endif
