#include "lorcomp/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "lorcomp/strfmt.hpp"
#include "lorcomp/version.hpp"

namespace lorcomp::report {

namespace cmp = lorcomp::comparison;
using detail::g17;

const char* ambient_name(space::AmbientKind k) {
    switch (k) {
    case space::AmbientKind::none: return "none";
    case space::AmbientKind::minkowski: return "minkowski";
    case space::AmbientKind::ads: return "ads";
    case space::AmbientKind::desitter: return "desitter";
    case space::AmbientKind::cylinder: return "cylinder";
    }
    return "none";
}

const char* provenance_name(space::Provenance p) {
    switch (p) {
    case space::Provenance::inherited: return "inherited";
    case space::Provenance::intrinsic: return "intrinsic";
    case space::Provenance::explicit_: return "explicit";
    }
    return "explicit";
}

namespace {

const char* b(bool v) { return v ? "true" : "false"; }

std::string join_doubles(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += g17(xs[i]);
    }
    return s;
}

std::string join_directions(const std::vector<cmp::Direction>& ds) {
    std::string s;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) s += ",";
        s += cmp::to_string(ds[i]);
    }
    return s;
}

std::string join_formulations(const std::vector<cmp::Formulation>& fs) {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) s += ",";
        s += cmp::to_string(fs[i]);
    }
    return s;
}

std::string side_point(const cmp::SidePoint& p) {
    std::string s = cmp::to_string(p.side);
    s += " f=";
    s += g17(p.fraction);
    s += " v=";
    s += p.vertex == cmp::kNoVertex ? std::string("-")
                                    : std::to_string(p.vertex);
    return s;
}

void write_witnesses(std::ostream& os, const cmp::ComparisonVerdict& v) {
    for (const auto& w : v.witnesses) {
        os << "witness = " << side_point(w.p) << " | " << side_point(w.q)
           << " lhs=" << g17(w.lhs) << " rhs=" << g17(w.rhs)
           << " margin=" << g17(w.margin) << "\n";
    }
}

void write_campaign(std::ostream& os, const verifier::Campaign& c) {
    os << "[campaign]\n";
    os << "label = " << c.label << "\n";
    os << "k_grid = " << join_doubles(c.k_grid) << "\n";
    os << "directions = " << join_directions(c.directions) << "\n";
    os << "formulations = " << join_formulations(c.formulations) << "\n";
    os << "triangle_budget = " << c.triangle_budget << "\n";
    os << "pair_budget = " << c.pair_budget << "\n";
    os << "min_side = " << g17(c.min_side) << "\n";
    os << "seed = " << c.seed << "\n";
    os << "tau_tol = " << g17(c.tau_tol) << "\n";
    os << "angle_tol = " << g17(c.angle_tol) << "\n";
    os << "locality = "
       << (c.locality == verifier::Locality::global ? "global" : "diamonds")
       << "\n";
    os << "diamond_count = " << c.diamonds.count << "\n";
    os << "diamond_min_interior = " << c.diamonds.min_interior << "\n";
    os << "diamond_triangle_budget = " << c.diamonds.triangle_budget << "\n";
    os << "diamond_pair_budget = " << c.diamonds.pair_budget << "\n";
    os << "diamond_max_height = " << g17(c.diamonds.max_height) << "\n";
    os << "check_axioms = " << b(c.check_axioms) << "\n";
    os << "check_diameter = " << b(c.check_diameter) << "\n";
    os << "check_perimeter = " << b(c.check_perimeter) << "\n";
    os << "check_nondegeneracy = " << b(c.check_nondegeneracy) << "\n";
    os << "jobs = " << c.jobs << "\n";
}

void write_space(std::ostream& os, const verifier::SpaceSummary& s) {
    os << "[space]\n";
    os << "points = " << s.points << "\n";
    os << "links = " << s.links << "\n";
    os << "chron_pairs = " << s.chron_pairs << "\n";
    os << "ambient = " << ambient_name(s.ambient) << "\n";
    os << "ambient_param = " << g17(s.ambient_param) << "\n";
    os << "provenance = " << provenance_name(s.provenance) << "\n";
    os << "coordinates = " << (s.all_coords ? "full" : "partial") << "\n";
}

void write_axioms(std::ostream& os, const space::AxiomReport& a) {
    os << "[axioms]\n";
    os << "pass = " << b(a.pass) << "\n";
    os << "tolerance = " << g17(a.tolerance) << "\n";
    os << "checks = " << a.checks.size() << "\n";
    for (const auto& ch : a.checks) {
        os << "check = " << ch.name << " " << (ch.pass ? "pass" : "FAIL")
           << " checked=" << ch.checked;
        if (!ch.witness.empty()) os << " witness=" << ch.witness;
        os << "\n";
    }
}

void write_outcome(std::ostream& os, const verifier::CheckOutcome& o) {
    os << "[check]\n";
    os << "formulation = " << cmp::to_string(o.formulation) << "\n";
    os << "direction = " << cmp::to_string(o.direction) << "\n";
    os << "K = " << g17(o.K) << "\n";
    os << "pass = " << b(o.pass) << "\n";
    os << "triangles = " << o.triangles << "\n";
    os << "skipped = " << o.skipped << "\n";
    os << "samples = " << o.samples << "\n";
    os << "implications = " << o.implications_checked << "/"
       << o.implications_failed << "\n";
    if (o.has_worst) {
        os << "worst_margin = " << g17(o.worst.worst_margin) << "\n";
        os << "worst_triangle = " << o.worst.x << " " << o.worst.y << " "
           << o.worst.z << "\n";
        write_witnesses(os, o.worst);
    }
    for (const auto& r : o.skip_reasons) os << "skip_reason = " << r << "\n";
}

void write_diameter(std::ostream& os, const verifier::DiameterOutcome& d) {
    os << "[diameter]\n";
    os << "ran = " << b(d.ran) << "\n";
    if (!d.ran) {
        if (!d.skip_reason.empty()) os << "reason = " << d.skip_reason << "\n";
        return;
    }
    os << "K = " << g17(d.K) << "\n";
    os << "bound = " << g17(d.bound) << "\n";
    os << "value = " << g17(d.diameter) << "\n";
    os << "margin = " << g17(d.margin) << "\n";
    os << "tolerance = " << g17(d.tolerance) << "\n";
    os << "pass = " << b(d.pass) << "\n";
    os << "pair = " << d.x << " " << d.y << "\n";
}

void write_perimeter(std::ostream& os, const verifier::PerimeterOutcome& p) {
    os << "[perimeter]\n";
    os << "ran = " << b(p.ran) << "\n";
    if (!p.ran) {
        if (!p.skip_reason.empty()) os << "reason = " << p.skip_reason << "\n";
        return;
    }
    os << "K = " << g17(p.K) << "\n";
    os << "bound = " << g17(p.bound) << "\n";
    os << "value = " << g17(p.max_perimeter) << "\n";
    os << "margin = " << g17(p.margin) << "\n";
    os << "tolerance = " << g17(p.tolerance) << "\n";
    os << "pass = " << b(p.pass) << "\n";
    os << "triangles = " << p.triangles << "\n";
    os << "triangle = " << p.x << " " << p.y << " " << p.z << "\n";
}

void write_local_global(std::ostream& os,
                        const verifier::LocalGlobalOutcome& lg) {
    os << "[local-global]\n";
    os << "ran = " << b(lg.ran) << "\n";
    if (!lg.ran) {
        if (!lg.skip_reason.empty())
            os << "reason = " << lg.skip_reason << "\n";
        return;
    }
    os << "K = " << g17(lg.K) << "\n";
    os << "direction = " << cmp::to_string(lg.direction) << "\n";
    os << "global_pass = " << b(lg.global_pass) << "\n";
    os << "global_triangles = " << lg.global_triangles << "\n";
    if (lg.has_global_worst)
        os << "global_worst_margin = " << g17(lg.global_worst_margin) << "\n";
    os << "admissible_diamonds = " << lg.admissible_diamonds << "\n";
    os << "local_pass = " << b(lg.local_pass) << "\n";
    for (const auto& d : lg.diamonds) {
        os << "diamond = p=" << d.p << " q=" << d.q
           << " interior=" << d.interior << " triangles=" << d.triangles << " "
           << (d.pass ? "pass" : "FAIL");
        if (d.has_worst) os << " worst_margin=" << g17(d.worst_margin);
        os << "\n";
    }
    os << "uniqueness_pairs = " << lg.uniqueness_pairs << "\n";
    os << "uniqueness_violations = " << lg.uniqueness_violations << "\n";
    os << "uniqueness_hypothesis = " << b(lg.uniqueness_hypothesis) << "\n";
    os << "implication_held = " << b(lg.implication_held) << "\n";
    os << "restriction_consistent = " << b(lg.restriction_consistent) << "\n";
    if (!lg.skip_reason.empty()) os << "note = " << lg.skip_reason << "\n";
}

void write_nondegeneracy(std::ostream& os,
                         const verifier::NondegeneracyOutcome& nd) {
    os << "[nondegeneracy]\n";
    os << "ran = " << b(nd.ran) << "\n";
    if (!nd.ran) {
        if (!nd.skip_reason.empty())
            os << "reason = " << nd.skip_reason << "\n";
        return;
    }
    os << "K = " << g17(nd.K) << "\n";
    os << "pairs = " << nd.pairs_nondegenerate << "/" << nd.pairs_sampled
       << "\n";
    os << "fraction = " << g17(nd.fraction) << "\n";
    os << "configurations = " << nd.configurations << "\n";
    os << "degenerate_transfers = " << nd.degenerate_transfers << "\n";
    os << "angles_measured = " << nd.angles_measured << "\n";
    os << "angles_failed = " << nd.angles_failed << "\n";
    os << "angles_skipped = " << nd.angles_skipped << "\n";
    os << "worst_angle_gap = " << g17(nd.worst_angle_gap) << "\n";
    os << "tolerance = " << g17(nd.tolerance) << "\n";
    os << "pass = " << b(nd.pass) << "\n";
}

} // namespace

void write(std::ostream& os, const verifier::VerificationReport& r,
           bool include_runtime) {
    os << kFormatLine << "\n";
    write_campaign(os, r.campaign);
    write_space(os, r.space);
    if (r.axioms_ran) write_axioms(os, r.axioms);
    os << "[sample]\n";
    os << "K = " << g17(r.sample_K) << "\n";
    os << "triangles = " << r.sample_triangles << "\n";
    for (const auto& o : r.outcomes) write_outcome(os, o);
    write_diameter(os, r.diameter);
    write_perimeter(os, r.perimeter);
    for (const auto& lg : r.local_global) write_local_global(os, lg);
    write_nondegeneracy(os, r.nondegeneracy);
    os << "[summary]\n";
    os << "all_pass = " << b(r.all_pass) << "\n";
    os << "violations = " << r.violations << "\n";
    for (const auto& n : r.notes) os << "note = " << n << "\n";
    if (include_runtime) {
        os << "[runtime]\n";
        os << "wall_seconds = " << g17(r.wall_seconds) << "\n";
        os << "version = lorcomp " << kVersion << "\n";
    }
}

std::string to_text(const verifier::VerificationReport& r,
                    bool include_runtime) {
    std::ostringstream os;
    write(os, r, include_runtime);
    return os.str();
}

void write_file(const std::string& path, const verifier::VerificationReport& r,
                bool include_runtime) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open report file: " + path);
    write(f, r, include_runtime);
}

namespace {

void csv_witnesses(std::ostream& os, const std::string& section,
                   const cmp::ComparisonVerdict& v) {
    for (const auto& w : v.witnesses) {
        os << section << "," << cmp::to_string(v.formulation) << ","
           << cmp::to_string(v.direction) << "," << g17(v.K) << "," << v.x
           << "," << v.y << "," << v.z << "," << cmp::to_string(w.p.side)
           << "," << g17(w.p.fraction) << ","
           << (w.p.vertex == cmp::kNoVertex ? std::string("-")
                                            : std::to_string(w.p.vertex))
           << "," << cmp::to_string(w.q.side) << "," << g17(w.q.fraction)
           << ","
           << (w.q.vertex == cmp::kNoVertex ? std::string("-")
                                            : std::to_string(w.q.vertex))
           << "," << g17(w.lhs) << "," << g17(w.rhs) << "," << g17(w.margin)
           << "\n";
    }
}

} // namespace

void write_margins_csv(std::ostream& os,
                       const verifier::VerificationReport& r) {
    os << "section,formulation,direction,K,x,y,z,p_side,p_fraction,p_vertex,"
          "q_side,q_fraction,q_vertex,lhs,rhs,margin\n";
    for (const auto& o : r.outcomes)
        if (o.has_worst) csv_witnesses(os, "check", o.worst);
    for (const auto& lg : r.local_global) {
        if (lg.has_global_worst)
            csv_witnesses(os, "local-global-global", lg.global_worst);
        for (const auto& d : lg.diamonds)
            if (d.has_worst)
                csv_witnesses(os, "local-global-diamond", d.worst);
    }
}

void write_margins_csv_file(const std::string& path,
                            const verifier::VerificationReport& r) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open csv file: " + path);
    write_margins_csv(f, r);
}

std::string strip_runtime(const std::string& text) {
    const std::string marker = "[runtime]";
    std::size_t pos = text.find("\n" + marker + "\n");
    if (pos == std::string::npos) {
        if (text.rfind(marker + "\n", 0) == 0) pos = 0;
        else return text;
    } else {
        ++pos; // keep the newline that closed the previous line
    }
    return text.substr(0, pos);
}

} // namespace lorcomp::report
