#include "lorcomp/cset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lorcomp/gen.hpp"
#include "lorcomp/model.hpp"
#include "lorcomp/strfmt.hpp"

namespace lorcomp::cset {

using space::AmbientKind;
using space::DiscreteSpace;
using space::Provenance;

namespace {

const char* kind_word(AmbientKind k) {
    switch (k) {
    case AmbientKind::minkowski: return "minkowski";
    case AmbientKind::ads: return "ads";
    case AmbientKind::desitter: return "desitter";
    case AmbientKind::cylinder: return "cylinder";
    default: return "none";
    }
}

const char* prov_word(Provenance p) {
    switch (p) {
    case Provenance::inherited: return "inherited";
    case Provenance::intrinsic: return "intrinsic";
    default: return "explicit";
    }
}

struct Tok {
    std::string s;
    int line;
};

struct Reader {
    std::vector<Tok> toks;
    std::size_t pos = 0;

    bool done() const { return pos >= toks.size(); }
    const Tok& peek() const { return toks[pos]; }
    Tok next(const char* what) {
        if (done())
            throw FormatError(std::string("unexpected end of file, expected ") +
                              what);
        return toks[pos++];
    }
    [[noreturn]] void fail(const Tok& t, const std::string& msg) const {
        throw FormatError("line " + std::to_string(t.line) + ": " + msg);
    }
    double number(const char* what) {
        Tok t = next(what);
        char* end = nullptr;
        double v = std::strtod(t.s.c_str(), &end);
        if (end != t.s.c_str() + t.s.size())
            fail(t, "expected " + std::string(what) + ", got '" + t.s + "'");
        return v;
    }
    std::uint64_t count(const char* what) {
        Tok t = next(what);
        char* end = nullptr;
        std::uint64_t v = std::strtoull(t.s.c_str(), &end, 10);
        if (end != t.s.c_str() + t.s.size() || t.s[0] == '-')
            fail(t, "expected " + std::string(what) + ", got '" + t.s + "'");
        return v;
    }
};

Reader tokenize(std::istream& is) {
    Reader r;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string tok;
        if (!header_seen) {
            std::string a, b, rest;
            ls >> a >> b;
            if (a.empty()) continue; // blank or comment line before header
            if (a != "lorcomp-cset" || b != "v1" || (ls >> rest))
                throw FormatError("line " + std::to_string(lineno) +
                                  ": expected header 'lorcomp-cset v1'");
            header_seen = true;
            continue;
        }
        while (ls >> tok) r.toks.push_back({std::move(tok), lineno});
    }
    if (!header_seen) throw FormatError("missing 'lorcomp-cset v1' header");
    return r;
}

} // namespace

void save(const DiscreteSpace& sp, std::ostream& os) {
    os << "lorcomp-cset v1\n";
    const auto& tag = sp.ambient();
    if (tag.kind != AmbientKind::none) {
        os << "ambient " << kind_word(tag.kind);
        if (tag.kind != AmbientKind::minkowski)
            os << ' ' << detail::g17(tag.param);
        os << '\n';
    }
    os << "provenance " << prov_word(sp.provenance()) << '\n';

    os << "points " << sp.size() << '\n';
    for (std::uint32_t i = 0; i < sp.size(); ++i) {
        const auto& p = sp.point(i);
        if (p.has_coords)
            os << i << ' ' << detail::g17(p.t) << ' ' << detail::g17(p.x)
               << '\n';
        else
            os << i << " -\n";
    }

    auto links = sp.all_links();
    os << "links " << links.size() << '\n';
    for (auto [a, b] : links) os << a << ' ' << b << '\n';

    std::uint64_t taus = sp.chron_pair_count();
    if (taus > 0) {
        os << "tau " << taus << '\n';
        sp.tau_matrix().for_each_positive(
            [&](std::uint32_t i, std::uint32_t j, double v) {
                os << i << ' ' << j << ' ' << detail::g17(v) << '\n';
            });
    }
}

void save_file(const DiscreteSpace& sp, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open for writing: " + path);
    save(sp, os);
    if (!os) throw FormatError("write failed: " + path);
}

DiscreteSpace load(std::istream& is) {
    Reader r = tokenize(is);

    space::AmbientTag tag;
    Provenance prov = Provenance::explicit_;
    bool prov_given = false;
    std::vector<space::PointRec> points;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> links;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> taus;
    bool points_seen = false, links_seen = false, tau_seen = false;

    while (!r.done()) {
        Tok kw = r.next("section keyword");
        if (kw.s == "ambient") {
            Tok k = r.next("ambient kind");
            if (k.s == "minkowski") tag.kind = AmbientKind::minkowski;
            else if (k.s == "ads") tag.kind = AmbientKind::ads;
            else if (k.s == "desitter") tag.kind = AmbientKind::desitter;
            else if (k.s == "cylinder") tag.kind = AmbientKind::cylinder;
            else if (k.s == "none") tag.kind = AmbientKind::none;
            else r.fail(k, "unknown ambient '" + k.s + "'");
            if (tag.kind != AmbientKind::none &&
                tag.kind != AmbientKind::minkowski)
                tag.param = r.number("ambient parameter");
            if (tag.kind == AmbientKind::ads && !(tag.param < 0))
                r.fail(k, "ads parameter must be negative");
            if (tag.kind == AmbientKind::desitter && !(tag.param > 0))
                r.fail(k, "desitter parameter must be positive");
            if (tag.kind == AmbientKind::cylinder && !(tag.param > 0))
                r.fail(k, "cylinder circumference must be positive");
        } else if (kw.s == "provenance") {
            Tok p = r.next("provenance");
            if (p.s == "inherited") prov = Provenance::inherited;
            else if (p.s == "intrinsic") prov = Provenance::intrinsic;
            else if (p.s == "explicit") prov = Provenance::explicit_;
            else r.fail(p, "unknown provenance '" + p.s + "'");
            prov_given = true;
        } else if (kw.s == "points") {
            if (points_seen) r.fail(kw, "duplicate points section");
            points_seen = true;
            std::uint64_t n = r.count("point count");
            points.resize(n);
            for (std::uint64_t i = 0; i < n; ++i) {
                Tok it = r.next("point index");
                if (it.s != std::to_string(i))
                    r.fail(it, "point index out of sequence, expected " +
                                   std::to_string(i));
                Tok t = r.next("point coordinate or '-'");
                if (t.s == "-") {
                    points[i] = {};
                } else {
                    char* end = nullptr;
                    double tv = std::strtod(t.s.c_str(), &end);
                    if (end != t.s.c_str() + t.s.size())
                        r.fail(t, "expected time coordinate, got '" + t.s +
                                      "'");
                    double xv = r.number("x coordinate");
                    points[i] = {true, tv, xv};
                }
            }
        } else if (kw.s == "links") {
            if (!points_seen) r.fail(kw, "links before points");
            if (links_seen) r.fail(kw, "duplicate links section");
            links_seen = true;
            std::uint64_t m = r.count("link count");
            links.reserve(m);
            for (std::uint64_t k = 0; k < m; ++k) {
                auto a = r.count("link source");
                auto b = r.count("link target");
                if (a >= points.size() || b >= points.size())
                    r.fail(kw, "link index out of range");
                links.emplace_back(static_cast<std::uint32_t>(a),
                                   static_cast<std::uint32_t>(b));
            }
        } else if (kw.s == "tau") {
            if (!points_seen) r.fail(kw, "tau before points");
            if (tau_seen) r.fail(kw, "duplicate tau section");
            tau_seen = true;
            std::uint64_t m = r.count("tau count");
            taus.reserve(m);
            for (std::uint64_t k = 0; k < m; ++k) {
                auto a = r.count("tau source");
                auto b = r.count("tau target");
                double v = r.number("tau value");
                if (a >= points.size() || b >= points.size())
                    r.fail(kw, "tau index out of range");
                taus.emplace_back(static_cast<std::uint32_t>(a),
                                  static_cast<std::uint32_t>(b), v);
            }
        } else {
            r.fail(kw, "unknown section '" + kw.s + "'");
        }
    }
    if (!points_seen) throw FormatError("missing points section");

    if (tau_seen)
        return DiscreteSpace::from_links(std::move(points), tag,
                                         std::move(links), taus, prov);

    // No tau section: recompute from the ambient chart when possible,
    // otherwise fall back to link counting.
    bool coords = !points.empty();
    for (const auto& p : points)
        if (!p.has_coords) { coords = false; break; }

    if (tag.kind != AmbientKind::none && coords) {
        auto skeleton = DiscreteSpace::from_links(points, tag, links, {},
                                                  Provenance::explicit_);
        model::ModelSpace m(tag.kind == AmbientKind::minkowski ? 0.0
                            : tag.kind == AmbientKind::cylinder ? 0.0
                                                                : tag.param);
        for (std::uint32_t i = 0; i < skeleton.size(); ++i) {
            model::ModelPoint pi{skeleton.point(i).t, skeleton.point(i).x};
            for (std::uint32_t j : skeleton.reach().row_indices(i)) {
                model::ModelPoint pj{skeleton.point(j).t, skeleton.point(j).x};
                double v = tag.kind == AmbientKind::cylinder
                               ? gen::cylinder_tau(tag.param, pi, pj)
                               : m.tau(pi, pj);
                if (v > 0.0) taus.emplace_back(i, j, v);
            }
        }
        return DiscreteSpace::from_links(
            std::move(points), tag, std::move(links), taus,
            prov_given ? prov : Provenance::inherited);
    }

    auto skeleton = DiscreteSpace::from_links(std::move(points), tag,
                                              std::move(links), {},
                                              Provenance::explicit_);
    auto counted = skeleton.with_tau(
        space::tau_intrinsic(skeleton, space::IntrinsicMode::link_count),
        prov_given ? prov : Provenance::intrinsic);
    return counted;
}

DiscreteSpace load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open: " + path);
    return load(is);
}

nlohmann::ordered_json to_json(const DiscreteSpace& sp) {
    nlohmann::ordered_json j;
    j["format"] = "lorcomp-cset";
    j["version"] = 1;
    const auto& tag = sp.ambient();
    j["ambient"]["kind"] = kind_word(tag.kind);
    if (tag.kind != AmbientKind::none && tag.kind != AmbientKind::minkowski)
        j["ambient"]["param"] = tag.param;
    j["provenance"] = prov_word(sp.provenance());
    auto& pts = j["points"] = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < sp.size(); ++i) {
        const auto& p = sp.point(i);
        if (p.has_coords)
            pts.push_back({p.t, p.x});
        else
            pts.push_back(nullptr);
    }
    auto& lk = j["links"] = nlohmann::ordered_json::array();
    for (auto [a, b] : sp.all_links()) lk.push_back({a, b});
    auto& tv = j["tau"] = nlohmann::ordered_json::array();
    sp.tau_matrix().for_each_positive(
        [&](std::uint32_t a, std::uint32_t b, double v) {
            tv.push_back({a, b, v});
        });
    return j;
}

} // namespace lorcomp::cset
