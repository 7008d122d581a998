#include "lorcomp/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "lorcomp/cset.hpp"
#include "lorcomp/strfmt.hpp"

namespace lorcomp::config {

namespace cmp = lorcomp::comparison;
using detail::g17;

ExperimentConfig::ExperimentConfig() {
    sprinkle.ambient = gen::Ambient::minkowski;
    sprinkle.region = gen::Region::diamond({0.0, 0.0}, {2.0, 0.0});
    sprinkle.count = 200;
    sprinkle.seed = 1;
    campaign.k_grid = {0.0};
}

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double to_double(std::size_t line, const std::string& v) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        bad(line, "expected a number, got '" + v + "'");
    return d;
}

std::uint64_t to_u64(std::size_t line, const std::string& v) {
    char* end = nullptr;
    const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        bad(line, "expected an unsigned integer, got '" + v + "'");
    return u;
}

std::size_t to_size(std::size_t line, const std::string& v) {
    return static_cast<std::size_t>(to_u64(line, v));
}

bool to_bool(std::size_t line, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    bad(line, "expected true or false, got '" + v + "'");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) out.push_back(trim(cur));
    return out;
}

} // namespace

gen::Ambient parse_ambient(const std::string& s) {
    if (s == "minkowski") return gen::Ambient::minkowski;
    if (s == "ads") return gen::Ambient::ads;
    if (s == "desitter") return gen::Ambient::desitter;
    if (s == "cylinder") return gen::Ambient::cylinder;
    throw ConfigError("unknown ambient '" + s + "'");
}

const char* ambient_token(gen::Ambient a) {
    switch (a) {
    case gen::Ambient::minkowski: return "minkowski";
    case gen::Ambient::ads: return "ads";
    case gen::Ambient::desitter: return "desitter";
    case gen::Ambient::cylinder: return "cylinder";
    }
    return "minkowski";
}

gen::TauMode parse_tau_mode(const std::string& s) {
    if (s == "inherited") return gen::TauMode::inherited;
    if (s == "intrinsic-weighted") return gen::TauMode::intrinsic_weighted;
    if (s == "intrinsic-link") return gen::TauMode::intrinsic_link;
    throw ConfigError("unknown tau mode '" + s + "'");
}

const char* tau_mode_token(gen::TauMode m) {
    switch (m) {
    case gen::TauMode::inherited: return "inherited";
    case gen::TauMode::intrinsic_weighted: return "intrinsic-weighted";
    case gen::TauMode::intrinsic_link: return "intrinsic-link";
    }
    return "inherited";
}

std::vector<double> parse_k_grid(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split_commas(s)) {
        if (tok.empty()) throw ConfigError("empty entry in k grid '" + s + "'");
        char* end = nullptr;
        const double d = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ConfigError("bad curvature value '" + tok + "'");
        out.push_back(d);
    }
    if (out.empty()) throw ConfigError("empty k grid");
    return out;
}

std::vector<cmp::Direction> parse_directions(const std::string& s) {
    std::vector<cmp::Direction> out;
    for (const auto& tok : split_commas(s)) {
        if (tok == "below") out.push_back(cmp::Direction::below);
        else if (tok == "above") out.push_back(cmp::Direction::above);
        else if (tok == "both") {
            out.push_back(cmp::Direction::below);
            out.push_back(cmp::Direction::above);
        } else throw ConfigError("unknown direction '" + tok + "'");
    }
    if (out.empty()) throw ConfigError("empty direction list");
    return out;
}

std::vector<cmp::Formulation> parse_formulations(const std::string& s) {
    std::vector<cmp::Formulation> out;
    for (const auto& tok : split_commas(s)) {
        if (tok == "triangle") out.push_back(cmp::Formulation::triangle);
        else if (tok == "monotonicity")
            out.push_back(cmp::Formulation::monotonicity);
        else if (tok == "angle") out.push_back(cmp::Formulation::angle);
        else if (tok == "hinge") out.push_back(cmp::Formulation::hinge);
        else if (tok == "all") {
            out.push_back(cmp::Formulation::triangle);
            out.push_back(cmp::Formulation::monotonicity);
            out.push_back(cmp::Formulation::angle);
            out.push_back(cmp::Formulation::hinge);
        } else throw ConfigError("unknown formulation '" + tok + "'");
    }
    if (out.empty()) throw ConfigError("empty formulation list");
    return out;
}

ExperimentConfig parse(std::istream& is) {
    ExperimentConfig c;
    enum class Sec { none, space, campaign, diamonds, output } sec = Sec::none;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') bad(line, "unterminated section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (name == "space") sec = Sec::space;
            else if (name == "campaign") sec = Sec::campaign;
            else if (name == "diamonds") sec = Sec::diamonds;
            else if (name == "output") sec = Sec::output;
            else bad(line, "unknown section [" + name + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) bad(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) bad(line, "empty key");
        try {
            switch (sec) {
            case Sec::none:
                bad(line, "key '" + key + "' outside any section");
            case Sec::space:
                if (key == "source") {
                    if (val == "sprinkle") c.source =
                        ExperimentConfig::Source::sprinkle;
                    else if (val == "fixture") c.source =
                        ExperimentConfig::Source::fixture;
                    else if (val == "file") c.source =
                        ExperimentConfig::Source::file;
                    else bad(line, "unknown source '" + val + "'");
                } else if (key == "ambient")
                    c.sprinkle.ambient = parse_ambient(val);
                else if (key == "param")
                    c.sprinkle.param = to_double(line, val);
                else if (key == "region") {
                    if (val == "rect")
                        c.sprinkle.region.kind = gen::Region::Kind::rect;
                    else if (val == "diamond")
                        c.sprinkle.region.kind = gen::Region::Kind::diamond;
                    else bad(line, "unknown region kind '" + val + "'");
                } else if (key == "t0") c.sprinkle.region.t0 =
                    to_double(line, val);
                else if (key == "t1") c.sprinkle.region.t1 =
                    to_double(line, val);
                else if (key == "x0") c.sprinkle.region.x0 =
                    to_double(line, val);
                else if (key == "x1") c.sprinkle.region.x1 =
                    to_double(line, val);
                else if (key == "lo_t") c.sprinkle.region.lo.t =
                    to_double(line, val);
                else if (key == "lo_x") c.sprinkle.region.lo.x =
                    to_double(line, val);
                else if (key == "hi_t") c.sprinkle.region.hi.t =
                    to_double(line, val);
                else if (key == "hi_x") c.sprinkle.region.hi.x =
                    to_double(line, val);
                else if (key == "count") {
                    c.sprinkle.count = to_size(line, val);
                    c.sprinkle.use_density = false;
                } else if (key == "density") {
                    c.sprinkle.density = to_double(line, val);
                    c.sprinkle.use_density = true;
                } else if (key == "tau")
                    c.sprinkle.tau_mode = parse_tau_mode(val);
                else if (key == "seed") c.sprinkle.seed = to_u64(line, val);
                else if (key == "fixture") c.fixture = val;
                else if (key == "path") c.path = val;
                else bad(line, "unknown key '" + key + "' in [space]");
                break;
            case Sec::campaign:
                if (key == "label") c.campaign.label = val;
                else if (key == "k_grid") c.campaign.k_grid =
                    parse_k_grid(val);
                else if (key == "directions") c.campaign.directions =
                    parse_directions(val);
                else if (key == "formulations") c.campaign.formulations =
                    parse_formulations(val);
                else if (key == "triangle_budget")
                    c.campaign.triangle_budget = to_size(line, val);
                else if (key == "pair_budget")
                    c.campaign.pair_budget = to_size(line, val);
                else if (key == "min_side")
                    c.campaign.min_side = to_double(line, val);
                else if (key == "seed") c.campaign.seed = to_u64(line, val);
                else if (key == "tau_tol")
                    c.campaign.tau_tol = to_double(line, val);
                else if (key == "angle_tol")
                    c.campaign.angle_tol = to_double(line, val);
                else if (key == "locality") {
                    if (val == "global")
                        c.campaign.locality = verifier::Locality::global;
                    else if (val == "diamonds")
                        c.campaign.locality = verifier::Locality::diamonds;
                    else bad(line, "unknown locality '" + val + "'");
                } else if (key == "jobs") c.campaign.jobs = to_size(line, val);
                else if (key == "check_axioms")
                    c.campaign.check_axioms = to_bool(line, val);
                else if (key == "check_diameter")
                    c.campaign.check_diameter = to_bool(line, val);
                else if (key == "check_perimeter")
                    c.campaign.check_perimeter = to_bool(line, val);
                else if (key == "check_nondegeneracy")
                    c.campaign.check_nondegeneracy = to_bool(line, val);
                else bad(line, "unknown key '" + key + "' in [campaign]");
                break;
            case Sec::diamonds:
                if (key == "count") c.campaign.diamonds.count =
                    to_size(line, val);
                else if (key == "min_interior")
                    c.campaign.diamonds.min_interior = to_size(line, val);
                else if (key == "triangle_budget")
                    c.campaign.diamonds.triangle_budget = to_size(line, val);
                else if (key == "pair_budget")
                    c.campaign.diamonds.pair_budget = to_size(line, val);
                else if (key == "max_height")
                    c.campaign.diamonds.max_height = to_double(line, val);
                else bad(line, "unknown key '" + key + "' in [diamonds]");
                break;
            case Sec::output:
                if (key == "report") c.report_path = val;
                else if (key == "margins_csv") c.margins_csv = val;
                else if (key == "include_runtime")
                    c.include_runtime = to_bool(line, val);
                else bad(line, "unknown key '" + key + "' in [output]");
                break;
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            bad(line, e.what());
        }
    }

    switch (c.source) {
    case ExperimentConfig::Source::sprinkle:
        if (!c.sprinkle.use_density && c.sprinkle.count == 0)
            throw ConfigError("sprinkle source needs count or density");
        break;
    case ExperimentConfig::Source::fixture:
        if (c.fixture.empty())
            throw ConfigError("fixture source needs a fixture name");
        break;
    case ExperimentConfig::Source::file:
        if (c.path.empty()) throw ConfigError("file source needs a path");
        break;
    }
    return c;
}

ExperimentConfig parse_string(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
}

ExperimentConfig parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    return parse(f);
}

std::string materialize(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "[space]\n";
    switch (c.source) {
    case ExperimentConfig::Source::sprinkle: {
        os << "source = sprinkle\n";
        os << "ambient = " << ambient_token(c.sprinkle.ambient) << "\n";
        os << "param = " << g17(c.sprinkle.param) << "\n";
        const auto& r = c.sprinkle.region;
        if (r.kind == gen::Region::Kind::rect) {
            os << "region = rect\n";
            os << "t0 = " << g17(r.t0) << "\n";
            os << "t1 = " << g17(r.t1) << "\n";
            os << "x0 = " << g17(r.x0) << "\n";
            os << "x1 = " << g17(r.x1) << "\n";
        } else {
            os << "region = diamond\n";
            os << "lo_t = " << g17(r.lo.t) << "\n";
            os << "lo_x = " << g17(r.lo.x) << "\n";
            os << "hi_t = " << g17(r.hi.t) << "\n";
            os << "hi_x = " << g17(r.hi.x) << "\n";
        }
        if (c.sprinkle.use_density)
            os << "density = " << g17(c.sprinkle.density) << "\n";
        else os << "count = " << c.sprinkle.count << "\n";
        os << "tau = " << tau_mode_token(c.sprinkle.tau_mode) << "\n";
        os << "seed = " << c.sprinkle.seed << "\n";
        break;
    }
    case ExperimentConfig::Source::fixture:
        os << "source = fixture\n";
        os << "fixture = " << c.fixture << "\n";
        break;
    case ExperimentConfig::Source::file:
        os << "source = file\n";
        os << "path = " << c.path << "\n";
        break;
    }

    const auto& g = c.campaign;
    os << "[campaign]\n";
    os << "label = " << g.label << "\n";
    os << "k_grid = ";
    for (std::size_t i = 0; i < g.k_grid.size(); ++i)
        os << (i ? "," : "") << g17(g.k_grid[i]);
    os << "\n";
    os << "directions = ";
    for (std::size_t i = 0; i < g.directions.size(); ++i)
        os << (i ? "," : "") << cmp::to_string(g.directions[i]);
    os << "\n";
    os << "formulations = ";
    for (std::size_t i = 0; i < g.formulations.size(); ++i)
        os << (i ? "," : "") << cmp::to_string(g.formulations[i]);
    os << "\n";
    os << "triangle_budget = " << g.triangle_budget << "\n";
    os << "pair_budget = " << g.pair_budget << "\n";
    os << "min_side = " << g17(g.min_side) << "\n";
    os << "seed = " << g.seed << "\n";
    os << "tau_tol = " << g17(g.tau_tol) << "\n";
    os << "angle_tol = " << g17(g.angle_tol) << "\n";
    os << "locality = "
       << (g.locality == verifier::Locality::global ? "global" : "diamonds")
       << "\n";
    os << "jobs = " << g.jobs << "\n";
    os << "check_axioms = " << (g.check_axioms ? "true" : "false") << "\n";
    os << "check_diameter = " << (g.check_diameter ? "true" : "false") << "\n";
    os << "check_perimeter = " << (g.check_perimeter ? "true" : "false")
       << "\n";
    os << "check_nondegeneracy = "
       << (g.check_nondegeneracy ? "true" : "false") << "\n";

    os << "[diamonds]\n";
    os << "count = " << g.diamonds.count << "\n";
    os << "min_interior = " << g.diamonds.min_interior << "\n";
    os << "triangle_budget = " << g.diamonds.triangle_budget << "\n";
    os << "pair_budget = " << g.diamonds.pair_budget << "\n";
    os << "max_height = " << g17(g.diamonds.max_height) << "\n";

    os << "[output]\n";
    if (!c.report_path.empty()) os << "report = " << c.report_path << "\n";
    if (!c.margins_csv.empty())
        os << "margins_csv = " << c.margins_csv << "\n";
    os << "include_runtime = " << (c.include_runtime ? "true" : "false")
       << "\n";
    return os.str();
}

space::DiscreteSpace realize_space(const ExperimentConfig& c) {
    switch (c.source) {
    case ExperimentConfig::Source::sprinkle: return gen::sprinkle(c.sprinkle);
    case ExperimentConfig::Source::fixture: return gen::fixture(c.fixture);
    case ExperimentConfig::Source::file: return cset::load_file(c.path);
    }
    throw ConfigError("unreachable source");
}

} // namespace lorcomp::config
