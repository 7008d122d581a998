#ifndef LORCOMP_CONFIG_HPP
#define LORCOMP_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "lorcomp/gen.hpp"
#include "lorcomp/verifier.hpp"

// Experiment configuration: a line-oriented text format with [section]
// headers and key = value lines. Unknown sections or keys are rejected with
// the offending line number; materialize() writes every effective value back
// out, defaults included, so a report can carry its full provenance.
namespace lorcomp::config {

struct ExperimentConfig {
    enum class Source { sprinkle, fixture, file };
    Source source = Source::sprinkle;
    gen::SprinkleSpec sprinkle;
    std::string fixture; // fixture name when source == fixture
    std::string path;    // cset path when source == file
    verifier::Campaign campaign;
    std::string report_path; // empty: stdout
    std::string margins_csv; // empty: not written
    bool include_runtime = true;

    ExperimentConfig();
};

// Throws ConfigError on unknown sections or keys, malformed values, and
// inconsistent source requirements.
ExperimentConfig parse(std::istream& is);
ExperimentConfig parse_string(const std::string& text);
ExperimentConfig parse_file(const std::string& path);

// Canonical full text; parse(materialize(c)) reproduces c.
std::string materialize(const ExperimentConfig& c);

// Construct the space the configuration describes.
space::DiscreteSpace realize_space(const ExperimentConfig& c);

// Token maps shared with the command line. Parsers throw ConfigError.
gen::Ambient parse_ambient(const std::string& s);
const char* ambient_token(gen::Ambient a);
gen::TauMode parse_tau_mode(const std::string& s);
const char* tau_mode_token(gen::TauMode m);
std::vector<double> parse_k_grid(const std::string& s);
std::vector<comparison::Direction> parse_directions(const std::string& s);
std::vector<comparison::Formulation> parse_formulations(const std::string& s);

} // namespace lorcomp::config

#endif
