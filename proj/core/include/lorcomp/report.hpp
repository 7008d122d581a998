#ifndef LORCOMP_REPORT_HPP
#define LORCOMP_REPORT_HPP

#include <iosfwd>
#include <string>

#include "lorcomp/verifier.hpp"

// Text serialization of verification reports: lorcomp-report v1. Versioned,
// line oriented, sections in a fixed order with fixed key order, doubles in
// shortest round-trip form, so two runs with the same seed produce byte
// identical output up to the trailing [runtime] section.
namespace lorcomp::report {

inline constexpr const char* kFormatLine = "lorcomp-report v1";

const char* ambient_name(space::AmbientKind k);
const char* provenance_name(space::Provenance p);

void write(std::ostream& os, const verifier::VerificationReport& r,
           bool include_runtime = true);
std::string to_text(const verifier::VerificationReport& r,
                    bool include_runtime = true);
void write_file(const std::string& path,
                const verifier::VerificationReport& r,
                bool include_runtime = true);

// Margin rows for the retained witnesses of every verdict in the report,
// one polyline-friendly CSV row each.
void write_margins_csv(std::ostream& os, const verifier::VerificationReport& r);
void write_margins_csv_file(const std::string& path,
                            const verifier::VerificationReport& r);

// Report text with the [runtime] section removed; the byte-comparison form.
std::string strip_runtime(const std::string& text);

} // namespace lorcomp::report

#endif
