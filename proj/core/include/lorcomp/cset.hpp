#ifndef LORCOMP_CSET_HPP
#define LORCOMP_CSET_HPP

#include <iosfwd>
#include <string>

#include "nlohmann/json.hpp"

#include "lorcomp/space.hpp"

// lorcomp-cset v1: line-oriented text serialization of a DiscreteSpace.
//
//   lorcomp-cset v1
//   ambient <minkowski|ads|desitter|cylinder|none> [param]
//   provenance <inherited|intrinsic|explicit>
//   points N        then N lines "index t x" or "index -"
//   links M         then M lines "i j" (transitively reduced)
//   tau M           then M lines "i j value"
//
// '#' starts a comment; the ambient/provenance/tau parts are optional.
// Without a tau section, tau is recomputed: from the ambient chart when
// coordinates and an ambient are present, otherwise as link counts.
namespace lorcomp::cset {

void save(const space::DiscreteSpace& sp, std::ostream& os);
void save_file(const space::DiscreteSpace& sp, const std::string& path);

space::DiscreteSpace load(std::istream& is);
space::DiscreteSpace load_file(const std::string& path);

// Same content for programmatic consumers.
nlohmann::ordered_json to_json(const space::DiscreteSpace& sp);

} // namespace lorcomp::cset

#endif
