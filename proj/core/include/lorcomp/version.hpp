#ifndef LORCOMP_VERSION_HPP
#define LORCOMP_VERSION_HPP

namespace lorcomp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lorcomp

#endif
