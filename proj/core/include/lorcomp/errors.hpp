#ifndef LORCOMP_ERRORS_HPP
#define LORCOMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lorcomp {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A chart coordinate lies outside the domain of the active chart.
class ChartDomainError : public Error {
public:
    using Error::Error;
};

// An operation required two timelike related points and got none.
class NotTimelikeRelated : public Error {
public:
    using Error::Error;
};

// A length reached or exceeded the model-space diameter D_K.
class ExceedsModelDiameter : public Error {
public:
    using Error::Error;
};

// Side lengths violate the reverse triangle inequality or the size bound,
// so no comparison triangle exists.
class UnrealizableTriangle : public Error {
public:
    using Error::Error;
};

// The causal relation contains a cycle.
class CyclicOrder : public Error {
public:
    using Error::Error;
};

// A sprinkling region has no volume.
class RegionEmpty : public Error {
public:
    using Error::Error;
};

// A sprinkle would exceed the configured point-count cap.
class DensityOverflow : public Error {
public:
    using Error::Error;
};

// fixture() was asked for a name it does not know.
class UnknownFixture : public Error {
public:
    using Error::Error;
};

// A comparison pair does not lie on the sides of the triangle under test.
class PairOffTriangle : public Error {
public:
    using Error::Error;
};

// Too few admissible samples to run a check.
class InsufficientSamples : public Error {
public:
    using Error::Error;
};

// No admissible parameter pairs exist, so the angle at a hinge is undefined.
class AngleUndefined : public Error {
public:
    using Error::Error;
};

// An angle-limit extrapolation oscillated beyond tolerance.
class NonConvergent : public Error {
public:
    using Error::Error;
};

// cmd_reproduce was asked for a scenario it does not know.
class UnknownScenario : public Error {
public:
    using Error::Error;
};

// Malformed cset/report file.
class FormatError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace lorcomp

#endif
