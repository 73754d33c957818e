// Error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace mindoc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid physical or numerical input (bad sign, out-of-range parameter, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Problems loading or validating a scenario configuration file. The message
/// names the offending field with its full dotted path.
struct ConfigError : Error {
    using Error::Error;
};

/// The optimality polynomial admits no positive real airspeed.
struct RootError : Error {
    using Error::Error;
};

/// Fuel weight or battery charge exhausted before the target range.
struct ResourceError : Error {
    using Error::Error;
};

/// The costate boundary-value search failed to bracket or converge.
struct ShootError : Error {
    using Error::Error;
};

} // namespace mindoc
