#pragma once

#include <stdexcept>
#include <string>

namespace ymstrata {

/// Bad caller input: out-of-range parameters, malformed files, wrong shapes.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An internal identity failed (non-integral codimension, negative series
/// coefficient, ...). Seeing one of these means a bug, not bad input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// The requested (type, bundle sign) stratum does not exist.
struct EmptyStratumError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Valid request outside what the constructions here can handle.
struct Unsupported : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace ymstrata
