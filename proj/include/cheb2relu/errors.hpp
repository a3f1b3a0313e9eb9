#pragma once

#include <stdexcept>
#include <string>

namespace cheb2relu {

/// Shape/dimension mismatches between composed objects.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter values outside the admissible range (tolerances, degrees, ...).
struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input data: non-finite samples, discontinuous splines, malformed files.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cheb2relu
