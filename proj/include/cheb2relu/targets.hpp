#pragma once

#include <string>

#include "cheb2relu/sobolev.hpp"

namespace cheb2relu {

/// Built-in expressions: T<k>, sin2pix, runge (1/(1+25x^2)), xpow<alpha>
/// (x^alpha - declares the singularity at 0), absx.
Target make_builtin_target(const std::string& name);

bool is_builtin_target(const std::string& name);

} // namespace cheb2relu
