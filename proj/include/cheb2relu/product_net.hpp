#pragma once

#include "cheb2relu/nn.hpp"

namespace cheb2relu {

/// Parameters of the approximate multiplication network.
struct ProductSpec {
    double delta = 1e-3; ///< accuracy, in (0, 1/2)
    double kappa = 1.0;  ///< input box half-width, > 0
};

/// Constants of the size/depth bounds of the implemented product network:
///   L <= C_L log2(max{kappa,1}/delta) + C_L_add
///   M <= C_M log2(max{kappa,1}/delta) + C_M_add
///   M_fi <= C_fi, M_la <= C_la.
struct ProductConstants {
    double C_L;
    double C_L_add;
    double C_M;
    double C_M_add;
    double C_fi;
    double C_la;
};

ProductConstants product_constants();

/// Number of sawtooth composition levels used for a given spec.
int product_refinement_level(const ProductSpec& spec);

/// Network with R(a,b) ~ ab on [-kappa,kappa]^2: value and both partial
/// derivatives within delta, R(a,0) = R(0,a) = 0 and R(+-1,b) = +-b exactly.
/// Realized as phi(a+b) - phi(a-b) with phi the piecewise linear interpolant
/// of y^2/4 on a dyadic grid whose spacing divides 2, so the periodic
/// interpolation error cancels in the exactness identities.
NeuralNetwork build_product(const ProductSpec& spec);

} // namespace cheb2relu
