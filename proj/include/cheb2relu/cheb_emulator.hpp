#pragma once

#include <vector>

#include "cheb2relu/cheb.hpp"
#include "cheb2relu/nn.hpp"

namespace cheb2relu {

/// Tolerance bookkeeping for the tower/emulator constructions.
struct EmulationBudget {
    double tolerance = 0.0; ///< tau or eps handed in by the caller
    int max_degree = 1;     ///< n
    int level = 1;          ///< k = ceil(log2 n)
    double delta = 0.0;     ///< per-level product tolerance at the top level

    static EmulationBudget for_poly(int n, double tau);
};

/// Cascaded product tolerance used when building level k from level k-1.
double tower_theta(int k_prev, double delta);

/// Binary-tree Chebyshev tower: input x, outputs
/// (x, ~T_{2^{k-1}}(x), ..., ~T_{2^k}(x)) with W^{1,inf} error <= delta per
/// output and exact values at x = +-1.
NeuralNetwork build_cheb_tower(int k, double delta);

/// Emulates N_v polynomials given as Chebyshev series on (-1,1) with shared
/// max degree n, to W^{1,inf} accuracy tau * max_i sum_{l>=2}|v_{i,l}|.
/// Hidden layers do not depend on the coefficients; the output layer holds
/// them. Exact at x = +-1.
NeuralNetwork build_poly_emulator(const std::vector<ChebSeries>& polys, double tau);

/// Emulates polynomials on (a,b); constant (= the endpoint values) outside.
/// Built as the (-1,1) emulator composed with the clamp
/// P(x) = min{max{2(x-(a+b)/2)/(b-a), -1}, 1} at tau = eps/(4 C0 n^6), C0 = 2.
NeuralNetwork build_interval_emulator(const std::vector<ChebSeries>& polys, double eps);

/// Explicit size/depth bounds of the tower construction, instantiated with
/// product_constants(). Used by tests and reports.
double tower_depth_bound(int k, double delta);
double tower_size_bound(int k, double delta);
double tower_size_first_bound();
double tower_size_last_bound(int k);

} // namespace cheb2relu
