#pragma once

#include <vector>

#include "cheb2relu/mesh.hpp"
#include "cheb2relu/nn.hpp"
#include "cheb2relu/sobolev.hpp"

namespace cheb2relu {

/// Depth-2 network emulating the continuous piecewise linear nodal
/// interpolant exactly. M <= 3N+1, M_fi <= 2N, M_la <= N+1; first-layer
/// weights are the slope/slope-difference formulas.
NeuralNetwork cpwl_interpolant_net(const std::vector<double>& nodes,
                                   const std::vector<double>& node_values);
NeuralNetwork cpwl_interpolant_net(const PiecewiseCheb& v);

/// Output-layer coefficients of the per-element clamped emulators: per
/// element, subtract the linear nodal interpolant from the CC samples and
/// run the inverse FFT. Both alternating-sum identities of the resulting
/// coefficients are validated to 1e-10 (relative).
std::vector<std::vector<double>>
output_weights_via_ifft(const std::vector<std::vector<double>>& element_cc_values,
                        const Mesh& mesh);

/// Where a Chebyshev coefficient of an element sits in the assembled
/// network's output layer (as a +/- spliced pair of columns). The layout
/// depends only on (mesh size, degrees), not on values or eps.
struct CoeffSlot {
    int element = 0; ///< 0-based element index
    int ell = 0;     ///< Chebyshev degree of the coefficient, >= 1
    int col_plus = 0;
    int col_minus = 0;

    bool operator==(const CoeffSlot&) const = default;
};

struct SplineEmulation {
    NeuralNetwork net;
    std::vector<CoeffSlot> layout;
    std::vector<std::vector<double>> coeffs; ///< per-element hat{w} vectors
};

/// ReLU network emulating v in S_p(I,T): exact at the mesh nodes,
/// |v - R|_{W^{1,r}(I)} <= (eps/2) |v|_{W^{1,r}(I)}, assembled as the
/// piecewise linear interpolant plus per-element clamped emulators of
/// v - vbar at eps/4, combined by parallelization and a summing output row.
SplineEmulation build_spline_emulation(const PiecewiseCheb& v, double eps);
NeuralNetwork build_spline_emulator(const PiecewiseCheb& v, double eps);

/// Recomputes the output-layer coefficient layout for a (mesh, degrees)
/// pair without building the value-dependent parts.
std::vector<CoeffSlot> spline_output_layout(const Mesh& mesh);

/// Interpolation-space certificate for the W^{s,r} error, s in (0,1):
/// reports err_{L^r}^{1-s} * err_{W^{1,r}}^s from measured errors. Does not
/// evaluate the fractional double-integral norm.
ErrorReport fractional_bound_report(const PiecewiseCheb& v, const NeuralNetwork& net, double s,
                                    double r);

} // namespace cheb2relu
