#pragma once

#include <vector>

#include "cheb2relu/nn.hpp"

namespace cheb2relu {

/// Parallelization P: same input for both nets, outputs concatenated.
/// Requires equal input dimensions and equal depths. Sizes are additive.
NeuralNetwork parallel(const NeuralNetwork& phi1, const NeuralNetwork& phi2);
/// Left fold of the binary parallelization.
NeuralNetwork parallel(const std::vector<NeuralNetwork>& nets);

/// Full parallelization FP: independent inputs, input dim d1+d2.
/// Requires equal depths. Sizes are additive.
NeuralNetwork full_parallel(const NeuralNetwork& phi1, const NeuralNetwork& phi2);
NeuralNetwork full_parallel(const std::vector<NeuralNetwork>& nets);

/// Plain concatenation: R = R(phi1) o R(phi2), depth L1+L2-1. The junction
/// layer is the matrix product U^1 V^{L2} with bias U^1 b^{L2} + a^1.
NeuralNetwork concat(const NeuralNetwork& phi1, const NeuralNetwork& phi2);

/// Sparse concatenation: R = R(phi1) o R(phi2), depth L1+L2, with a
/// rho(t)-rho(-t) identity splice between the nets, so
/// M <= M(phi1) + M_fi(phi1) + M_la(phi2) + M(phi2).
NeuralNetwork sparse_concat(const NeuralNetwork& phi1, const NeuralNetwork& phi2);

/// Identity on R^d realized with L layers; M <= 2dL, M_fi <= 2d, M_la <= 2d.
NeuralNetwork identity_net(int d, int L);

} // namespace cheb2relu
