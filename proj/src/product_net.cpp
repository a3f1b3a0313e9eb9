#include "cheb2relu/product_net.hpp"

#include <algorithm>
#include <cmath>

namespace cheb2relu {

namespace {

void validate(const ProductSpec& spec) {
    if (!(spec.delta > 0.0 && spec.delta < 0.5))
        throw ParameterError("product network: delta must lie in (0, 1/2)");
    if (!(spec.kappa > 0.0))
        throw ParameterError("product network: kappa must be positive");
}

/// Domain half-width 2K with K the smallest power of two >= max{kappa,1}.
double domain_scale(double kappa) {
    const double kp = std::max(kappa, 1.0);
    return std::exp2(std::ceil(std::log2(kp) - 1e-12));
}

} // namespace

ProductConstants product_constants() {
    // Derived from the construction: j <= log2(max{kappa,1}/delta) + 3 levels,
    // depth j+2, first layer 6 nnz, middle layers <= 38 nnz, output 8 nnz.
    return {1.0, 5.0, 38.0, 96.0, 8.0, 8.0};
}

int product_refinement_level(const ProductSpec& spec) {
    validate(spec);
    const double K = domain_scale(spec.kappa);
    // Grid spacing h = 4K/2^j must satisfy h/2 <= delta (then h^2/8 <= delta
    // follows from delta < 1/2) and 2/h = 2^{j-1}/K integer.
    const int j_err = static_cast<int>(std::ceil(std::log2(2.0 * K / spec.delta) - 1e-12));
    const int j_grid = static_cast<int>(std::llround(std::log2(K))) + 1;
    return std::max({j_err, j_grid, 2});
}

NeuralNetwork build_product(const ProductSpec& spec) {
    validate(spec);
    const double K = domain_scale(spec.kappa);
    const int j = product_refinement_level(spec);
    const double q = 1.0 / (4.0 * K); // input map scale; power of two

    std::vector<Layer> layers;

    // Layer 1 condenses each chain input into a single unit,
    // u0 = rho(t_u), w0 = rho(t_w) with t = (a +- b)/(4K) + 1/2 in [0,1].
    // One rounding point per chain keeps downstream kink units consistent:
    // all later weights are powers of two and near-kink subtractions are
    // exact, so no two units can disagree about the side of a breakpoint.
    {
        std::vector<Triplet> trips = {{0, 0, q}, {0, 1, q}, {1, 0, q}, {1, 1, -q}};
        layers.emplace_back(2, 2, std::move(trips), std::vector<double>{0.5, 0.5});
    }

    // Layer 2: chain units rho(t - c) for c in {0, 1/2, 1}, both chains.
    {
        std::vector<Triplet> trips;
        std::vector<double> bias(6, 0.0);
        const double shift[3] = {0.0, -0.5, -1.0};
        for (int u = 0; u < 3; ++u) {
            trips.push_back({u, 0, 1.0});
            bias[u] = shift[u];
            trips.push_back({3 + u, 1, 1.0});
            bias[3 + u] = shift[u];
        }
        layers.emplace_back(6, 2, std::move(trips), std::move(bias));
    }

    // Sawtooth value from a chain triple: g = 2 r1 - 4 r2 + 2 r3.
    const double g_row[3] = {2.0, -4.0, 2.0};

    // Layers s = 2..j: next chain triples plus the running accumulator
    // A_{s-1} = A_{s-2} + 4^{-(s-1)} (g_{s-1}(t_u) - g_{s-1}(t_w)),
    // carried as the pair (rho(A), rho(-A)).
    for (int s = 2; s <= j; ++s) {
        const bool has_prev_acc = s >= 3;
        const int in_dim = has_prev_acc ? 8 : 6;
        std::vector<Triplet> trips;
        std::vector<double> bias(8, 0.0);
        const double shift[3] = {0.0, -0.5, -1.0};
        for (int u = 0; u < 3; ++u) {
            for (int c = 0; c < 3; ++c) {
                trips.push_back({u, c, g_row[c]});
                trips.push_back({3 + u, 3 + c, g_row[c]});
            }
            bias[u] = shift[u];
            bias[3 + u] = shift[u];
        }
        const double cs = std::ldexp(1.0, -2 * (s - 1));
        for (int c = 0; c < 3; ++c) {
            trips.push_back({6, c, cs * g_row[c]});
            trips.push_back({6, 3 + c, -cs * g_row[c]});
            trips.push_back({7, c, -cs * g_row[c]});
            trips.push_back({7, 3 + c, cs * g_row[c]});
        }
        if (has_prev_acc) {
            trips.push_back({6, 6, 1.0});
            trips.push_back({6, 7, -1.0});
            trips.push_back({7, 6, -1.0});
            trips.push_back({7, 7, 1.0});
        }
        layers.emplace_back(8, in_dim, std::move(trips), std::move(bias));
    }

    // Output: R = -4K^2 [ (A+ - A-) + 4^{-j} (g_j(t_u) - g_j(t_w)) ].
    {
        const double scale = -4.0 * K * K;
        const double cj = std::ldexp(1.0, -2 * j);
        std::vector<Triplet> trips;
        for (int c = 0; c < 3; ++c) {
            trips.push_back({0, c, scale * cj * g_row[c]});
            trips.push_back({0, 3 + c, -scale * cj * g_row[c]});
        }
        trips.push_back({0, 6, scale});
        trips.push_back({0, 7, -scale});
        layers.emplace_back(1, 8, std::move(trips), std::vector<double>{0.0});
    }

    return NeuralNetwork(2, std::move(layers));
}

} // namespace cheb2relu
