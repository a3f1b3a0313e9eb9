#include "cheb2relu/cheb_emulator.hpp"

#include <algorithm>
#include <cmath>

#include "cheb2relu/nn_calculus.hpp"
#include "cheb2relu/product_net.hpp"

namespace cheb2relu {

namespace {

void check_tolerance(double t, const char* what) {
    if (!(t > 0.0 && t < 1.0))
        throw ParameterError(std::string(what) + " must lie in (0,1)");
}

/// Base tower: outputs (x, x, ~T_2(x)) with ~T_2 = 2 R(x~_{delta/4,1})(x,x) - 1.
NeuralNetwork tower_base(double delta) {
    const NeuralNetwork prod = build_product({delta / 4.0, 1.0});
    const int L1 = prod.depth();

    // Feed both product inputs with x, double the output and subtract 1.
    std::vector<Layer> layers;
    {
        const Layer& first = prod.layers().front();
        std::vector<double> col(first.rows(), 0.0);
        for (const Triplet& t : first.triplets())
            col[t.row] += t.value; // A_1 [1,1]^T
        std::vector<Triplet> trips;
        for (int r = 0; r < first.rows(); ++r)
            if (col[r] != 0.0)
                trips.push_back({r, 0, col[r]});
        layers.emplace_back(first.rows(), 1, std::move(trips), first.bias());
    }
    for (int l = 1; l + 1 < L1; ++l)
        layers.push_back(prod.layers()[l]);
    {
        const Layer& last = prod.layers().back();
        std::vector<Triplet> trips;
        for (const Triplet& t : last.triplets())
            trips.push_back({t.row, t.col, 2.0 * t.value});
        std::vector<double> bias = last.bias();
        for (double& b : bias)
            b *= 2.0;
        bias[0] -= 1.0;
        layers.emplace_back(last.rows(), last.cols(), std::move(trips), std::move(bias));
    }
    NeuralNetwork t2(1, std::move(layers));

    return parallel({identity_net(1, L1), identity_net(1, L1), std::move(t2)});
}

/// Routing layer from the level-k outputs (x, ~T_{2^{k-1}}, .., ~T_{2^k}) to
/// the 2 carried channels plus the 2^k product input pairs.
NeuralNetwork tower_routing(int k) {
    const int in_dim = (1 << (k - 1)) + 2;
    const int out_dim = (1 << (k + 1)) + 2;
    std::vector<Triplet> trips;
    trips.push_back({0, 0, 1.0});
    trips.push_back({1, in_dim - 1, 1.0});
    for (int m = 3; m <= out_dim; ++m) {
        const int i = (m + 5 + 3) / 4; // ceil((m+5)/4), 1-based source index
        trips.push_back({m - 1, i - 1, 1.0});
    }
    return affine_network(Layer(out_dim, in_dim, std::move(trips), std::vector<double>(out_dim, 0.0)));
}

/// Recombination layer: keeps the 2 carried channels and maps each product
/// output q to 2q - x (odd degree) or 2q - 1 (even degree).
NeuralNetwork tower_recombine(int k) {
    const int dim = (1 << k) + 2;
    std::vector<Triplet> trips;
    std::vector<double> bias(dim, 0.0);
    trips.push_back({0, 0, 1.0});
    trips.push_back({1, 1, 1.0});
    for (int m = 3; m <= dim; ++m) {
        trips.push_back({m - 1, m - 1, 2.0});
        if (m % 2 == 1)
            trips.push_back({m - 1, 0, -1.0}); // odd degree: subtract carried x
        else
            bias[m - 1] = -1.0; // even degree: subtract T_0 = 1
    }
    return affine_network(Layer(dim, dim, std::move(trips), std::move(bias)));
}

} // namespace

double tower_theta(int k_prev, double delta) {
    return std::ldexp(delta, -2 * k_prev - 4);
}

NeuralNetwork build_cheb_tower(int k, double delta) {
    if (k < 1)
        throw ParameterError("tower level must be >= 1");
    check_tolerance(delta, "tower delta");
    if (k == 1)
        return tower_base(delta);

    const int k_prev = k - 1;
    const double theta = tower_theta(k_prev, delta);
    const NeuralNetwork inner = build_cheb_tower(k_prev, theta);

    const NeuralNetwork prod = build_product({theta, 2.0});
    std::vector<NeuralNetwork> blocks;
    blocks.push_back(identity_net(2, prod.depth()));
    for (int i = 0; i < (1 << k_prev); ++i)
        blocks.push_back(prod);
    const NeuralNetwork products = full_parallel(blocks);

    const NeuralNetwork stage = sparse_concat(tower_recombine(k_prev), products);
    return sparse_concat(stage, sparse_concat(tower_routing(k_prev), inner));
}

EmulationBudget EmulationBudget::for_poly(int n, double tau) {
    check_tolerance(tau, "tau");
    EmulationBudget b;
    b.tolerance = tau;
    b.max_degree = std::max(n, 1);
    b.level = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(b.max_degree)) - 1e-12)));
    b.delta = tau;
    return b;
}

NeuralNetwork build_poly_emulator(const std::vector<ChebSeries>& polys, double tau) {
    check_tolerance(tau, "tau");
    if (polys.empty())
        throw StructuralError("poly emulator: empty polynomial list");
    for (const ChebSeries& s : polys) {
        if (s.coeffs.empty())
            throw StructuralError("poly emulator: empty coefficient vector");
        if (s.a != -1.0 || s.b != 1.0)
            throw StructuralError("poly emulator: series must live on (-1,1)");
    }
    const int nv = static_cast<int>(polys.size());
    int n = 0;
    for (const ChebSeries& s : polys)
        n = std::max(n, s.degree());
    auto coeff = [&](int i, int l) {
        return l <= polys[i].degree() ? polys[i].coeffs[l] : 0.0;
    };

    if (n <= 1) {
        // Affine output layer; a degree-0 input is the zero-weight case.
        std::vector<Triplet> trips;
        std::vector<double> bias(nv, 0.0);
        for (int i = 0; i < nv; ++i) {
            if (n >= 1)
                trips.push_back({i, 0, coeff(i, 1)});
            bias[i] = coeff(i, 0);
        }
        return affine_network(Layer(nv, 1, std::move(trips), std::move(bias)));
    }

    const EmulationBudget budget = EmulationBudget::for_poly(n, tau);
    const int k = budget.level;
    std::vector<NeuralNetwork> towers;
    towers.reserve(k);
    for (int j = 1; j <= k; ++j)
        towers.push_back(build_cheb_tower(j, budget.delta));
    const int L_top = towers.back().depth();

    std::vector<NeuralNetwork> parts;
    parts.reserve(k);
    for (int j = 1; j <= k; ++j) {
        const int pad = L_top + 1 - towers[j - 1].depth();
        parts.push_back(sparse_concat(towers[j - 1], identity_net(1, pad)));
    }
    const NeuralNetwork stacked = parallel(parts);

    // Output map: v_{i,0} + v_{i,1} z_2 + v_{i,2} z_3
    //             + sum_{j>=2} sum_{l=2^{j-1}+1}^{2^j} v_{i,l} z_{l+2j-1}.
    std::vector<Triplet> trips;
    std::vector<double> bias(nv, 0.0);
    for (int i = 0; i < nv; ++i) {
        bias[i] = coeff(i, 0);
        for (int l = 1; l <= n; ++l) {
            const double v = coeff(i, l);
            if (v == 0.0)
                continue;
            const int j = l <= 2 ? 1 : static_cast<int>(std::ceil(std::log2(static_cast<double>(l)) - 1e-12));
            const int col = l + 2 * j - 2; // 0-based z_{l+2j-1}
            trips.push_back({i, col, v});
        }
    }
    NeuralNetwork out_map = affine_network(Layer(nv, stacked.output_dim(), std::move(trips), std::move(bias)));
    return sparse_concat(out_map, stacked);
}

NeuralNetwork build_interval_emulator(const std::vector<ChebSeries>& polys, double eps) {
    check_tolerance(eps, "eps");
    if (polys.empty())
        throw StructuralError("interval emulator: empty polynomial list");
    const double a = polys.front().a, b = polys.front().b;
    if (!(a < b))
        throw ParameterError("interval emulator: need a < b");
    for (const ChebSeries& s : polys)
        if (s.a != a || s.b != b)
            throw StructuralError("interval emulator: mixed intervals");

    int n = 1;
    for (const ChebSeries& s : polys)
        n = std::max(n, s.degree());
    const double c0 = 2.0;
    const double tau = eps / (4.0 * c0 * std::pow(static_cast<double>(n), 6.0));

    std::vector<ChebSeries> hats;
    hats.reserve(polys.size());
    for (const ChebSeries& s : polys)
        hats.push_back(ChebSeries{s.coeffs, -1.0, 1.0});
    const NeuralNetwork inner = build_poly_emulator(hats, tau);

    // Clamp P: depth 2, rho(x-a), rho(x-b) -> (2/h) (rho(x-a) - rho(x-b)) - 1.
    const double h = b - a;
    std::vector<Layer> clamp_layers;
    clamp_layers.emplace_back(2, 1, std::vector<Triplet>{{0, 0, 1.0}, {1, 0, 1.0}},
                              std::vector<double>{-a, -b});
    clamp_layers.emplace_back(1, 2, std::vector<Triplet>{{0, 0, 2.0 / h}, {0, 1, -2.0 / h}},
                              std::vector<double>{-1.0});
    NeuralNetwork clamp(1, std::move(clamp_layers));

    return sparse_concat(inner, clamp);
}

double tower_depth_bound(int k, double delta) {
    const ProductConstants c = product_constants();
    const double ld = std::log2(1.0 / delta);
    return c.C_L * ((2.0 / 3.0) * k * k * k + 3.0 * k * k + k * ld) +
           (5.0 * c.C_L + c.C_L_add + 2.0) * k;
}

double tower_size_bound(int k, double delta) {
    const ProductConstants c = product_constants();
    const double ld = std::log2(1.0 / delta);
    const double p2k = std::ldexp(1.0, k);
    const double C1 = 9.0 * c.C_M + c.C_M_add + c.C_fi + c.C_la + 14.0;
    const double C2 = 20.0 * c.C_L + 4.0 * c.C_L_add + c.C_la + 24.0;
    return 4.0 * c.C_M * k * p2k + c.C_M * p2k * ld + 4.0 * k * c.C_L * ld + C1 * p2k +
           (8.0 / 3.0) * c.C_L * k * k * k + 12.0 * c.C_L * k * k + C2 * k;
}

double tower_size_first_bound() { return product_constants().C_fi + 4.0; }

double tower_size_last_bound(int k) {
    return std::ldexp(1.0, k + 1) + product_constants().C_la + 4.0;
}

} // namespace cheb2relu
