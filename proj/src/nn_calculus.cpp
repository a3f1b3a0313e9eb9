#include "cheb2relu/nn_calculus.hpp"

#include <map>
#include <utility>

namespace cheb2relu {

namespace {

Layer stack_rows(const Layer& a, const Layer& b) {
    // Same input, rows of b below rows of a.
    std::vector<Triplet> trips = a.triplets();
    for (const Triplet& t : b.triplets())
        trips.push_back({t.row + a.rows(), t.col, t.value});
    std::vector<double> bias = a.bias();
    bias.insert(bias.end(), b.bias().begin(), b.bias().end());
    return Layer(a.rows() + b.rows(), a.cols(), std::move(trips), std::move(bias));
}

Layer block_diag(const Layer& a, const Layer& b) {
    std::vector<Triplet> trips = a.triplets();
    for (const Triplet& t : b.triplets())
        trips.push_back({t.row + a.rows(), t.col + a.cols(), t.value});
    std::vector<double> bias = a.bias();
    bias.insert(bias.end(), b.bias().begin(), b.bias().end());
    return Layer(a.rows() + b.rows(), a.cols() + b.cols(), std::move(trips), std::move(bias));
}

// (A2, b2) composed after (A1, b1): rows(A2) x cols(A1), bias A2 b1 + b2.
Layer merge_affine(const Layer& outer, const Layer& inner) {
    std::map<std::pair<int, int>, double> acc;
    // Index inner triplets by row for the sparse product.
    std::vector<std::vector<Triplet>> by_row(inner.rows());
    for (const Triplet& t : inner.triplets())
        by_row[t.row].push_back(t);
    for (const Triplet& u : outer.triplets())
        for (const Triplet& v : by_row[u.col])
            acc[{u.row, v.col}] += u.value * v.value;
    std::vector<Triplet> trips;
    trips.reserve(acc.size());
    for (const auto& [rc, val] : acc)
        if (val != 0.0)
            trips.push_back({rc.first, rc.second, val});
    std::vector<double> bias(outer.rows(), 0.0);
    for (const Triplet& u : outer.triplets())
        bias[u.row] += u.value * inner.bias()[u.col];
    for (int r = 0; r < outer.rows(); ++r)
        bias[r] += outer.bias()[r];
    return Layer(outer.rows(), inner.cols(), std::move(trips), std::move(bias));
}

} // namespace

NeuralNetwork parallel(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    if (phi1.input_dim() != phi2.input_dim())
        throw StructuralError("parallel: input dimensions differ");
    if (phi1.depth() != phi2.depth())
        throw StructuralError("parallel: depths differ");
    std::vector<Layer> layers;
    layers.reserve(phi1.depth());
    for (int l = 0; l < phi1.depth(); ++l) {
        const Layer& a = phi1.layers()[l];
        const Layer& b = phi2.layers()[l];
        layers.push_back(l == 0 ? stack_rows(a, b) : block_diag(a, b));
    }
    return NeuralNetwork(phi1.input_dim(), std::move(layers));
}

NeuralNetwork parallel(const std::vector<NeuralNetwork>& nets) {
    if (nets.empty())
        throw StructuralError("parallel: empty list");
    NeuralNetwork out = nets.front();
    for (std::size_t i = 1; i < nets.size(); ++i)
        out = parallel(out, nets[i]);
    return out;
}

NeuralNetwork full_parallel(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    if (phi1.depth() != phi2.depth())
        throw StructuralError("full_parallel: depths differ");
    std::vector<Layer> layers;
    layers.reserve(phi1.depth());
    for (int l = 0; l < phi1.depth(); ++l)
        layers.push_back(block_diag(phi1.layers()[l], phi2.layers()[l]));
    return NeuralNetwork(phi1.input_dim() + phi2.input_dim(), std::move(layers));
}

NeuralNetwork full_parallel(const std::vector<NeuralNetwork>& nets) {
    if (nets.empty())
        throw StructuralError("full_parallel: empty list");
    NeuralNetwork out = nets.front();
    for (std::size_t i = 1; i < nets.size(); ++i)
        out = full_parallel(out, nets[i]);
    return out;
}

NeuralNetwork concat(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    if (phi1.input_dim() != phi2.output_dim())
        throw StructuralError("concat: inner/outer dimensions differ");
    std::vector<Layer> layers(phi2.layers().begin(), phi2.layers().end() - 1);
    layers.push_back(merge_affine(phi1.layers().front(), phi2.layers().back()));
    layers.insert(layers.end(), phi1.layers().begin() + 1, phi1.layers().end());
    return NeuralNetwork(phi2.input_dim(), std::move(layers));
}

NeuralNetwork sparse_concat(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
    const int d = phi2.output_dim();
    if (phi1.input_dim() != d)
        throw StructuralError("sparse_concat: inner/outer dimensions differ");
    std::vector<Layer> layers(phi2.layers().begin(), phi2.layers().end() - 1);
    // Splice: duplicate phi2's output layer with both signs (ReLU applied),
    // then feed phi1's first layer with U^1 (y+ - y-).
    const Layer& last2 = phi2.layers().back();
    {
        std::vector<Triplet> trips;
        trips.reserve(2 * last2.triplets().size());
        for (const Triplet& t : last2.triplets()) {
            trips.push_back(t);
            trips.push_back({t.row + d, t.col, -t.value});
        }
        std::vector<double> bias = last2.bias();
        for (double b : last2.bias())
            bias.push_back(-b);
        layers.emplace_back(2 * d, last2.cols(), std::move(trips), std::move(bias));
    }
    {
        const Layer& first1 = phi1.layers().front();
        std::vector<Triplet> trips;
        trips.reserve(2 * first1.triplets().size());
        for (const Triplet& t : first1.triplets()) {
            trips.push_back(t);
            trips.push_back({t.row, t.col + d, -t.value});
        }
        layers.emplace_back(first1.rows(), 2 * d, std::move(trips), first1.bias());
    }
    layers.insert(layers.end(), phi1.layers().begin() + 1, phi1.layers().end());
    return NeuralNetwork(phi2.input_dim(), std::move(layers));
}

NeuralNetwork identity_net(int d, int L) {
    if (d < 1 || L < 1)
        throw ParameterError("identity_net: d and L must be positive");
    std::vector<Layer> layers;
    if (L == 1) {
        std::vector<Triplet> trips;
        for (int i = 0; i < d; ++i)
            trips.push_back({i, i, 1.0});
        layers.emplace_back(d, d, std::move(trips), std::vector<double>(d, 0.0));
        return NeuralNetwork(d, std::move(layers));
    }
    {
        std::vector<Triplet> trips;
        for (int i = 0; i < d; ++i) {
            trips.push_back({i, i, 1.0});
            trips.push_back({i + d, i, -1.0});
        }
        layers.emplace_back(2 * d, d, std::move(trips), std::vector<double>(2 * d, 0.0));
    }
    for (int l = 0; l < L - 2; ++l) {
        std::vector<Triplet> trips;
        for (int i = 0; i < 2 * d; ++i)
            trips.push_back({i, i, 1.0});
        layers.emplace_back(2 * d, 2 * d, std::move(trips), std::vector<double>(2 * d, 0.0));
    }
    {
        std::vector<Triplet> trips;
        for (int i = 0; i < d; ++i) {
            trips.push_back({i, i, 1.0});
            trips.push_back({i, i + d, -1.0});
        }
        layers.emplace_back(d, 2 * d, std::move(trips), std::vector<double>(d, 0.0));
    }
    return NeuralNetwork(d, std::move(layers));
}

} // namespace cheb2relu
