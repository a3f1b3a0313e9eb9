#include "cheb2relu/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "json.hpp"

namespace cheb2relu {

Layer::Layer(int rows, int cols, std::vector<Triplet> triplets, std::vector<double> bias)
    : rows_(rows), cols_(cols), weights_(std::move(triplets)), bias_(std::move(bias)) {
    if (rows_ <= 0 || cols_ <= 0)
        throw StructuralError("layer dimensions must be positive");
    if (static_cast<int>(bias_.size()) != rows_)
        throw StructuralError("bias length does not match row count");
    for (const Triplet& t : weights_) {
        if (t.row < 0 || t.row >= rows_ || t.col < 0 || t.col >= cols_)
            throw StructuralError("triplet index out of range");
        if (!std::isfinite(t.value))
            throw DataError("non-finite weight value");
    }
    for (double b : bias_)
        if (!std::isfinite(b))
            throw DataError("non-finite bias value");
    // Drop exact zeros so nnz() counts stored entries.
    weights_.erase(std::remove_if(weights_.begin(), weights_.end(),
                                  [](const Triplet& t) { return t.value == 0.0; }),
                   weights_.end());
    std::sort(weights_.begin(), weights_.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    // Duplicate (row,col) pairs would break nnz accounting.
    for (std::size_t i = 1; i < weights_.size(); ++i)
        if (weights_[i].row == weights_[i - 1].row && weights_[i].col == weights_[i - 1].col)
            throw StructuralError("duplicate triplet entry");
}

long long Layer::nnz() const {
    long long n = static_cast<long long>(weights_.size());
    for (double b : bias_)
        if (b != 0.0)
            ++n;
    return n;
}

void Layer::apply(const double* x, double* y) const {
    std::memcpy(y, bias_.data(), sizeof(double) * bias_.size());
    for (const Triplet& t : weights_)
        y[t.row] += t.value * x[t.col];
}

void Layer::apply_jvp(const double* x, const double* dx, double* y, double* dy) const {
    std::memcpy(y, bias_.data(), sizeof(double) * bias_.size());
    std::memset(dy, 0, sizeof(double) * bias_.size());
    for (const Triplet& t : weights_) {
        y[t.row] += t.value * x[t.col];
        dy[t.row] += t.value * dx[t.col];
    }
}

NeuralNetwork::NeuralNetwork(int input_dim, std::vector<Layer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
    if (input_dim_ <= 0)
        throw StructuralError("input dimension must be positive");
    if (layers_.empty())
        throw StructuralError("network needs at least one layer");
    int expect = input_dim_;
    for (const Layer& l : layers_) {
        if (l.cols() != expect)
            throw StructuralError("layer input dimension mismatch");
        expect = l.rows();
    }
}

std::vector<double> NeuralNetwork::realize(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != input_dim_)
        throw StructuralError("input vector has wrong length");
    std::vector<double> cur = x, next;
    const int L = depth();
    for (int l = 0; l < L; ++l) {
        next.assign(layers_[l].rows(), 0.0);
        layers_[l].apply(cur.data(), next.data());
        if (l + 1 < L)
            for (double& v : next)
                v = v > 0.0 ? v : 0.0;
        cur.swap(next);
    }
    return cur;
}

double NeuralNetwork::realize1(double x) const {
    if (input_dim_ != 1 || output_dim() != 1)
        throw StructuralError("realize1 needs a scalar network");
    return realize({x})[0];
}

std::pair<std::vector<double>, std::vector<double>>
NeuralNetwork::realize_with_derivative(double x) const {
    if (input_dim_ != 1)
        throw StructuralError("realize_with_derivative needs input dimension 1");
    return realize_jvp({x}, {1.0});
}

std::pair<std::vector<double>, std::vector<double>>
NeuralNetwork::realize_jvp(const std::vector<double>& x, const std::vector<double>& dx) const {
    if (static_cast<int>(x.size()) != input_dim_ || dx.size() != x.size())
        throw StructuralError("input vector has wrong length");
    std::vector<double> v = x, dv = dx, nv, ndv;
    const int L = depth();
    for (int l = 0; l < L; ++l) {
        nv.assign(layers_[l].rows(), 0.0);
        ndv.assign(layers_[l].rows(), 0.0);
        layers_[l].apply_jvp(v.data(), dv.data(), nv.data(), ndv.data());
        if (l + 1 < L) {
            for (std::size_t i = 0; i < nv.size(); ++i) {
                if (nv[i] > 0.0)
                    continue;
                // At an exactly-zero pre-activation the mask follows the
                // incoming tangent (the right-continuous choice), so the
                // result is the exact one-sided directional derivative.
                if (nv[i] == 0.0 && ndv[i] > 0.0)
                    continue;
                nv[i] = 0.0;
                ndv[i] = 0.0;
            }
        }
        v.swap(nv);
        dv.swap(ndv);
    }
    return {std::move(v), std::move(dv)};
}

SizeMetrics NeuralNetwork::metrics() const {
    SizeMetrics m;
    m.depth = depth();
    m.width_max = input_dim_;
    for (const Layer& l : layers_) {
        m.size += l.nnz();
        m.width_max = std::max(m.width_max, l.rows());
    }
    m.size_first = layers_.front().nnz();
    m.size_last = layers_.back().nnz();
    return m;
}

std::string NeuralNetwork::to_json(int indent) const {
    nlohmann::json j;
    j["input_dim"] = input_dim_;
    j["layers"] = nlohmann::json::array();
    for (const Layer& l : layers_) {
        nlohmann::json jl;
        jl["rows"] = l.rows();
        jl["cols"] = l.cols();
        auto trips = nlohmann::json::array();
        for (const Triplet& t : l.triplets())
            trips.push_back({t.row, t.col, t.value});
        jl["triplets"] = std::move(trips);
        jl["bias"] = l.bias();
        j["layers"].push_back(std::move(jl));
    }
    return indent < 0 ? j.dump() : j.dump(indent);
}

NeuralNetwork NeuralNetwork::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid network JSON: ") + e.what());
    }
    try {
        const int input_dim = j.at("input_dim").get<int>();
        std::vector<Layer> layers;
        for (const auto& jl : j.at("layers")) {
            std::vector<Triplet> trips;
            for (const auto& jt : jl.at("triplets"))
                trips.push_back({jt.at(0).get<int>(), jt.at(1).get<int>(), jt.at(2).get<double>()});
            layers.emplace_back(jl.at("rows").get<int>(), jl.at("cols").get<int>(),
                                std::move(trips), jl.at("bias").get<std::vector<double>>());
        }
        return NeuralNetwork(input_dim, std::move(layers));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid network JSON: ") + e.what());
    }
}

NeuralNetwork affine_network(Layer layer) {
    const int d = layer.cols();
    std::vector<Layer> ls;
    ls.push_back(std::move(layer));
    return NeuralNetwork(d, std::move(ls));
}

} // namespace cheb2relu
