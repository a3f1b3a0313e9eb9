#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cheb2relu/errors.hpp"

namespace cheb2relu {

/// Entry of a sparse weight matrix in coordinate form. Stored values are
/// strictly nonzero so that nonzero counts equal the stored triplet counts.
struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// One affine layer y = A x + b with A sparse (COO) and b dense.
class Layer {
  public:
    Layer(int rows, int cols, std::vector<Triplet> triplets, std::vector<double> bias);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Triplet>& triplets() const { return weights_; }
    const std::vector<double>& bias() const { return bias_; }

    /// Nonzero weights plus nonzero bias entries (the paper's per-layer M_j).
    long long nnz() const;

    /// y = A x + b. y must have size rows().
    void apply(const double* x, double* y) const;
    /// Tangent propagation: y = A x + b, dy = A dx.
    void apply_jvp(const double* x, const double* dx, double* y, double* dy) const;

  private:
    int rows_;
    int cols_;
    std::vector<Triplet> weights_;
    std::vector<double> bias_;
};

struct SizeMetrics {
    int depth = 0;
    long long size = 0;
    long long size_first = 0;
    long long size_last = 0;
    int width_max = 0;
};

/// Feedforward ReLU network: affine layers with max{0,.} applied
/// componentwise after every layer except the last. Immutable after
/// construction; evaluation from multiple threads is safe.
class NeuralNetwork {
  public:
    NeuralNetwork(int input_dim, std::vector<Layer> layers);

    int input_dim() const { return input_dim_; }
    int output_dim() const { return layers_.back().rows(); }
    int depth() const { return static_cast<int>(layers_.size()); }
    const std::vector<Layer>& layers() const { return layers_; }

    std::vector<double> realize(const std::vector<double>& x) const;

    /// Scalar-input/scalar-output convenience.
    double realize1(double x) const;

    /// Value and a.e. derivative for a univariate network. The ReLU mask is
    /// taken as 1 for positive pre-activation and 0 otherwise.
    std::pair<std::vector<double>, std::vector<double>> realize_with_derivative(double x) const;

    /// Forward-mode directional derivative: returns (R(x), D R(x) dx).
    std::pair<std::vector<double>, std::vector<double>>
    realize_jvp(const std::vector<double>& x, const std::vector<double>& dx) const;

    SizeMetrics metrics() const;

    std::string to_json(int indent = -1) const;
    static NeuralNetwork from_json(const std::string& text);

  private:
    int input_dim_;
    std::vector<Layer> layers_;
};

/// Single affine layer as a network (no activation anywhere).
NeuralNetwork affine_network(Layer layer);

} // namespace cheb2relu
