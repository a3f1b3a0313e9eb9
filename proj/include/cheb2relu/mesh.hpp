#pragma once

#include <functional>
#include <vector>

#include "cheb2relu/cheb.hpp"

namespace cheb2relu {

/// Partition a = x_0 < ... < x_N = b with per-element polynomial degrees.
struct Mesh {
    std::vector<double> nodes;
    std::vector<int> degrees;

    int num_elements() const { return static_cast<int>(degrees.size()); }
    double a() const { return nodes.front(); }
    double b() const { return nodes.back(); }
    double element_size(int i) const { return nodes[i + 1] - nodes[i]; }
    double h_max() const;
    int p_max() const;
    /// 1 + sum p_i, the dimension of S_p(I,T).
    long long dof() const;

    void validate() const;
};

Mesh uniform_mesh(int n_elements, double a, double b, int degree);

/// Member of S_p(I,T): one Chebyshev series per element, continuous across
/// interior nodes (checked to 1e-10 relative on construction).
struct PiecewiseCheb {
    Mesh mesh;
    std::vector<ChebSeries> elements;

    PiecewiseCheb(Mesh mesh, std::vector<ChebSeries> elements);

    double eval(double x) const;
    double eval_derivative(double x) const;
    std::vector<double> node_values() const;
    int element_of(double x) const;
};

/// Elementwise Clenshaw-Curtis interpolant of f on the mesh; continuous by
/// construction because adjacent grids share the nodal samples.
PiecewiseCheb sample_to_spline(const std::function<double(double)>& f, const Mesh& mesh);

/// Mesh file IO: nodes CSV (header "node") and degrees CSV (header "degree").
Mesh read_mesh_csv(std::istream& nodes_in, std::istream& degrees_in);
void write_mesh_csv(const Mesh& mesh, std::ostream& nodes_out, std::ostream& degrees_out);

/// Spline value dump: CSV rows (element_index, cc_point, value).
void write_spline_values_csv(const PiecewiseCheb& v, std::ostream& out);
PiecewiseCheb read_spline_values_csv(std::istream& in, const Mesh& mesh);

} // namespace cheb2relu
