#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cheb2relu/mesh.hpp"
#include "cheb2relu/nn.hpp"

namespace cheb2relu {

enum class NormTag { L1 = 0, L2 = 1, Linf = 2, W1_1 = 3, H1_semi = 4, W1_inf = 5 };

constexpr int kNumNormTags = 6;
const char* norm_tag_name(NormTag tag);

struct NormEntry {
    NormTag tag;
    double value = 0.0;
    std::string method; ///< "quadrature" or "grid"
    long long resolution = 0;
};

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

struct ErrorReport {
    std::vector<NormEntry> entries;
    std::vector<BoundCheck> bound_checks;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, double>> extras;
    /// Per element, per NormTag (indexed by the enum value); filled by
    /// diff_norms for the tags it computes.
    std::vector<std::array<double, kNumNormTags>> per_element;

    bool has(NormTag tag) const;
    double get(NormTag tag) const;
    bool all_checks_passed() const;
    void add_check(const std::string& name, double lhs, double rhs, double slack = 0.0);
    std::string to_json(int indent = -1) const;
};

/// Target function with an a.e. derivative. A positive singular_alpha
/// declares derivative behaviour singular_coeff * alpha * x^(alpha-1) near 0.
struct Target {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    double singular_alpha = 0.0;
    double singular_coeff = 0.0;
};

Target target_from_spline(const PiecewiseCheb& v);

/// Norms of f - R(net) over the mesh interval. r < inf norms use composite
/// 16-node Gauss-Legendre quadrature on `panels` subpanels per element;
/// r = inf norms use per-element grids of `grid_points` points (reported as
/// lower estimates).
ErrorReport diff_norms(const Target& f, const NeuralNetwork& net, const Mesh& mesh,
                       const std::vector<NormTag>& norms, int panels = 64,
                       int grid_points = 8193);

/// As diff_norms, but the first element is integrated on sub-panels graded
/// geometrically toward 0 (ratio 1/2, `levels` levels) for x^alpha-type
/// singular targets. Reports the quadrature value with a divergence warning
/// when alpha <= 1/2.
ErrorReport singular_diff_norms(const Target& f, const NeuralNetwork& net, const Mesh& mesh,
                                const std::vector<NormTag>& norms, int levels = 40,
                                int panels = 64, int grid_points = 8193);

/// Convenience: target u(x) = x^alpha.
ErrorReport singular_diff_norms(double alpha, const NeuralNetwork& net, const Mesh& mesh);

/// All six tags.
const std::vector<NormTag>& all_norm_tags();

/// Norms of the spline/target difference without any network (quadrature on
/// the same panel scheme); used for approximation-error baselines.
ErrorReport spline_target_norms(const Target& f, const PiecewiseCheb& v, int panels = 64);

/// 16-node Gauss-Legendre rule on (-1,1).
const std::array<double, 16>& gauss_nodes();
const std::array<double, 16>& gauss_weights();

} // namespace cheb2relu
