#include "cheb2relu/spline_emulator.hpp"

#include <algorithm>
#include <cmath>

#include "cheb2relu/cheb_emulator.hpp"
#include "cheb2relu/nn_calculus.hpp"

namespace cheb2relu {

namespace {

int tower_count(int p) {
    return std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(p)) - 1e-12)));
}

/// Width of the spliced tower-output block inside an element emulator.
int element_block_width(int p) {
    const int k = tower_count(p);
    return (1 << k) + 2 * k - 1;
}

int coeff_column(int ell) {
    const int j = ell <= 2 ? 1 : static_cast<int>(std::ceil(std::log2(static_cast<double>(ell)) - 1e-12));
    return ell + 2 * j - 2; // 0-based
}

} // namespace

NeuralNetwork cpwl_interpolant_net(const std::vector<double>& nodes,
                                   const std::vector<double>& node_values) {
    if (nodes.size() < 2 || nodes.size() != node_values.size())
        throw StructuralError("cpwl interpolant: need matching nodes and values");
    const int N = static_cast<int>(nodes.size()) - 1;
    std::vector<Layer> layers;
    {
        std::vector<Triplet> trips;
        std::vector<double> bias(N, 0.0);
        for (int i = 0; i < N; ++i) {
            trips.push_back({i, 0, 1.0});
            bias[i] = -nodes[i];
        }
        layers.emplace_back(N, 1, std::move(trips), std::move(bias));
    }
    {
        std::vector<Triplet> trips;
        double prev_slope = 0.0;
        for (int i = 0; i < N; ++i) {
            const double slope = (node_values[i + 1] - node_values[i]) / (nodes[i + 1] - nodes[i]);
            const double w = i == 0 ? slope : slope - prev_slope;
            if (w != 0.0)
                trips.push_back({0, i, w});
            prev_slope = slope;
        }
        layers.emplace_back(1, N, std::move(trips), std::vector<double>{node_values[0]});
    }
    return NeuralNetwork(1, std::move(layers));
}

NeuralNetwork cpwl_interpolant_net(const PiecewiseCheb& v) {
    return cpwl_interpolant_net(v.mesh.nodes, v.node_values());
}

std::vector<std::vector<double>>
output_weights_via_ifft(const std::vector<std::vector<double>>& element_cc_values,
                        const Mesh& mesh) {
    mesh.validate();
    if (static_cast<int>(element_cc_values.size()) != mesh.num_elements())
        throw StructuralError("output weights: one sample vector per element required");
    std::vector<std::vector<double>> out(mesh.num_elements());
    for (int i = 0; i < mesh.num_elements(); ++i) {
        const int p = mesh.degrees[i];
        const std::vector<double>& vals = element_cc_values[i];
        if (static_cast<int>(vals.size()) != p + 1)
            throw StructuralError("output weights: element " + std::to_string(i) + " expects " +
                                  std::to_string(p + 1) + " samples");
        const CCGrid grid = cc_grid(p, mesh.nodes[i], mesh.nodes[i + 1]);
        // Samples of v - vbar: value at the right node is vals[0], at the left
        // node vals[p] (CC points decrease).
        const double vl = vals[p], vr = vals[0];
        const double h = mesh.element_size(i);
        std::vector<double> w(p + 1);
        double scale = 1.0;
        for (int j = 0; j <= p; ++j) {
            const double x = grid.points[j];
            w[j] = vals[j] - ((mesh.nodes[i + 1] - x) * vl + (x - mesh.nodes[i]) * vr) / h;
            scale = std::max(scale, std::abs(vals[j]));
        }
        std::vector<double> coeffs = cc_interpolate(w, grid).coeffs;
        double s_plain = 0.0, s_alt = 0.0;
        for (int l = 0; l <= p; ++l) {
            s_plain += coeffs[l];
            s_alt += (l % 2 == 0 ? coeffs[l] : -coeffs[l]);
        }
        if (std::abs(s_plain) > 1e-10 * scale || std::abs(s_alt) > 1e-10 * scale)
            throw DataError("output weights: coefficient sum identities violated on element " +
                            std::to_string(i));
        out[i] = std::move(coeffs);
    }
    return out;
}

std::vector<CoeffSlot> spline_output_layout(const Mesh& mesh) {
    mesh.validate();
    std::vector<CoeffSlot> layout;
    int offset = mesh.num_elements(); // the vbar block occupies N columns
    for (int i = 0; i < mesh.num_elements(); ++i) {
        const int p = mesh.degrees[i];
        if (p < 2)
            continue;
        const int width = element_block_width(p);
        for (int ell = 1; ell <= p; ++ell) {
            const int col = offset + coeff_column(ell);
            layout.push_back({i, ell, col, col + width});
        }
        offset += 2 * width;
    }
    return layout;
}

SplineEmulation build_spline_emulation(const PiecewiseCheb& v, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ParameterError("spline emulator: eps must lie in (0,1)");
    const Mesh& mesh = v.mesh;
    const int N = mesh.num_elements();

    std::vector<std::vector<double>> cc_values(N);
    for (int i = 0; i < N; ++i) {
        const CCGrid grid = cc_grid(mesh.degrees[i], mesh.nodes[i], mesh.nodes[i + 1]);
        cc_values[i].resize(grid.points.size());
        for (std::size_t j = 0; j < grid.points.size(); ++j)
            cc_values[i][j] = cheb_eval(v.elements[i], grid.points[j]);
    }
    std::vector<std::vector<double>> what = output_weights_via_ifft(cc_values, mesh);

    std::vector<NeuralNetwork> parts;
    parts.push_back(cpwl_interpolant_net(v));
    std::vector<int> part_elem; // element index per part (-1 for vbar)
    part_elem.push_back(-1);
    for (int i = 0; i < N; ++i) {
        if (mesh.degrees[i] < 2)
            continue; // v - vbar vanishes identically; no sub-network
        ChebSeries w{what[i], mesh.nodes[i], mesh.nodes[i + 1]};
        parts.push_back(build_interval_emulator({std::move(w)}, eps / 4.0));
        part_elem.push_back(i);
    }

    int max_depth = 0;
    for (const NeuralNetwork& p : parts)
        max_depth = std::max(max_depth, p.depth());
    const int target = max_depth + 1;
    std::vector<NeuralNetwork> padded;
    padded.reserve(parts.size());
    for (NeuralNetwork& p : parts)
        padded.push_back(sparse_concat(p, identity_net(1, target - p.depth())));
    const NeuralNetwork stacked = parallel(padded);

    std::vector<Triplet> ones;
    for (int i = 0; i < stacked.output_dim(); ++i)
        ones.push_back({0, i, 1.0});
    NeuralNetwork sum_row =
        affine_network(Layer(1, stacked.output_dim(), std::move(ones), std::vector<double>{0.0}));

    SplineEmulation result{concat(sum_row, stacked), spline_output_layout(mesh), std::move(what)};
    return result;
}

NeuralNetwork build_spline_emulator(const PiecewiseCheb& v, double eps) {
    return build_spline_emulation(v, eps).net;
}

ErrorReport fractional_bound_report(const PiecewiseCheb& v, const NeuralNetwork& net, double s,
                                    double r) {
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional bound: s must lie in (0,1)");
    const bool rinf = std::isinf(r);
    if (!rinf && r != 1.0 && r != 2.0)
        throw ParameterError("fractional bound: supported norm indices are 1, 2, inf");
    const Target t = target_from_spline(v);
    ErrorReport base = diff_norms(t, net, v.mesh, all_norm_tags());
    const double e_l = rinf   ? base.get(NormTag::Linf)
                      : r == 1 ? base.get(NormTag::L1)
                               : base.get(NormTag::L2);
    const double e_semi = rinf   ? base.get(NormTag::W1_inf)
                          : r == 1 ? base.get(NormTag::W1_1)
                                   : base.get(NormTag::H1_semi);
    const double e_w = rinf ? std::max(e_l, e_semi)
                            : std::pow(std::pow(e_l, r) + std::pow(e_semi, r), 1.0 / r);
    const double certificate = std::pow(e_l, 1.0 - s) * std::pow(e_w, s);
    base.extras.emplace_back("s", s);
    base.extras.emplace_back("r", r);
    base.extras.emplace_back("error_Lr", e_l);
    base.extras.emplace_back("error_W1r", e_w);
    base.extras.emplace_back("certificate", certificate);
    base.add_check("certificate <= max(L^r, W^{1,r}) errors", certificate, std::max(e_l, e_w),
                   1e-12);
    return base;
}

} // namespace cheb2relu
