#include "cheb2relu/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace cheb2relu {

namespace {

struct Gauss16 {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
    Gauss16() {
        // Newton iteration on P_16; standard Golub-free construction.
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-16)
                    break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = -t;
            x[n - 1 - i] = t;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const Gauss16& gauss16() {
    static const Gauss16 g;
    return g;
}

struct Accum {
    double abs_e = 0.0;   // int |e|
    double sq_e = 0.0;    // int e^2
    double abs_ed = 0.0;  // int |e'|
    double sq_ed = 0.0;   // int e'^2
    double max_e = 0.0;   // grid sup |e|
    double max_ed = 0.0;  // grid sup |e'|
};

// (e, e') at x; derivatives of the network are taken one-sidedly along
// `dir` (+1 everywhere except the right end of the mesh, where the
// realization may saturate).
using PointError = std::function<std::pair<double, double>(double, double)>;

void integrate_panel(const PointError& err, double lo, double hi, Accum& acc) {
    const Gauss16& g = gauss16();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int q = 0; q < 16; ++q) {
        const double x = mid + half * g.x[q];
        const auto [e, ed] = err(x, 1.0);
        if (!std::isfinite(e) || !std::isfinite(ed))
            throw DataError("non-finite value at quadrature node x = " + std::to_string(x));
        const double w = half * g.w[q];
        acc.abs_e += w * std::abs(e);
        acc.sq_e += w * e * e;
        acc.abs_ed += w * std::abs(ed);
        acc.sq_ed += w * ed * ed;
    }
}

void scan_grid(const PointError& err, double lo, double hi, double mesh_end, int n, Accum& acc) {
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const auto [e, ed] = err(x, x < mesh_end ? 1.0 : -1.0);
        if (!std::isfinite(e) || !std::isfinite(ed))
            throw DataError("non-finite value at grid node x = " + std::to_string(x));
        acc.max_e = std::max(acc.max_e, std::abs(e));
        acc.max_ed = std::max(acc.max_ed, std::abs(ed));
    }
}

bool wants(const std::vector<NormTag>& norms, NormTag t) {
    return std::find(norms.begin(), norms.end(), t) != norms.end();
}

ErrorReport assemble(const std::vector<Accum>& per_elem, const std::vector<NormTag>& norms,
                     long long quad_resolution, long long grid_resolution, double interval_len) {
    ErrorReport rep;
    Accum total;
    rep.per_element.resize(per_elem.size());
    for (std::size_t i = 0; i < per_elem.size(); ++i) {
        const Accum& a = per_elem[i];
        total.abs_e += a.abs_e;
        total.sq_e += a.sq_e;
        total.abs_ed += a.abs_ed;
        total.sq_ed += a.sq_ed;
        total.max_e = std::max(total.max_e, a.max_e);
        total.max_ed = std::max(total.max_ed, a.max_ed);
        rep.per_element[i] = {a.abs_e, std::sqrt(a.sq_e), a.max_e,
                              a.abs_ed, std::sqrt(a.sq_ed), a.max_ed};
    }
    auto push = [&](NormTag tag, double value, bool grid) {
        rep.entries.push_back(
            {tag, value, grid ? "grid" : "quadrature", grid ? grid_resolution : quad_resolution});
    };
    if (wants(norms, NormTag::L1))
        push(NormTag::L1, total.abs_e, false);
    if (wants(norms, NormTag::L2))
        push(NormTag::L2, std::sqrt(total.sq_e), false);
    if (wants(norms, NormTag::Linf))
        push(NormTag::Linf, total.max_e, true);
    if (wants(norms, NormTag::W1_1))
        push(NormTag::W1_1, total.abs_ed, false);
    if (wants(norms, NormTag::H1_semi))
        push(NormTag::H1_semi, std::sqrt(total.sq_ed), false);
    if (wants(norms, NormTag::W1_inf))
        push(NormTag::W1_inf, total.max_ed, true);
    if (rep.has(NormTag::L2) && rep.has(NormTag::Linf))
        rep.add_check("L2 <= Linf |I|^{1/2}", rep.get(NormTag::L2),
                      rep.get(NormTag::Linf) * std::sqrt(interval_len), 1e-3);
    return rep;
}

ErrorReport run_norms(const PointError& err, const Mesh& mesh, const std::vector<NormTag>& norms,
                      int panels, int grid_points, int graded_levels, double singular_alpha) {
    mesh.validate();
    const int N = mesh.num_elements();
    std::vector<Accum> per_elem(N);
    for (int i = 0; i < N; ++i) {
        const double lo = mesh.nodes[i], hi = mesh.nodes[i + 1];
        if (graded_levels > 0 && i == 0) {
            // Geometric refinement toward the singular point at lo.
            double right = hi;
            for (int s = 0; s < graded_levels; ++s) {
                const double left = lo + (right - lo) * 0.5;
                integrate_panel(err, left, right, per_elem[i]);
                right = left;
            }
            integrate_panel(err, lo, right, per_elem[i]);
        } else {
            for (int s = 0; s < panels; ++s) {
                const double a = lo + (hi - lo) * s / panels;
                const double b = lo + (hi - lo) * (s + 1) / panels;
                integrate_panel(err, a, b, per_elem[i]);
            }
        }
        if (wants(norms, NormTag::Linf) || wants(norms, NormTag::W1_inf)) {
            // Avoid evaluating the target derivative at the singular endpoint.
            const double glo = (graded_levels > 0 && i == 0) ? lo + (hi - lo) * 1e-12 : lo;
            scan_grid(err, glo, hi, mesh.b(), grid_points, per_elem[i]);
        }
    }
    ErrorReport rep = assemble(per_elem, norms, static_cast<long long>(panels) * 16,
                               grid_points, mesh.b() - mesh.a());
    if (graded_levels > 0 && singular_alpha > 0.0 && singular_alpha <= 0.5)
        rep.warnings.push_back("W^{1,r} seminorm of an x^alpha target diverges for alpha <= 1/2; "
                               "reported value is the quadrature estimate");
    return rep;
}

} // namespace

const char* norm_tag_name(NormTag tag) {
    switch (tag) {
    case NormTag::L1: return "L1";
    case NormTag::L2: return "L2";
    case NormTag::Linf: return "Linf";
    case NormTag::W1_1: return "W1_1";
    case NormTag::H1_semi: return "H1_semi";
    case NormTag::W1_inf: return "W1_inf";
    }
    return "?";
}

bool ErrorReport::has(NormTag tag) const {
    for (const NormEntry& e : entries)
        if (e.tag == tag)
            return true;
    return false;
}

double ErrorReport::get(NormTag tag) const {
    for (const NormEntry& e : entries)
        if (e.tag == tag)
            return e.value;
    throw StructuralError(std::string("norm not computed: ") + norm_tag_name(tag));
}

bool ErrorReport::all_checks_passed() const {
    for (const BoundCheck& c : bound_checks)
        if (!c.satisfied)
            return false;
    return true;
}

void ErrorReport::add_check(const std::string& name, double lhs, double rhs, double slack) {
    bound_checks.push_back({name, lhs, rhs, lhs <= rhs * (1.0 + slack) + 1e-300});
}

std::string ErrorReport::to_json(int indent) const {
    nlohmann::json j;
    j["norms"] = nlohmann::json::array();
    for (const NormEntry& e : entries)
        j["norms"].push_back({{"norm", norm_tag_name(e.tag)},
                              {"value", e.value},
                              {"method", e.method},
                              {"resolution", e.resolution}});
    j["bound_checks"] = nlohmann::json::array();
    for (const BoundCheck& c : bound_checks)
        j["bound_checks"].push_back(
            {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"satisfied", c.satisfied}});
    if (!warnings.empty())
        j["warnings"] = warnings;
    for (const auto& [k, v] : extras)
        j["extras"][k] = v;
    return indent < 0 ? j.dump() : j.dump(indent);
}

const std::vector<NormTag>& all_norm_tags() {
    static const std::vector<NormTag> tags = {NormTag::L1, NormTag::L2,      NormTag::Linf,
                                              NormTag::W1_1, NormTag::H1_semi, NormTag::W1_inf};
    return tags;
}

Target target_from_spline(const PiecewiseCheb& v) {
    Target t;
    t.value = [v](double x) { return v.eval(x); };
    t.deriv = [v](double x) { return v.eval_derivative(x); };
    return t;
}

ErrorReport diff_norms(const Target& f, const NeuralNetwork& net, const Mesh& mesh,
                       const std::vector<NormTag>& norms, int panels, int grid_points) {
    if (net.input_dim() != 1 || net.output_dim() != 1)
        throw StructuralError("diff_norms: network must be scalar-in scalar-out");
    PointError err = [&](double x, double dir) {
        const auto [val, der] = net.realize_jvp({x}, {dir});
        return std::make_pair(f.value(x) - val[0], f.deriv(x) - dir * der[0]);
    };
    return run_norms(err, mesh, norms, panels, grid_points, 0, 0.0);
}

ErrorReport singular_diff_norms(const Target& f, const NeuralNetwork& net, const Mesh& mesh,
                                const std::vector<NormTag>& norms, int levels, int panels,
                                int grid_points) {
    if (net.input_dim() != 1 || net.output_dim() != 1)
        throw StructuralError("singular_diff_norms: network must be scalar-in scalar-out");
    if (!(f.singular_alpha > 0.0))
        throw ParameterError("singular_diff_norms: target must declare alpha > 0");
    PointError err = [&](double x, double dir) {
        const auto [val, der] = net.realize_jvp({x}, {dir});
        return std::make_pair(f.value(x) - val[0], f.deriv(x) - dir * der[0]);
    };
    return run_norms(err, mesh, norms, panels, grid_points, levels, f.singular_alpha);
}

ErrorReport singular_diff_norms(double alpha, const NeuralNetwork& net, const Mesh& mesh) {
    if (!(alpha > 0.0))
        throw ParameterError("singular_diff_norms: alpha must be positive");
    Target t;
    t.value = [alpha](double x) { return std::pow(x, alpha); };
    t.deriv = [alpha](double x) { return alpha * std::pow(x, alpha - 1.0); };
    t.singular_alpha = alpha;
    t.singular_coeff = 1.0;
    return singular_diff_norms(t, net, mesh, all_norm_tags());
}

ErrorReport spline_target_norms(const Target& f, const PiecewiseCheb& v, int panels) {
    PointError err = [&](double x, double) {
        return std::make_pair(f.value(x) - v.eval(x), f.deriv(x) - v.eval_derivative(x));
    };
    const int levels = f.singular_alpha > 0.0 ? 40 : 0;
    return run_norms(err, v.mesh, all_norm_tags(), panels, 1025, levels, f.singular_alpha);
}

const std::array<double, 16>& gauss_nodes() { return gauss16().x; }
const std::array<double, 16>& gauss_weights() { return gauss16().w; }

} // namespace cheb2relu
