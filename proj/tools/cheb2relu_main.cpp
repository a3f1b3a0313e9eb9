// cheb2relu: compile polynomials and continuous piecewise polynomials into
// ReLU networks, verify the error bounds, and run convergence studies.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cheb2relu/cheb_emulator.hpp"
#include "cheb2relu/fem_studies.hpp"
#include "cheb2relu/spline_emulator.hpp"
#include "cheb2relu/targets.hpp"

using namespace cheb2relu;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitBound = 4;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path + "'");
    return in;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write '" + path + "'");
    out << text;
}

Mesh load_mesh(const std::string& mesh_path, const std::string& degrees_path) {
    std::ifstream n = open_input(mesh_path);
    std::ifstream d = open_input(degrees_path);
    return read_mesh_csv(n, d);
}

PiecewiseCheb load_spline(const Mesh& mesh, const std::string& values_path,
                          const std::string& expr) {
    if (!values_path.empty()) {
        std::ifstream in = open_input(values_path);
        return read_spline_values_csv(in, mesh);
    }
    const Target t = make_builtin_target(expr);
    return sample_to_spline(t.value, mesh);
}

/// Bound checks of the spline emulation contract; the exit status of
/// `emulate` reflects these.
ErrorReport emulation_report(const PiecewiseCheb& v, const NeuralNetwork& net, double eps) {
    const Target t = target_from_spline(v);
    ErrorReport rep = diff_norms(t, net, v.mesh, all_norm_tags());
    double nodal = 0.0;
    const std::vector<double> nv = v.node_values();
    for (std::size_t j = 0; j < v.mesh.nodes.size(); ++j)
        nodal = std::max(nodal, std::abs(net.realize({v.mesh.nodes[j]})[0] - nv[j]));
    rep.add_check("nodal exactness <= 1e-12", nodal, 1e-12);
    Target zero{[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 0.0};
    const ErrorReport vn = spline_target_norms(zero, v);
    rep.add_check("|v-R|_{W^{1,1}} <= (eps/2)|v|_{W^{1,1}}", rep.get(NormTag::W1_1),
                  0.5 * eps * vn.get(NormTag::W1_1), 1e-3);
    rep.add_check("|v-R|_{H^1} <= (eps/2)|v|_{H^1}", rep.get(NormTag::H1_semi),
                  0.5 * eps * vn.get(NormTag::H1_semi), 1e-3);
    rep.add_check("|v-R|_{W^{1,inf}} <= (eps/2)|v|_{W^{1,inf}}", rep.get(NormTag::W1_inf),
                  0.5 * eps * vn.get(NormTag::W1_inf), 1e-3);
    const SizeMetrics m = net.metrics();
    const int N = v.mesh.num_elements();
    long long psum = 0;
    for (int p : v.mesh.degrees)
        psum += p;
    rep.add_check("M_fi <= 2N+2", static_cast<double>(m.size_first),
                  static_cast<double>(2 * N + 2));
    rep.add_check("M_la <= 3N+1+2 sum p_i", static_cast<double>(m.size_last),
                  static_cast<double>(3 * N + 1 + 2 * psum));
    return rep;
}

int cmd_coeffs(int degree, const std::vector<double>& interval, const std::string& samples_path,
               const std::string& expr, const std::string& out_path) {
    const double a = interval[0], b = interval[1];
    const CCGrid grid = cc_grid(degree, a, b);
    std::vector<double> values;
    if (!samples_path.empty()) {
        std::ifstream in = open_input(samples_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line == "sample")
                continue;
            values.push_back(std::stod(line));
        }
        if (static_cast<int>(values.size()) != degree + 1) {
            std::cerr << "coeffs: expected " << degree + 1 << " samples, got " << values.size()
                      << "\n";
            return kExitUsage;
        }
    } else {
        const Target t = make_builtin_target(expr);
        for (double x : grid.points)
            values.push_back(t.value(x));
    }
    const ChebSeries series = cc_interpolate(values, grid);
    std::ostringstream oss;
    write_coeffs_csv(series, oss);
    if (out_path.empty())
        std::cout << oss.str();
    else
        write_file(out_path, oss.str());
    return 0;
}

int cmd_emulate(const std::string& mesh_path, const std::string& degrees_path,
                const std::string& values_path, const std::string& expr, double eps,
                const std::string& out_path, const std::string& report_path) {
    const Mesh mesh = load_mesh(mesh_path, degrees_path);
    const PiecewiseCheb v = load_spline(mesh, values_path, expr);
    const NeuralNetwork net = build_spline_emulator(v, eps);
    write_file(out_path, net.to_json());
    const ErrorReport rep = emulation_report(v, net, eps);
    if (!report_path.empty())
        write_file(report_path, rep.to_json(2));
    else
        std::cout << rep.to_json(2) << "\n";
    return rep.all_checks_passed() ? 0 : kExitBound;
}

int cmd_study_hp(double alpha, double sigma, double mu, double gevrey_delta, int n_min, int n_max,
                 double c_rate, const std::string& out_path, bool timings) {
    std::vector<GeometricMeshSpec> specs;
    for (int N = n_min; N <= n_max; ++N)
        specs.push_back({sigma, N, mu, gevrey_delta});
    const StudyResult res = run_hp_study(alpha, specs, c_rate);
    for (const std::string& w : res.warnings)
        std::cerr << "warning: " << w << "\n";
    std::ostringstream oss;
    write_study_csv(res.records, oss, timings);
    if (out_path.empty())
        std::cout << oss.str();
    else
        write_file(out_path, oss.str());
    if (res.records.size() < 2)
        return 0; // no fit on a single study point
    std::cout << "fit: slope=" << res.h1_fit.slope << " r2=" << res.h1_fit.r2
              << " size_fit_slope=" << res.h1_vs_size_fit.slope
              << " size_fit_r2=" << res.h1_vs_size_fit.r2 << "\n";
    const bool ok = res.h1_fit.slope < 0.0 && res.h1_fit.r2 >= 0.98;
    return ok ? 0 : kExitBound;
}

int cmd_study_p_version(const std::string& expr, int n_elems, int p_min, int p_max, int sbar,
                        double fixed_eps, const std::string& out_path, bool timings) {
    const Target u = make_builtin_target(expr);
    std::vector<int> ps;
    for (int p = p_min; p <= p_max; ++p)
        ps.push_back(p);
    const EpsRule rule = fixed_eps > 0.0 ? EpsRule::fixed(fixed_eps) : EpsRule::balanced();
    const StudyResult res = run_p_version_study(u, sbar, n_elems, ps, rule);
    std::ostringstream oss;
    write_study_csv(res.records, oss, timings);
    if (out_path.empty())
        std::cout << oss.str();
    else
        write_file(out_path, oss.str());
    std::cout << "fit: rate=" << -res.h1_fit.slope << " r2=" << res.h1_fit.r2 << "\n";
    return 0;
}

int cmd_study_free_knot(double alpha, double sigma, double mu, double gevrey_delta, int n_elems,
                        const std::string& mesh_path, const std::string& degrees_path,
                        const std::string& values_path, std::vector<double> eps_list,
                        const std::string& out_path, bool timings) {
    std::optional<PiecewiseCheb> v;
    std::optional<Target> target;
    if (!mesh_path.empty()) {
        const Mesh mesh = load_mesh(mesh_path, degrees_path);
        v.emplace(load_spline(mesh, values_path, ""));
    } else {
        // Reuse the hp interpolant of x^alpha - x as the supplied spline.
        Target u;
        u.value = [alpha](double x) { return std::pow(x, alpha) - x; };
        u.deriv = [alpha](double x) { return alpha * std::pow(x, alpha - 1.0) - 1.0; };
        u.singular_alpha = alpha;
        u.singular_coeff = 1.0;
        const Mesh mesh = geometric_mesh({sigma, n_elems, mu, gevrey_delta});
        v.emplace(sample_to_spline(u.value, mesh));
        target = u;
        if (eps_list.empty()) {
            const double c = alpha * std::log(1.0 / sigma);
            eps_list.push_back(std::clamp(std::exp(-c * n_elems), 1e-14, 0.99));
        }
    }
    if (eps_list.empty())
        eps_list.push_back(1e-3);
    const StudyResult res = run_free_knot_study(*v, eps_list, target);
    std::ostringstream oss;
    write_study_csv(res.records, oss, timings);
    if (out_path.empty())
        std::cout << oss.str();
    else
        write_file(out_path, oss.str());
    for (const BoundCheck& c : res.checks)
        std::cout << (c.satisfied ? "ok " : "FAIL ") << c.name << " (" << c.lhs << " vs " << c.rhs
                  << ")\n";
    for (const BoundCheck& c : res.checks)
        if (!c.satisfied)
            return kExitBound;
    return 0;
}

int cmd_roundtrip(const std::string& net_path, const std::string& mesh_path,
                  const std::string& degrees_path, double eps, const std::string& out_path) {
    std::ifstream nf = open_input(net_path);
    std::stringstream buf;
    buf << nf.rdbuf();
    const NeuralNetwork net_in = NeuralNetwork::from_json(buf.str());
    const Mesh mesh = load_mesh(mesh_path, degrees_path);

    // (i) sample the network at the elementwise CC points,
    // (ii) extract coefficients with the inverse FFT,
    // (iii) re-emulate at eps.
    std::vector<ChebSeries> elems;
    std::vector<std::vector<double>> cc_values(mesh.num_elements());
    for (int i = 0; i < mesh.num_elements(); ++i) {
        const CCGrid grid = cc_grid(mesh.degrees[i], mesh.nodes[i], mesh.nodes[i + 1]);
        for (double x : grid.points)
            cc_values[i].push_back(net_in.realize({x})[0]);
        elems.push_back(cc_interpolate(cc_values[i], grid));
    }
    const PiecewiseCheb extracted(mesh, std::move(elems));
    const NeuralNetwork net_out = build_spline_emulator(extracted, eps);

    // Coefficients read off the input network's output layer, where present.
    ErrorReport rep;
    const std::vector<CoeffSlot> layout = spline_output_layout(mesh);
    double coeff_gap = 0.0;
    bool layout_matches = !layout.empty();
    const Layer& out_layer = net_in.layers().back();
    std::vector<double> row;
    if (out_layer.rows() == 1) {
        row.assign(out_layer.cols(), 0.0);
        for (const Triplet& t : out_layer.triplets())
            row[t.col] = t.value;
    }
    const std::vector<std::vector<double>> what = output_weights_via_ifft(cc_values, mesh);
    for (const CoeffSlot& slot : layout) {
        if (slot.ell < 2)
            continue;
        if (row.empty() || slot.col_plus >= static_cast<int>(row.size())) {
            layout_matches = false;
            break;
        }
        coeff_gap = std::max(coeff_gap,
                             std::abs(row[slot.col_plus] - what[slot.element][slot.ell]));
    }
    if (layout_matches)
        rep.extras.emplace_back("output_layer_coeff_gap", coeff_gap);

    double linf = 0.0;
    for (int i = 0; i < mesh.num_elements(); ++i) {
        for (int g = 0; g <= 512; ++g) {
            const double x = mesh.nodes[i] + mesh.element_size(i) * g / 512;
            linf = std::max(linf, std::abs(net_in.realize({x})[0] - net_out.realize({x})[0]));
        }
    }
    rep.extras.emplace_back("reemulation_Linf_gap", linf);
    rep.extras.emplace_back("eps", eps);
    std::ostringstream oss;
    oss << rep.to_json(2) << "\n";
    if (out_path.empty())
        std::cout << oss.str();
    else
        write_file(out_path, oss.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev-to-ReLU network compiler and study harness"};
    app.require_subcommand(1);

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "Chebyshev coefficients from samples or a builtin");
    int degree = 8;
    std::vector<double> interval = {-1.0, 1.0};
    std::string samples_path, expr, out_path;
    coeffs->add_option("--degree", degree, "interpolation degree p")->required();
    coeffs->add_option("--interval", interval, "interval endpoints a b")->expected(2);
    coeffs->add_option("--samples", samples_path, "CSV with p+1 sample values at the CC points");
    coeffs->add_option("--expr", expr, "builtin expression name");
    coeffs->add_option("--out", out_path, "output CSV path (stdout if omitted)");

    // emulate
    auto* emulate = app.add_subcommand("emulate", "compile a spline into a ReLU network");
    std::string mesh_path, degrees_path, values_path, em_expr, net_out, report_out;
    double eps = 1e-3;
    emulate->add_option("--mesh", mesh_path, "mesh nodes CSV")->required();
    emulate->add_option("--degrees", degrees_path, "element degrees CSV")->required();
    emulate->add_option("--values", values_path, "spline values CSV (element_index,cc_point,value)");
    emulate->add_option("--expr", em_expr, "builtin expression to sample instead of --values");
    emulate->add_option("--eps", eps, "emulation tolerance in (0,1)")->required();
    emulate->add_option("--out", net_out, "network JSON output path")->required();
    emulate->add_option("--report", report_out, "error report JSON path (stdout if omitted)");

    // study
    auto* study = app.add_subcommand("study", "convergence studies");
    study->require_subcommand(1);
    bool timings = false;
    study->add_flag("--timings", timings, "write real wall times (breaks bit-identical reruns)");
    std::string seed = "none";
    study->add_option("--seed", seed, "studies are deterministic; only 'none' is accepted");

    auto* hp = study->add_subcommand("hp", "geometric-mesh hp study for x^alpha - x");
    double alpha = 0.6, sigma = 0.5, mu = 1.0, gevrey_delta = 1.0, c_rate = 0.0;
    int n_min = 3, n_max = 10;
    std::string hp_out;
    hp->add_option("--alpha", alpha, "singularity exponent in (0,1)")->required();
    hp->add_option("--sigma", sigma, "mesh grading ratio in (0,1)");
    hp->add_option("--mu", mu, "degree slope");
    hp->add_option("--gevrey-delta", gevrey_delta, "Gevrey exponent >= 1");
    hp->add_option("--Nmin", n_min, "smallest element count");
    hp->add_option("--Nmax", n_max, "largest element count")->required();
    hp->add_option("--c-rate", c_rate, "override c in eps = exp(-cN)");
    hp->add_option("--out", hp_out, "study CSV path (stdout if omitted)");

    auto* pv = study->add_subcommand("p-version", "uniform-mesh p-version study");
    std::string pv_expr = "sin2pix", pv_out;
    int pv_n = 4, p_min = 2, p_max = 12, sbar = 6;
    double pv_eps = 0.0;
    pv->add_option("--expr", pv_expr, "builtin target");
    pv->add_option("--N", pv_n, "element count");
    pv->add_option("--pmin", p_min, "smallest degree");
    pv->add_option("--pmax", p_max, "largest degree")->required();
    pv->add_option("--smoothness", sbar, "declared Sobolev smoothness sbar");
    pv->add_option("--eps", pv_eps, "fixed emulation tolerance (default: balanced rule)");
    pv->add_option("--out", pv_out, "study CSV path (stdout if omitted)");

    auto* fk = study->add_subcommand("free-knot", "emulate a supplied or hp-reused spline");
    double fk_alpha = 0.6, fk_sigma = 0.5, fk_mu = 1.0, fk_delta = 1.0;
    int fk_n = 5;
    std::vector<double> fk_eps;
    std::string fk_mesh, fk_degrees, fk_values, fk_out;
    fk->add_option("--alpha", fk_alpha, "hp target exponent (when no --mesh)");
    fk->add_option("--sigma", fk_sigma, "hp grading ratio");
    fk->add_option("--mu", fk_mu, "hp degree slope");
    fk->add_option("--gevrey-delta", fk_delta, "hp Gevrey exponent");
    fk->add_option("--N", fk_n, "hp element count");
    fk->add_option("--mesh", fk_mesh, "user mesh nodes CSV");
    fk->add_option("--degrees", fk_degrees, "user degrees CSV");
    fk->add_option("--values", fk_values, "user spline values CSV");
    fk->add_option("--eps", fk_eps, "emulation tolerances");
    fk->add_option("--out", fk_out, "study CSV path (stdout if omitted)");

    // roundtrip
    auto* rt = app.add_subcommand("roundtrip", "network -> coefficients -> network");
    std::string rt_net, rt_mesh, rt_degrees, rt_out;
    double rt_eps = 1e-3;
    rt->add_option("--net", rt_net, "network JSON")->required();
    rt->add_option("--mesh", rt_mesh, "mesh nodes CSV")->required();
    rt->add_option("--degrees", rt_degrees, "element degrees CSV")->required();
    rt->add_option("--eps", rt_eps, "re-emulation tolerance");
    rt->add_option("--out", rt_out, "report JSON path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (seed != "none") {
            std::cerr << "study: --seed must be 'none' (the pipeline has no RNG)\n";
            return kExitUsage;
        }
        if (coeffs->parsed()) {
            if (samples_path.empty() == expr.empty()) {
                std::cerr << "coeffs: exactly one of --samples or --expr is required\n";
                return kExitUsage;
            }
            return cmd_coeffs(degree, interval, samples_path, expr, out_path);
        }
        if (emulate->parsed()) {
            if (values_path.empty() == em_expr.empty()) {
                std::cerr << "emulate: exactly one of --values or --expr is required\n";
                return kExitUsage;
            }
            return cmd_emulate(mesh_path, degrees_path, values_path, em_expr, eps, net_out,
                               report_out);
        }
        if (study->parsed()) {
            if (hp->parsed())
                return cmd_study_hp(alpha, sigma, mu, gevrey_delta, n_min, n_max, c_rate, hp_out,
                                    timings);
            if (pv->parsed())
                return cmd_study_p_version(pv_expr, pv_n, p_min, p_max, sbar, pv_eps, pv_out,
                                           timings);
            if (fk->parsed())
                return cmd_study_free_knot(fk_alpha, fk_sigma, fk_mu, fk_delta, fk_n, fk_mesh,
                                           fk_degrees, fk_values, fk_eps, fk_out, timings);
        }
        if (rt->parsed())
            return cmd_roundtrip(rt_net, rt_mesh, rt_degrees, rt_eps, rt_out);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.get_name() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
