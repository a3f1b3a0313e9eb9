#include "cheb2relu/fem_studies.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cheb2relu/parallel.hpp"

namespace cheb2relu {

Mesh geometric_mesh(const GeometricMeshSpec& spec) {
    if (!(spec.sigma > 0.0 && spec.sigma < 1.0))
        throw ParameterError("geometric mesh: sigma must lie in (0,1)");
    if (spec.N < 1)
        throw ParameterError("geometric mesh: N must be >= 1");
    if (!(spec.mu >= 1.0))
        throw ParameterError("geometric mesh: mu must be >= 1");
    if (!(spec.delta_gevrey >= 1.0))
        throw ParameterError("geometric mesh: delta must be >= 1");
    Mesh m;
    m.nodes.resize(spec.N + 1);
    m.nodes[spec.N] = 1.0;
    // Built right-to-left so that x_i = sigma * x_{i+1} holds exactly.
    for (int i = spec.N - 1; i >= 1; --i)
        m.nodes[i] = spec.sigma * m.nodes[i + 1];
    m.nodes[0] = 0.0;
    m.degrees.resize(spec.N);
    m.degrees[0] = 1;
    for (int i = 2; i <= spec.N; ++i) {
        const double p = spec.mu * std::pow(static_cast<double>(i), spec.delta_gevrey);
        m.degrees[i - 1] = std::max(1, static_cast<int>(std::floor(p + 1e-9)));
    }
    m.validate();
    return m;
}

double mu0_guard(double sigma, double beta, double delta, double d_u) {
    const double lambda = 1.0 / sigma - 1.0;
    return std::max(1.0, d_u * lambda * std::exp(1.0 - delta) / (2.0 * std::pow(sigma, 1.0 - beta)));
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw StructuralError("fit_line: need at least two points");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = f.slope * xs[i] + f.intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

StudyRecord emulate_and_measure(const PiecewiseCheb& v, const Target& u, double eps,
                                int record_label) {
    const auto t0 = std::chrono::steady_clock::now();
    const NeuralNetwork net = build_spline_emulator(v, eps);
    const std::vector<NormTag> tags = {NormTag::L2, NormTag::Linf, NormTag::H1_semi};
    const ErrorReport rep = u.singular_alpha > 0.0
                                ? singular_diff_norms(u, net, v.mesh, tags)
                                : diff_norms(u, net, v.mesh, tags);
    StudyRecord r;
    r.n_or_p = record_label;
    r.dof = v.mesh.dof();
    const SizeMetrics m = net.metrics();
    r.nn_size = m.size;
    r.nn_depth = m.depth;
    r.error_L2 = rep.get(NormTag::L2);
    r.error_Linf = rep.get(NormTag::Linf);
    const double semi = rep.get(NormTag::H1_semi);
    r.error_H1 = std::sqrt(r.error_L2 * r.error_L2 + semi * semi);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

double balanced_eps(const Target& u, const PiecewiseCheb& v) {
    // Half of the relative approximation error, so emulation never dominates.
    const ErrorReport approx = spline_target_norms(u, v);
    const double e_h1 = std::hypot(approx.get(NormTag::L2), approx.get(NormTag::H1_semi));
    Target zero;
    zero.value = [](double) { return 0.0; };
    zero.deriv = [](double) { return 0.0; };
    zero.singular_alpha = u.singular_alpha;
    zero.singular_coeff = u.singular_coeff;
    const ErrorReport vnorm = spline_target_norms(zero, v);
    const double v_h1 = std::max(std::hypot(vnorm.get(NormTag::L2), vnorm.get(NormTag::H1_semi)), 1e-300);
    return std::clamp(0.5 * e_h1 / v_h1, 1e-12, 0.45);
}

} // namespace

StudyResult run_p_version_study(const Target& u, int sbar, int n_elems,
                                const std::vector<int>& p_list, const EpsRule& eps_rule) {
    if (p_list.empty())
        throw ParameterError("p-version study: empty degree list");
    StudyResult result;
    result.records.resize(p_list.size());
    parallel_for(p_list.size(), [&](std::size_t idx) {
        const int p = p_list[idx];
        const Mesh mesh = uniform_mesh(n_elems, 0.0, 1.0, p);
        const PiecewiseCheb v = sample_to_spline(u.value, mesh);
        const double eps =
            eps_rule.kind == EpsRule::Kind::Fixed ? eps_rule.value : balanced_eps(u, v);
        result.records[idx] = emulate_and_measure(v, u, eps, p);
    });
    // Algebraic rate over the last (up to) four points: log e vs log p.
    std::vector<double> xs, ys;
    const std::size_t tail = std::min<std::size_t>(4, result.records.size());
    for (std::size_t i = result.records.size() - tail; i < result.records.size(); ++i) {
        xs.push_back(std::log(static_cast<double>(result.records[i].n_or_p)));
        ys.push_back(std::log(std::max(result.records[i].error_H1, 1e-300)));
    }
    if (xs.size() >= 2) {
        result.h1_fit = fit_line(xs, ys);
        const double rate = -result.h1_fit.slope;
        result.checks.push_back({"fitted algebraic rate >= sbar - 0.25", rate,
                                 static_cast<double>(sbar) - 0.25,
                                 rate >= static_cast<double>(sbar) - 0.25});
    }
    return result;
}

StudyResult run_hp_study(double alpha, const std::vector<GeometricMeshSpec>& specs, double c_rate,
                         double d_u) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("hp study: alpha must lie in (0,1)");
    Target u;
    u.value = [alpha](double x) { return std::pow(x, alpha) - x; };
    u.deriv = [alpha](double x) { return alpha * std::pow(x, alpha - 1.0) - 1.0; };
    u.singular_alpha = alpha;
    u.singular_coeff = 1.0;
    return run_hp_study(u, alpha, specs, c_rate, d_u);
}

StudyResult run_hp_study(const Target& u, double alpha, const std::vector<GeometricMeshSpec>& specs,
                         double c_rate, double d_u) {
    if (specs.empty())
        throw ParameterError("hp study: empty spec list");
    StudyResult result;
    result.records.resize(specs.size());
    const double beta = 1.0 - alpha;
    for (const GeometricMeshSpec& spec : specs) {
        const double mu0 = mu0_guard(spec.sigma, beta, spec.delta_gevrey, d_u);
        if (spec.mu <= mu0) {
            result.warnings.push_back("mu = " + std::to_string(spec.mu) + " <= mu0 = " +
                                      std::to_string(mu0) + " for N = " + std::to_string(spec.N) +
                                      "; degree growth may be too slow");
            break; // one warning is enough, the guard depends only on (sigma, delta)
        }
    }
    parallel_for(specs.size(), [&](std::size_t idx) {
        const GeometricMeshSpec& spec = specs[idx];
        const double c = c_rate > 0.0 ? c_rate : (1.0 - beta) * std::log(1.0 / spec.sigma);
        const double eps = std::clamp(std::exp(-c * spec.N), 1e-14, 0.99);
        const Mesh mesh = geometric_mesh(spec);
        const PiecewiseCheb v = sample_to_spline(u.value, mesh);
        result.records[idx] = emulate_and_measure(v, u, eps, spec.N);
    });
    std::vector<double> ns, logs, m_pow;
    const double expo = 1.0 / (2.0 + specs.front().delta_gevrey);
    for (const StudyRecord& r : result.records) {
        ns.push_back(static_cast<double>(r.n_or_p));
        logs.push_back(std::log(std::max(r.error_H1, 1e-300)));
        m_pow.push_back(std::pow(static_cast<double>(r.nn_size), expo));
    }
    if (ns.size() >= 2) {
        result.h1_fit = fit_line(ns, logs);
        result.h1_vs_size_fit = fit_line(m_pow, logs);
        result.checks.push_back({"hp fit slope < 0", result.h1_fit.slope, 0.0,
                                 result.h1_fit.slope < 0.0});
        result.checks.push_back({"hp fit R^2 >= 0.98", 0.98, result.h1_fit.r2,
                                 result.h1_fit.r2 >= 0.98});
    }
    return result;
}

StudyResult run_free_knot_study(const PiecewiseCheb& v, const std::vector<double>& eps_list,
                                const std::optional<Target>& target) {
    if (eps_list.empty())
        throw ParameterError("free-knot study: empty eps list");
    const Target u = target ? *target : target_from_spline(v);
    StudyResult result;
    result.records.resize(eps_list.size());
    parallel_for(eps_list.size(), [&](std::size_t idx) {
        result.records[idx] = emulate_and_measure(v, u, eps_list[idx], v.mesh.num_elements());
    });
    // M_fi and M_la are structural: one representative build suffices.
    const int N = v.mesh.num_elements();
    const int p = v.mesh.p_max();
    const SizeMetrics m = build_spline_emulator(v, eps_list.front()).metrics();
    result.checks.push_back({"M_fi <= 2N+2", static_cast<double>(m.size_first),
                             static_cast<double>(2 * N + 2), m.size_first <= 2 * N + 2});
    result.checks.push_back({"M_la <= N(2p+3)+1", static_cast<double>(m.size_last),
                             static_cast<double>(N * (2 * p + 3) + 1),
                             m.size_last <= static_cast<long long>(N) * (2 * p + 3) + 1});
    return result;
}

void write_study_csv(const std::vector<StudyRecord>& records, std::ostream& out,
                     bool include_timings) {
    std::ostringstream oss;
    oss.precision(12);
    oss << "N,dof,nn_size,nn_depth,error_L2,error_H1,error_Linf,wall_time_s\n";
    for (const StudyRecord& r : records) {
        oss << r.n_or_p << "," << r.dof << "," << r.nn_size << "," << r.nn_depth << ","
            << r.error_L2 << "," << r.error_H1 << "," << r.error_Linf << ","
            << (include_timings ? r.wall_time_s : 0.0) << "\n";
    }
    out << oss.str();
}

} // namespace cheb2relu
