#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "cheb2relu/mesh.hpp"
#include "cheb2relu/sobolev.hpp"
#include "cheb2relu/spline_emulator.hpp"

namespace cheb2relu {

/// Geometric mesh on (0,1) graded toward 0: nodes sigma^{N-i}, degrees
/// p_1 = 1, p_i = floor(mu i^delta).
struct GeometricMeshSpec {
    double sigma = 0.5;
    int N = 1;
    double mu = 1.0;
    double delta_gevrey = 1.0;
};

Mesh geometric_mesh(const GeometricMeshSpec& spec);

/// Degree-slope threshold mu_0(sigma, beta, delta, d_u) from the hp theory.
double mu0_guard(double sigma, double beta, double delta, double d_u);

struct StudyRecord {
    int n_or_p = 0;
    long long dof = 0;
    long long nn_size = 0;
    int nn_depth = 0;
    double error_L2 = 0.0;
    double error_H1 = 0.0; ///< full H^1 norm of the difference
    double error_Linf = 0.0;
    double wall_time_s = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct StudyResult {
    std::vector<StudyRecord> records;
    LineFit h1_fit;          ///< hp: log(e_H1) vs N; p-version: log(e) vs log(p)
    LineFit h1_vs_size_fit;  ///< hp only: log(e_H1) vs M^{1/(2+delta)}
    std::vector<BoundCheck> checks;
    std::vector<std::string> warnings;
};

/// How the emulation tolerance is chosen per study point.
struct EpsRule {
    enum class Kind { Balanced, Fixed } kind = Kind::Balanced;
    double value = 0.0; ///< the fixed eps when kind == Fixed
    static EpsRule balanced() { return {Kind::Balanced, 0.0}; }
    static EpsRule fixed(double eps) { return {Kind::Fixed, eps}; }
};

/// One study point: emulate the spline at eps and measure target errors.
StudyRecord emulate_and_measure(const PiecewiseCheb& v, const Target& u, double eps,
                                int record_label);

/// p-version convergence on a uniform mesh of n_elems elements of (0,1).
StudyResult run_p_version_study(const Target& u, int sbar, int n_elems,
                                const std::vector<int>& p_list,
                                const EpsRule& eps_rule = EpsRule::balanced());

/// hp convergence for u(x) = x^alpha - x on geometric meshes, eps = exp(-cN)
/// with c = (1-beta) log(1/sigma), beta = 1-alpha, unless overridden.
StudyResult run_hp_study(double alpha, const std::vector<GeometricMeshSpec>& specs,
                         double c_rate = 0.0, double d_u = 1.0);
StudyResult run_hp_study(const Target& u, double alpha,
                         const std::vector<GeometricMeshSpec>& specs, double c_rate = 0.0,
                         double d_u = 1.0);

/// Emulates a supplied spline at each eps; errors against `target` when
/// given, else against the spline itself.
StudyResult run_free_knot_study(const PiecewiseCheb& v, const std::vector<double>& eps_list,
                                const std::optional<Target>& target = std::nullopt);

/// CSV with header N,dof,nn_size,nn_depth,error_L2,error_H1,error_Linf,wall_time_s.
/// Timings are zeroed unless include_timings is set (bit-identical reruns).
void write_study_csv(const std::vector<StudyRecord>& records, std::ostream& out,
                     bool include_timings = false);

} // namespace cheb2relu
