#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cheb2relu/errors.hpp"

namespace cheb2relu {

/// Polynomial in the T_k basis on the interval (a,b):
///   v(x) = sum_k coeffs[k] T_k(F^{-1}(x)),  F: [-1,1] -> [a,b] affine.
struct ChebSeries {
    std::vector<double> coeffs; ///< v_0 .. v_p, trailing zeros permitted
    double a = -1.0;
    double b = 1.0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Clenshaw backward recurrence. Evaluation outside (a,b) is permitted.
double cheb_eval(const ChebSeries& series, double x);

/// d/dx of the series (via the derivative coefficient recurrence).
double cheb_eval_derivative(const ChebSeries& series, double x);

/// Coefficients of the derivative as a series on the same interval.
ChebSeries cheb_derivative(const ChebSeries& series);

/// Clenshaw-Curtis grid: the p+1 extrema of T_p mapped to (a,b), decreasing,
/// points[0] = b and points[p] = a exactly.
struct CCGrid {
    int p = 1;
    double a = -1.0;
    double b = 1.0;
    std::vector<double> points;
};

CCGrid cc_grid(int p, double a, double b);

/// Chebyshev coefficients of the interpolant of the given nodal values,
/// computed with a length-2p inverse FFT of the even extension.
ChebSeries cc_interpolate(const std::vector<double>& values, const CCGrid& grid);

/// Numerically computed Lebesgue constant of the degree-p CC nodes
/// (max over a 10001-point grid of sum_j |l_j(x)|, barycentric form).
double lebesgue_constant(int p);

/// sum_{l>=2} |v_l|, the coefficient-stability error budget.
double coeff_tail_sum(const ChebSeries& series);

/// Sup-norm estimate on an n-point CC-distributed grid (lower bound with
/// negligible slack for degrees well below n).
double grid_sup_norm(const ChebSeries& series, int n = 4097);

/// CSV round trip. Header line "cheb_coeffs,<a>,<b>", one coefficient per line.
void write_coeffs_csv(const ChebSeries& series, std::ostream& out);
ChebSeries read_coeffs_csv(std::istream& in);

} // namespace cheb2relu
