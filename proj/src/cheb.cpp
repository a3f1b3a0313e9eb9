#include "cheb2relu/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fftw3.h>

namespace cheb2relu {

namespace {

double map_to_reference(const ChebSeries& s, double x) {
    return (2.0 * x - (s.a + s.b)) / (s.b - s.a);
}

// Re(IFFT(f)) with 1/n normalization. FFTW planning is not thread-safe.
std::vector<double> ifft_real(const std::vector<double>& f) {
    static std::mutex fftw_mutex;
    std::lock_guard<std::mutex> lock(fftw_mutex);
    const int n = static_cast<int>(f.size());
    std::vector<std::complex<double>> in(n), out(n);
    for (int i = 0; i < n; ++i)
        in[i] = f[i];
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> re(n);
    for (int i = 0; i < n; ++i)
        re[i] = out[i].real() / n;
    return re;
}

} // namespace

double cheb_eval(const ChebSeries& series, double x) {
    if (series.coeffs.empty())
        throw StructuralError("empty coefficient vector");
    const double t = map_to_reference(series, x);
    double bk1 = 0.0, bk2 = 0.0;
    for (int k = series.degree(); k >= 1; --k) {
        const double bk = 2.0 * t * bk1 - bk2 + series.coeffs[k];
        bk2 = bk1;
        bk1 = bk;
    }
    return t * bk1 - bk2 + series.coeffs[0];
}

ChebSeries cheb_derivative(const ChebSeries& series) {
    const int p = series.degree();
    if (p <= 0)
        return ChebSeries{{0.0}, series.a, series.b};
    std::vector<double> d(p, 0.0);
    for (int k = p; k >= 1; --k)
        d[k - 1] = (k + 1 < p ? d[k + 1] : 0.0) + 2.0 * k * series.coeffs[k];
    d[0] *= 0.5;
    const double scale = 2.0 / (series.b - series.a);
    for (double& v : d)
        v *= scale;
    return ChebSeries{std::move(d), series.a, series.b};
}

double cheb_eval_derivative(const ChebSeries& series, double x) {
    return cheb_eval(cheb_derivative(series), x);
}

CCGrid cc_grid(int p, double a, double b) {
    if (p < 1)
        throw ParameterError("cc_grid: degree must be >= 1");
    if (!(a < b))
        throw ParameterError("cc_grid: need a < b");
    std::vector<double> ref(p + 1);
    // Symmetric evaluation keeps the grid exactly antisymmetric and the
    // midpoint (even p) exactly zero.
    for (int j = 0; j <= p / 2; ++j) {
        const double c = std::cos(j * std::numbers::pi / p);
        ref[j] = c;
        ref[p - j] = -c;
    }
    ref[0] = 1.0;
    ref[p] = -1.0;
    if (p % 2 == 0)
        ref[p / 2] = 0.0;
    std::vector<double> pts(p + 1);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j <= p; ++j)
        pts[j] = mid + half * ref[j];
    pts[0] = b;
    pts[p] = a;
    return CCGrid{p, a, b, std::move(pts)};
}

ChebSeries cc_interpolate(const std::vector<double>& values, const CCGrid& grid) {
    const int p = grid.p;
    if (static_cast<int>(values.size()) != p + 1)
        throw StructuralError("cc_interpolate: expected p+1 values");
    for (double v : values)
        if (!std::isfinite(v))
            throw DataError("cc_interpolate: non-finite sample");
    // Even extension v(x_j) = v(x_{2p-j}).
    std::vector<double> ext(2 * p);
    for (int j = 0; j < 2 * p; ++j)
        ext[j] = values[j <= p ? j : 2 * p - j];
    const std::vector<double> c = ifft_real(ext);
    std::vector<double> coeffs(p + 1);
    for (int k = 0; k <= p; ++k)
        coeffs[k] = (k >= 1 && k <= p - 1 ? 2.0 : 1.0) * c[k];
    return ChebSeries{std::move(coeffs), grid.a, grid.b};
}

double lebesgue_constant(int p) {
    if (p < 1)
        throw ParameterError("lebesgue_constant: degree must be >= 1");
    const CCGrid grid = cc_grid(p, -1.0, 1.0);
    std::vector<double> w(p + 1);
    for (int j = 0; j <= p; ++j)
        w[j] = (j % 2 == 0 ? 1.0 : -1.0) * (j == 0 || j == p ? 0.5 : 1.0);
    const int n = 10001;
    double lmax = 1.0;
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * i / (n - 1);
        double num = 0.0, den = 0.0;
        bool at_node = false;
        for (int j = 0; j <= p; ++j) {
            const double d = x - grid.points[j];
            if (std::abs(d) < 1e-14) {
                at_node = true;
                break;
            }
            num += std::abs(w[j] / d);
            den += w[j] / d;
        }
        if (!at_node)
            lmax = std::max(lmax, num / std::abs(den));
    }
    return lmax;
}

double coeff_tail_sum(const ChebSeries& series) {
    double s = 0.0;
    for (int l = 2; l <= series.degree(); ++l)
        s += std::abs(series.coeffs[l]);
    return s;
}

double grid_sup_norm(const ChebSeries& series, int n) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) {
        const double t = std::cos(j * std::numbers::pi / (n - 1));
        const double x = 0.5 * (series.a + series.b) + 0.5 * (series.b - series.a) * t;
        m = std::max(m, std::abs(cheb_eval(series, x)));
    }
    return m;
}

void write_coeffs_csv(const ChebSeries& series, std::ostream& out) {
    std::ostringstream oss;
    oss.precision(17);
    oss << "cheb_coeffs," << series.a << "," << series.b << "\n";
    for (double c : series.coeffs)
        oss << c << "\n";
    out << oss.str();
}

ChebSeries read_coeffs_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw DataError("coefficient CSV: empty file");
    std::istringstream hs(header);
    std::string tag, sa, sb;
    if (!std::getline(hs, tag, ',') || tag != "cheb_coeffs" || !std::getline(hs, sa, ',') ||
        !std::getline(hs, sb, ','))
        throw DataError("coefficient CSV: expected header cheb_coeffs,<a>,<b>");
    ChebSeries s;
    try {
        s.a = std::stod(sa);
        s.b = std::stod(sb);
    } catch (const std::exception&) {
        throw DataError("coefficient CSV: bad interval endpoints");
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            s.coeffs.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw DataError("coefficient CSV: bad value '" + line + "'");
        }
    }
    if (s.coeffs.empty())
        throw DataError("coefficient CSV: no coefficients");
    if (!(s.a < s.b))
        throw DataError("coefficient CSV: need a < b");
    return s;
}

} // namespace cheb2relu
