#include "cheb2relu/targets.hpp"

#include <cmath>
#include <numbers>

namespace cheb2relu {

namespace {

double cheb_t(int k, double x) {
    if (k == 0)
        return 1.0;
    double t0 = 1.0, t1 = x;
    for (int i = 2; i <= k; ++i) {
        const double t = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t;
    }
    return t1;
}

double cheb_t_derivative(int k, double x) {
    // T'_k = k U_{k-1} via the U recurrence.
    if (k == 0)
        return 0.0;
    double u0 = 1.0, u1 = 2.0 * x;
    if (k == 1)
        return 1.0;
    for (int i = 2; i < k; ++i) {
        const double u = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u;
    }
    return k * u1;
}

bool parse_suffix(const std::string& name, const std::string& prefix, double& out) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
        return false;
    try {
        std::size_t used = 0;
        out = std::stod(name.substr(prefix.size()), &used);
        return used == name.size() - prefix.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

bool is_builtin_target(const std::string& name) {
    double dummy;
    return name == "sin2pix" || name == "runge" || name == "absx" ||
           parse_suffix(name, "T", dummy) || parse_suffix(name, "xpow", dummy);
}

Target make_builtin_target(const std::string& name) {
    Target t;
    if (name == "sin2pix") {
        t.value = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
        t.deriv = [](double x) {
            return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x);
        };
        return t;
    }
    if (name == "runge") {
        t.value = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
        t.deriv = [](double x) {
            const double d = 1.0 + 25.0 * x * x;
            return -50.0 * x / (d * d);
        };
        return t;
    }
    if (name == "absx") {
        t.value = [](double x) { return std::abs(x); };
        t.deriv = [](double x) { return x >= 0.0 ? 1.0 : -1.0; };
        return t;
    }
    double param = 0.0;
    if (parse_suffix(name, "T", param)) {
        const int k = static_cast<int>(param);
        if (k < 0 || param != k)
            throw ParameterError("builtin T<k>: k must be a nonnegative integer");
        t.value = [k](double x) { return cheb_t(k, x); };
        t.deriv = [k](double x) { return cheb_t_derivative(k, x); };
        return t;
    }
    if (parse_suffix(name, "xpow", param)) {
        if (!(param > 0.0))
            throw ParameterError("builtin xpow<alpha>: alpha must be positive");
        const double a = param;
        t.value = [a](double x) { return std::pow(x, a); };
        t.deriv = [a](double x) { return a * std::pow(x, a - 1.0); };
        if (a < 1.0) {
            t.singular_alpha = a;
            t.singular_coeff = 1.0;
        }
        return t;
    }
    throw ParameterError("unknown builtin expression '" + name +
                         "' (expected T<k>, sin2pix, runge, xpow<alpha> or absx)");
}

} // namespace cheb2relu
