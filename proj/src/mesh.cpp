#include "cheb2relu/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace cheb2relu {

double Mesh::h_max() const {
    double h = 0.0;
    for (int i = 0; i < num_elements(); ++i)
        h = std::max(h, element_size(i));
    return h;
}

int Mesh::p_max() const { return *std::max_element(degrees.begin(), degrees.end()); }

long long Mesh::dof() const {
    long long d = 1;
    for (int p : degrees)
        d += p;
    return d;
}

void Mesh::validate() const {
    if (degrees.empty() || nodes.size() != degrees.size() + 1)
        throw StructuralError("mesh: need N+1 nodes for N degrees");
    for (double x : nodes)
        if (!std::isfinite(x))
            throw DataError("mesh: non-finite node");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i - 1] < nodes[i]))
            throw StructuralError("mesh: nodes must be strictly increasing");
    for (int p : degrees)
        if (p < 1)
            throw StructuralError("mesh: degrees must be >= 1");
}

Mesh uniform_mesh(int n_elements, double a, double b, int degree) {
    if (n_elements < 1)
        throw ParameterError("uniform_mesh: need at least one element");
    if (!(a < b))
        throw ParameterError("uniform_mesh: need a < b");
    Mesh m;
    m.nodes.resize(n_elements + 1);
    for (int i = 0; i <= n_elements; ++i)
        m.nodes[i] = a + (b - a) * i / n_elements;
    m.nodes[0] = a;
    m.nodes[n_elements] = b;
    m.degrees.assign(n_elements, degree);
    m.validate();
    return m;
}

PiecewiseCheb::PiecewiseCheb(Mesh mesh_in, std::vector<ChebSeries> elements_in)
    : mesh(std::move(mesh_in)), elements(std::move(elements_in)) {
    mesh.validate();
    if (static_cast<int>(elements.size()) != mesh.num_elements())
        throw StructuralError("spline: one series per element required");
    for (int i = 0; i < mesh.num_elements(); ++i) {
        const ChebSeries& s = elements[i];
        const double h = mesh.element_size(i);
        if (std::abs(s.a - mesh.nodes[i]) > 1e-12 * std::max(1.0, std::abs(mesh.nodes[i])) ||
            std::abs(s.b - mesh.nodes[i + 1]) > 1e-12 * std::max(1.0, std::abs(mesh.nodes[i + 1])))
            throw StructuralError("spline: element interval mismatch");
        if (s.degree() > mesh.degrees[i])
            throw StructuralError("spline: element degree exceeds mesh degree");
        (void)h;
    }
    for (int i = 0; i + 1 < mesh.num_elements(); ++i) {
        const double left = cheb_eval(elements[i], mesh.nodes[i + 1]);
        const double right = cheb_eval(elements[i + 1], mesh.nodes[i + 1]);
        const double scale = std::max({1.0, std::abs(left), std::abs(right)});
        if (std::abs(left - right) > 1e-10 * scale)
            throw DataError("spline: discontinuity at interior node " + std::to_string(i + 1));
    }
}

int PiecewiseCheb::element_of(double x) const {
    const auto& xs = mesh.nodes;
    if (x <= xs.front())
        return 0;
    if (x >= xs.back())
        return mesh.num_elements() - 1;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    return static_cast<int>(it - xs.begin()) - 1;
}

double PiecewiseCheb::eval(double x) const { return cheb_eval(elements[element_of(x)], x); }

double PiecewiseCheb::eval_derivative(double x) const {
    return cheb_eval_derivative(elements[element_of(x)], x);
}

std::vector<double> PiecewiseCheb::node_values() const {
    std::vector<double> v(mesh.nodes.size());
    v[0] = cheb_eval(elements[0], mesh.nodes[0]);
    for (int i = 0; i < mesh.num_elements(); ++i)
        v[i + 1] = cheb_eval(elements[i], mesh.nodes[i + 1]);
    return v;
}

PiecewiseCheb sample_to_spline(const std::function<double(double)>& f, const Mesh& mesh) {
    mesh.validate();
    std::vector<ChebSeries> elems;
    elems.reserve(mesh.num_elements());
    for (int i = 0; i < mesh.num_elements(); ++i) {
        const CCGrid grid = cc_grid(mesh.degrees[i], mesh.nodes[i], mesh.nodes[i + 1]);
        std::vector<double> vals(grid.points.size());
        for (std::size_t j = 0; j < grid.points.size(); ++j) {
            vals[j] = f(grid.points[j]);
            if (!std::isfinite(vals[j]))
                throw DataError("sample_to_spline: non-finite sample at x = " +
                                std::to_string(grid.points[j]));
        }
        elems.push_back(cc_interpolate(vals, grid));
    }
    return PiecewiseCheb(mesh, std::move(elems));
}

Mesh read_mesh_csv(std::istream& nodes_in, std::istream& degrees_in) {
    auto read_column = [](std::istream& in, const std::string& header) {
        std::string line;
        if (!std::getline(in, line) || line != header)
            throw DataError("mesh CSV: expected header '" + header + "'");
        std::vector<double> vals;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            try {
                vals.push_back(std::stod(line));
            } catch (const std::exception&) {
                throw DataError("mesh CSV: bad value '" + line + "'");
            }
        }
        return vals;
    };
    Mesh m;
    m.nodes = read_column(nodes_in, "node");
    for (double d : read_column(degrees_in, "degree")) {
        if (d != std::floor(d) || d < 1)
            throw DataError("mesh CSV: degrees must be positive integers");
        m.degrees.push_back(static_cast<int>(d));
    }
    m.validate();
    return m;
}

void write_mesh_csv(const Mesh& mesh, std::ostream& nodes_out, std::ostream& degrees_out) {
    std::ostringstream n, d;
    n.precision(17);
    n << "node\n";
    for (double x : mesh.nodes)
        n << x << "\n";
    d << "degree\n";
    for (int p : mesh.degrees)
        d << p << "\n";
    nodes_out << n.str();
    degrees_out << d.str();
}

void write_spline_values_csv(const PiecewiseCheb& v, std::ostream& out) {
    std::ostringstream oss;
    oss.precision(17);
    oss << "element_index,cc_point,value\n";
    for (int i = 0; i < v.mesh.num_elements(); ++i) {
        const CCGrid grid = cc_grid(v.mesh.degrees[i], v.mesh.nodes[i], v.mesh.nodes[i + 1]);
        for (double x : grid.points)
            oss << i << "," << x << "," << cheb_eval(v.elements[i], x) << "\n";
    }
    out << oss.str();
}

PiecewiseCheb read_spline_values_csv(std::istream& in, const Mesh& mesh) {
    std::string line;
    if (!std::getline(in, line) || line != "element_index,cc_point,value")
        throw DataError("spline CSV: expected header element_index,cc_point,value");
    std::vector<std::vector<double>> values(mesh.num_elements());
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string se, sx, sv;
        if (!std::getline(ls, se, ',') || !std::getline(ls, sx, ',') || !std::getline(ls, sv, ','))
            throw DataError("spline CSV: bad row '" + line + "'");
        int e = 0;
        double val = 0.0;
        try {
            e = std::stoi(se);
            val = std::stod(sv);
        } catch (const std::exception&) {
            throw DataError("spline CSV: bad row '" + line + "'");
        }
        if (e < 0 || e >= mesh.num_elements())
            throw DataError("spline CSV: element index out of range");
        values[e].push_back(val);
    }
    std::vector<ChebSeries> elems;
    for (int i = 0; i < mesh.num_elements(); ++i) {
        const CCGrid grid = cc_grid(mesh.degrees[i], mesh.nodes[i], mesh.nodes[i + 1]);
        if (values[i].size() != grid.points.size())
            throw DataError("spline CSV: element " + std::to_string(i) + " expects " +
                            std::to_string(grid.points.size()) + " values");
        elems.push_back(cc_interpolate(values[i], grid));
    }
    return PiecewiseCheb(mesh, std::move(elems));
}

} // namespace cheb2relu
