#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cheb2relu/cheb_emulator.hpp"
#include "cheb2relu/fem_studies.hpp"
#include "cheb2relu/nn_calculus.hpp"
#include "cheb2relu/product_net.hpp"
#include "cheb2relu/spline_emulator.hpp"
#include "cheb2relu/targets.hpp"

namespace py = pybind11;
using namespace cheb2relu;

namespace {

Target target_from_callables(const std::function<double(double)>& f,
                             const std::function<double(double)>& df, double alpha) {
    Target t;
    t.value = f;
    t.deriv = df;
    if (alpha > 0.0) {
        t.singular_alpha = alpha;
        t.singular_coeff = 1.0;
    }
    return t;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chebyshev-to-ReLU network compiler";

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<SizeMetrics>(m, "SizeMetrics")
        .def_readonly("depth", &SizeMetrics::depth)
        .def_readonly("size", &SizeMetrics::size)
        .def_readonly("size_first", &SizeMetrics::size_first)
        .def_readonly("size_last", &SizeMetrics::size_last)
        .def_readonly("width_max", &SizeMetrics::width_max)
        .def("__repr__", [](const SizeMetrics& s) {
            return "SizeMetrics(depth=" + std::to_string(s.depth) +
                   ", size=" + std::to_string(s.size) + ")";
        });

    py::class_<NeuralNetwork>(m, "NeuralNetwork")
        .def_property_readonly("input_dim", &NeuralNetwork::input_dim)
        .def_property_readonly("output_dim", &NeuralNetwork::output_dim)
        .def_property_readonly("depth", &NeuralNetwork::depth)
        .def("realize", &NeuralNetwork::realize, py::arg("x"))
        .def("__call__",
             [](const NeuralNetwork& n, double x) { return n.realize({x}); })
        .def("realize_with_derivative", &NeuralNetwork::realize_with_derivative, py::arg("x"))
        .def("realize_jvp", &NeuralNetwork::realize_jvp, py::arg("x"), py::arg("dx"))
        .def("metrics", &NeuralNetwork::metrics)
        .def("to_json", &NeuralNetwork::to_json, py::arg("indent") = -1)
        .def_static("from_json", &NeuralNetwork::from_json, py::arg("text"));

    m.def("identity_net", &identity_net, py::arg("d"), py::arg("L"));
    m.def("parallel", py::overload_cast<const NeuralNetwork&, const NeuralNetwork&>(&parallel));
    m.def("full_parallel",
          py::overload_cast<const NeuralNetwork&, const NeuralNetwork&>(&full_parallel));
    m.def("concat", &concat);
    m.def("sparse_concat", &sparse_concat);

    py::class_<ProductSpec>(m, "ProductSpec")
        .def(py::init<double, double>(), py::arg("delta"), py::arg("kappa") = 1.0)
        .def_readwrite("delta", &ProductSpec::delta)
        .def_readwrite("kappa", &ProductSpec::kappa);
    m.def("build_product",
          [](double delta, double kappa) { return build_product({delta, kappa}); },
          py::arg("delta"), py::arg("kappa") = 1.0);
    m.def("product_constants", [] {
        const ProductConstants c = product_constants();
        return py::make_tuple(c.C_L, c.C_L_add, c.C_M, c.C_M_add, c.C_fi, c.C_la);
    });

    py::class_<ChebSeries>(m, "ChebSeries")
        .def(py::init([](std::vector<double> coeffs, double a, double b) {
                 return ChebSeries{std::move(coeffs), a, b};
             }),
             py::arg("coeffs"), py::arg("a") = -1.0, py::arg("b") = 1.0)
        .def_readwrite("coeffs", &ChebSeries::coeffs)
        .def_readwrite("a", &ChebSeries::a)
        .def_readwrite("b", &ChebSeries::b)
        .def_property_readonly("degree", &ChebSeries::degree);

    m.def("cheb_eval", &cheb_eval, py::arg("series"), py::arg("x"));
    m.def("cheb_eval_derivative", &cheb_eval_derivative, py::arg("series"), py::arg("x"));
    m.def("cc_points", [](int p, double a, double b) { return cc_grid(p, a, b).points; },
          py::arg("p"), py::arg("a") = -1.0, py::arg("b") = 1.0);
    m.def("cc_interpolate",
          [](const std::vector<double>& values, int p, double a, double b) {
              return cc_interpolate(values, cc_grid(p, a, b));
          },
          py::arg("values"), py::arg("p"), py::arg("a") = -1.0, py::arg("b") = 1.0);
    m.def("lebesgue_constant", &lebesgue_constant, py::arg("p"));
    m.def("coeff_tail_sum", &coeff_tail_sum, py::arg("series"));

    m.def("build_cheb_tower", &build_cheb_tower, py::arg("k"), py::arg("delta"));
    m.def("build_poly_emulator", &build_poly_emulator, py::arg("polys"), py::arg("tau"));
    m.def("build_interval_emulator", &build_interval_emulator, py::arg("polys"), py::arg("eps"));

    py::class_<Mesh>(m, "Mesh")
        .def(py::init([](std::vector<double> nodes, std::vector<int> degrees) {
                 Mesh mm{std::move(nodes), std::move(degrees)};
                 mm.validate();
                 return mm;
             }),
             py::arg("nodes"), py::arg("degrees"))
        .def_readonly("nodes", &Mesh::nodes)
        .def_readonly("degrees", &Mesh::degrees)
        .def_property_readonly("dof", &Mesh::dof);
    m.def("uniform_mesh", &uniform_mesh, py::arg("n_elements"), py::arg("a"), py::arg("b"),
          py::arg("degree"));
    m.def("geometric_mesh",
          [](double sigma, int N, double mu, double delta) {
              return geometric_mesh({sigma, N, mu, delta});
          },
          py::arg("sigma"), py::arg("N"), py::arg("mu") = 1.0, py::arg("delta") = 1.0);

    py::class_<PiecewiseCheb>(m, "PiecewiseCheb")
        .def(py::init<Mesh, std::vector<ChebSeries>>(), py::arg("mesh"), py::arg("elements"))
        .def_readonly("mesh", &PiecewiseCheb::mesh)
        .def_readonly("elements", &PiecewiseCheb::elements)
        .def("eval", &PiecewiseCheb::eval, py::arg("x"))
        .def("eval_derivative", &PiecewiseCheb::eval_derivative, py::arg("x"))
        .def("node_values", &PiecewiseCheb::node_values);

    m.def("sample_to_spline",
          [](const std::function<double(double)>& f, const Mesh& mesh) {
              return sample_to_spline(f, mesh);
          },
          py::arg("f"), py::arg("mesh"));
    m.def("cpwl_interpolant_net",
          py::overload_cast<const std::vector<double>&, const std::vector<double>&>(
              &cpwl_interpolant_net),
          py::arg("nodes"), py::arg("node_values"));
    m.def("build_spline_emulator", &build_spline_emulator, py::arg("v"), py::arg("eps"));

    m.def("diff_norm",
          [](const std::function<double(double)>& f, const std::function<double(double)>& df,
             const NeuralNetwork& net, const Mesh& mesh, const std::string& norm, double alpha) {
              const Target t = target_from_callables(f, df, alpha);
              const std::vector<NormTag> tags = all_norm_tags();
              const ErrorReport rep = alpha > 0.0 ? singular_diff_norms(t, net, mesh, tags)
                                                  : diff_norms(t, net, mesh, tags);
              for (NormTag tag : tags)
                  if (norm == norm_tag_name(tag))
                      return rep.get(tag);
              throw ParameterError("unknown norm tag '" + norm + "'");
          },
          py::arg("f"), py::arg("df"), py::arg("net"), py::arg("mesh"), py::arg("norm") = "H1_semi",
          py::arg("alpha") = 0.0);

    py::class_<StudyRecord>(m, "StudyRecord")
        .def_readonly("n_or_p", &StudyRecord::n_or_p)
        .def_readonly("dof", &StudyRecord::dof)
        .def_readonly("nn_size", &StudyRecord::nn_size)
        .def_readonly("nn_depth", &StudyRecord::nn_depth)
        .def_readonly("error_L2", &StudyRecord::error_L2)
        .def_readonly("error_H1", &StudyRecord::error_H1)
        .def_readonly("error_Linf", &StudyRecord::error_Linf);

    m.def("run_hp_study",
          [](double alpha, double sigma, double mu, double delta, int n_min, int n_max) {
              std::vector<GeometricMeshSpec> specs;
              for (int N = n_min; N <= n_max; ++N)
                  specs.push_back({sigma, N, mu, delta});
              const StudyResult res = run_hp_study(alpha, specs);
              return py::make_tuple(res.records, res.h1_fit.slope, res.h1_fit.r2);
          },
          py::arg("alpha"), py::arg("sigma") = 0.5, py::arg("mu") = 1.0, py::arg("delta") = 1.0,
          py::arg("n_min") = 3, py::arg("n_max") = 8);
}
