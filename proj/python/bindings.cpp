#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ginlab/errors.hpp"
#include "ginlab/experiment.hpp"
#include "ginlab/kernel_theory.hpp"

namespace py = pybind11;
using namespace ginlab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of ginlab";
    m.attr("__version__") = kVersion;

    static py::exception<GinlabError> base_error(m, "GinlabError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const GinlabError& e) {
            py::object err = base_error;
            PyErr_SetObject(err.ptr(), py::make_tuple(e.what(), e.exit_code()).ptr());
        }
    });

    py::class_<Atom>(m, "Atom")
        .def(py::init([](cplx a, double c) { return Atom{a, c}; }), py::arg("a"), py::arg("c"))
        .def_readwrite("a", &Atom::a)
        .def_readwrite("c", &Atom::c);

    py::class_<DeformationSpec>(m, "DeformationSpec")
        .def(py::init([](double tau, std::vector<Atom> atoms, int r0, std::vector<cplx> finite_block,
                         int R0) {
                 return DeformationSpec{tau, std::move(atoms), r0, std::move(finite_block), R0};
             }),
             py::arg("tau"), py::arg("atoms"), py::arg("r0") = 0,
             py::arg("finite_block") = std::vector<cplx>{}, py::arg("R0") = 2)
        .def_readwrite("tau", &DeformationSpec::tau)
        .def_readwrite("atoms", &DeformationSpec::atoms)
        .def_readwrite("r0", &DeformationSpec::r0)
        .def_readwrite("finite_block", &DeformationSpec::finite_block)
        .def_readwrite("R0", &DeformationSpec::R0)
        .def("to_json", [](const DeformationSpec& s) { return spec_to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) {
            return spec_from_json(json::parse(text));
        });

    py::class_<ValidatedSpec>(m, "ValidatedSpec")
        .def_property_readonly("spec", &ValidatedSpec::spec)
        .def_property_readonly("tau", &ValidatedSpec::tau);

    py::enum_<PointTag>(m, "PointTag")
        .value("Bulk", PointTag::Bulk)
        .value("Edge", PointTag::Edge)
        .value("Exterior", PointTag::Exterior);

    py::class_<PointClass>(m, "PointClass")
        .def_readonly("tag", &PointClass::tag)
        .def_readonly("p00", &PointClass::p00);

    py::class_<BoundaryCurve::Polyline>(m, "Polyline")
        .def_readonly("points", &BoundaryCurve::Polyline::points)
        .def_readonly("closed", &BoundaryCurve::Polyline::closed);
    py::class_<BoundaryCurve>(m, "BoundaryCurve")
        .def_readonly("polylines", &BoundaryCurve::polylines)
        .def_readonly("grid_resolution", &BoundaryCurve::grid_resolution);

    py::class_<BulkParameters>(m, "BulkParameters")
        .def_readonly("z0", &BulkParameters::z0)
        .def_readonly("t0", &BulkParameters::t0)
        .def_readonly("p0", &BulkParameters::p0)
        .def_readonly("p1", &BulkParameters::p1)
        .def_readonly("sigma_sq", &BulkParameters::sigma_sq)
        .def_readonly("predicted_density", &BulkParameters::predicted_density);

    py::class_<SpectrumSample>(m, "SpectrumSample")
        .def_readonly("eigenvalues", &SpectrumSample::eigenvalues)
        .def_readonly("N", &SpectrumSample::N)
        .def_readonly("seed", &SpectrumSample::seed)
        .def_readonly("trial_index", &SpectrumSample::trial_index)
        .def_readonly("trace_residual", &SpectrumSample::trace_residual)
        .def_readonly("trace2_residual", &SpectrumSample::trace2_residual);

    py::class_<LocalStatistics>(m, "LocalStatistics")
        .def_readonly("rescaled_points", &LocalStatistics::rescaled_points)
        .def_readonly("window_radius", &LocalStatistics::window_radius)
        .def_readonly("n_trials", &LocalStatistics::n_trials)
        .def_readonly("N", &LocalStatistics::N)
        .def_readonly("sigma_sq", &LocalStatistics::sigma_sq);

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("centers", &Histogram::centers)
        .def_readonly("values", &Histogram::values)
        .def_readonly("counts", &Histogram::counts);

    py::class_<Ecdf>(m, "Ecdf").def_readonly("x", &Ecdf::x).def_readonly("cdf", &Ecdf::cdf);

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("density_hat", &ComparisonReport::density_hat)
        .def_readonly("density_theory", &ComparisonReport::density_theory)
        .def_readonly("density_rel_err", &ComparisonReport::density_rel_err)
        .def_readonly("g_of_r", &ComparisonReport::g_of_r)
        .def_readonly("g_max_abs_dev", &ComparisonReport::g_max_abs_dev)
        .def_readonly("g_bins_compared", &ComparisonReport::g_bins_compared)
        .def_readonly("ks_spacing_vs_ginibre", &ComparisonReport::ks_spacing_vs_ginibre)
        .def_readonly("spacing_count", &ComparisonReport::spacing_count);

    py::class_<MaxCheckResult>(m, "MaxCheckResult")
        .def_readonly("argmax_found", &MaxCheckResult::argmax_found)
        .def_readonly("argmax_expected", &MaxCheckResult::argmax_expected)
        .def_readonly("max_gap", &MaxCheckResult::max_gap)
        .def_readonly("tolerance", &MaxCheckResult::tolerance)
        .def_readonly("passed", &MaxCheckResult::passed);

    m.def("validate_spec", &validate_spec, py::arg("spec"));
    m.def("p00", &p00, py::arg("spec"), py::arg("z0"));
    m.def("classify_point", &classify_point, py::arg("spec"), py::arg("z0"));
    m.def(
        "trace_boundary",
        [](const ValidatedSpec& s, std::array<double, 4> w, double res) {
            return trace_boundary(s, Window{w[0], w[1], w[2], w[3]}, res);
        },
        py::arg("spec"), py::arg("window"), py::arg("resolution"),
        "window = (x_min, x_max, y_min, y_max)");
    m.def("build_mean_matrix", &build_mean_matrix, py::arg("spec"), py::arg("N"),
          py::arg("z0") = cplx{});

    m.def("solve_t0", &solve_t0, py::arg("spec"), py::arg("z0"));
    m.def("bulk_parameters", &bulk_parameters, py::arg("spec"), py::arg("z0"),
          py::arg("t0_override") = 0.0);
    m.def("rescale_factor", &rescale_factor, py::arg("bp"), py::arg("N"));

    m.def("sample_matrix", &sample_matrix, py::arg("spec"), py::arg("z0"), py::arg("N"),
          py::arg("seed"), py::arg("trial"));
    m.def("eigenvalues", &eigenvalues, py::arg("X"), py::call_guard<py::gil_scoped_release>());
    m.def("sample_spectrum", &sample_spectrum, py::arg("spec"), py::arg("z0"), py::arg("N"),
          py::arg("seed"), py::arg("trial"), py::call_guard<py::gil_scoped_release>());
    m.def("haar_unitary", py::overload_cast<int, std::uint64_t>(&haar_unitary), py::arg("n"),
          py::arg("seed"));
    m.def(
        "run_campaign",
        [](const ValidatedSpec& s, cplx z0, int N, int trials, std::uint64_t seed, int jobs) {
            return run_campaign(s, z0, N, trials, seed, jobs);
        },
        py::arg("spec"), py::arg("z0"), py::arg("N"), py::arg("trials"), py::arg("seed"),
        py::arg("jobs") = 0, py::call_guard<py::gil_scoped_release>());

    m.def("ginibre_kernel", &ginibre_kernel, py::arg("z"), py::arg("w"));
    m.def("npoint_correlation", &npoint_correlation, py::arg("points"));
    m.def("predicted_pair_correlation", &predicted_pair_correlation, py::arg("r"));

    m.def("extract_local", &extract_local, py::arg("sample"), py::arg("bp"), py::arg("rho"));
    m.def("collect_local", &collect_local, py::arg("samples"), py::arg("bp"), py::arg("rho"));
    m.def("density_estimate", &density_estimate, py::arg("stats"));
    m.def("pair_correlation_estimate", &pair_correlation_estimate, py::arg("stats"),
          py::arg("r_max"), py::arg("n_bins"));
    m.def("nn_spacing_ecdf", &nn_spacing_ecdf, py::arg("stats"), py::arg("min_points") = 200);
    m.def("make_ecdf", &make_ecdf, py::arg("values"));
    m.def("ks_distance", &ks_distance, py::arg("a"), py::arg("b"));
    m.def("compare_with_theory", &compare_with_theory, py::arg("stats"), py::arg("baseline"),
          py::arg("r_max"), py::arg("n_bins"), py::arg("min_pairs_per_bin") = 500);

    m.def("check_lemma_maximum_y", &check_lemma_maximum_y, py::arg("spec"), py::arg("z0"),
          py::arg("t0_override") = 0.0);
    m.def("check_lemma_jn", &check_lemma_jn, py::arg("spec"), py::arg("z0"),
          py::arg("grid_resolution") = 0.05, py::arg("d") = std::optional<cplx>{},
          py::arg("t0_override") = 0.0);
    m.def(
        "check_hciz",
        [](int n, std::vector<double> a, std::vector<double> b, double l, long samples,
           std::uint64_t seed) { return check_hciz(n, a, b, l, samples, seed).relative_error; },
        py::arg("n"), py::arg("a_diag"), py::arg("b_diag"), py::arg("l"), py::arg("mc_samples"),
        py::arg("seed"));
}
