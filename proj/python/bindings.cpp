// Python bindings. Specs and reports cross the boundary as JSON text; the
// package layer turns them into dicts.

#include "curvehedge/analytics.hpp"
#include "curvehedge/arbitrage.hpp"
#include "curvehedge/errors.hpp"
#include "curvehedge/extrapolation.hpp"
#include "curvehedge/hedging.hpp"
#include "curvehedge/io.hpp"
#include "curvehedge/sensitivity.hpp"
#include "curvehedge/shifts.hpp"
#include "curvehedge/variation.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace curvehedge;

namespace {

MethodSpec spec_from(const std::string& text) { return method_spec_from_json(Json::parse(text)); }

std::string dumped(const Json& j) { return j.dump(); }

CashFlow make_flow(const std::vector<std::pair<double, double>>& lumps,
                   const std::vector<std::tuple<double, double, double>>& densities) {
    std::vector<Lump> l;
    for (const auto& [t, a] : lumps) l.push_back({t, a});
    std::vector<Density> d;
    for (const auto& [a, b, r] : densities) d.push_back({a, b, r});
    return CashFlow(std::move(l), std::move(d));
}

// Scalar in, scalar out; arrays map elementwise.
template <class F>
py::object elementwise(py::object t, F f) {
    if (py::isinstance<py::float_>(t) || py::isinstance<py::int_>(t)) return py::float_(f(t.cast<double>()));
    auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(t);
    if (!in) throw py::type_error("expected a float or an array of floats");
    py::array_t<double> out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
    const double* src = in.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = f(src[i]);
    return std::move(out);
}

template <class Curve>
void add_curve_methods(py::class_<Curve, YieldCurve>& cls) {
    cls.def("discount", [](const Curve& c, py::object t) { return elementwise(t, [&c](double s) { return c.discount(s); }); },
            py::arg("t"))
        .def("zero_yield",
             [](const Curve& c, py::object t) { return elementwise(t, [&c](double s) { return c.zero_yield(s); }); },
             py::arg("t"))
        .def("forward", [](const Curve& c, py::object t) { return elementwise(t, [&c](double s) { return c.forward(s); }); },
             py::arg("t"))
        .def_property_readonly("horizon", &Curve::horizon);
}

}  // namespace

PYBIND11_MODULE(_curvehedge, m) {
    m.doc() = "Yield-curve extrapolation and liability hedging";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<DefectError>(m, "DefectError", base.ptr());
    py::register_exception<CalibrationError>(m, "CalibrationError", base.ptr());
    py::register_exception<NotWellDefinedError>(m, "NotWellDefinedError", base.ptr());
    py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<YieldCurve>(m, "YieldCurve");

    py::class_<ForwardCurve, YieldCurve> fc(m, "ForwardCurve");
    fc.def(py::init([](const std::vector<double>& t, const std::vector<double>& f) {
               return ForwardCurve(TimeGrid(t), f);
           }),
           py::arg("t"), py::arg("forward"))
        .def_static("flat", &ForwardCurve::flat, py::arg("rate"), py::arg("horizon") = kDefaultHorizon)
        .def_static(
            "from_zero_yields",
            [](const std::vector<double>& t, const std::vector<double>& y) { return ForwardCurve::from_zero_yields(t, y); },
            py::arg("t"), py::arg("zero_yield"))
        .def_static("read", &read_curve, py::arg("path"))
        .def("shifted", &ForwardCurve::shifted, py::arg("shift"), py::arg("scale") = 1.0);
    add_curve_methods(fc);

    py::class_<CurveShift>(m, "CurveShift")
        .def(py::init([](const std::vector<double>& t, const std::vector<double>& df) {
                 return CurveShift(TimeGrid(t), df);
             }),
             py::arg("t"), py::arg("df"))
        .def_static("constant", &CurveShift::constant, py::arg("c"), py::arg("horizon") = kDefaultHorizon)
        .def_static("parallel_bp", [](double bp) { return parallel_shift_bp(bp); }, py::arg("bp"))
        .def_static("random_suite", [](std::uint64_t seed, int count) { return random_shift_suite(seed, count); },
                    py::arg("seed"), py::arg("count"))
        .def("dz", &CurveShift::dz)
        .def("df", &CurveShift::df);

    py::class_<CashFlow>(m, "CashFlow")
        .def(py::init(&make_flow), py::arg("lumps") = std::vector<std::pair<double, double>>{},
             py::arg("densities") = std::vector<std::tuple<double, double, double>>{})
        .def_static("read", &read_cashflow, py::arg("path"))
        .def("_json", [](const CashFlow& c) { return dumped(to_json(c)); });

    py::class_<ExtrapolatedCurve, YieldCurve> ec(m, "ExtrapolatedCurve");
    ec.def(py::init([](const ForwardCurve& z, const std::string& spec) { return ExtrapolatedCurve(z, spec_from(spec)); }),
           py::arg("market"), py::arg("spec_json"))
        .def("_spec_json", [](const ExtrapolatedCurve& c) { return dumped(to_json(c.spec())); })
        .def_property_readonly("tau", &ExtrapolatedCurve::tau)
        .def_property_readonly("z_tau", &ExtrapolatedCurve::z_tau)
        .def_property_readonly("f_tau", &ExtrapolatedCurve::f_tau)
        .def_property_readonly("defective", &ExtrapolatedCurve::defective);
    add_curve_methods(ec);

    m.def("present_value", &present_value, py::arg("curve"), py::arg("flow"));
    m.def("dollar_duration", &dollar_duration, py::arg("curve"), py::arg("flow"));
    m.def("duration", &duration, py::arg("curve"), py::arg("flow"));
    m.def("convexity", &convexity, py::arg("curve"), py::arg("flow"));

    m.def("_arbitrage_scan", [](const YieldCurve& c, double step) { return dumped(to_json(arbitrage_scan(c, step))); },
          py::arg("curve"), py::arg("step") = kDefaultScanStep);
    m.def("_hedge", [](const ExtrapolatedCurve& c, const CashFlow& L) { return dumped(to_json(hedge(c, L))); });
    m.def("_ufr_sensitivity", [](const std::string& spec, const ForwardCurve& z, const CashFlow& L) {
        return dumped(to_json(ufr_sensitivity(spec_from(spec), z, L)));
    });
    m.def("_method_variation", [](const std::string& spec, const ForwardCurve& z, const CurveShift& dz, double t) {
        return method_variation(spec_from(spec), z, dz, t);
    });
    m.def("_liability_variation", [](const std::string& spec, const ForwardCurve& z, const CurveShift& dz,
                                     const CashFlow& L) {
        return dumped(to_json(method_variation_report(spec_from(spec), z, dz, L)));
    });
    m.def("_first_order_residual", [](const std::string& spec, const ForwardCurve& z, const CashFlow& L,
                                      const CurveShift& dz) {
        const MethodSpec s = spec_from(spec);
        return verify_first_order(hedge(s, z, L), s, z, L, dz);
    });
    m.def("_revaluation_gap", [](const std::string& spec, const ForwardCurve& z, const CashFlow& L,
                                 const CurveShift& dz) {
        const MethodSpec s = spec_from(spec);
        return revaluation_gap(hedge(s, z, L), s, z, L, dz);
    });
}
