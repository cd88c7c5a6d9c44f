#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hfc/baseline_sfc.hpp"
#include "hfc/config.hpp"
#include "hfc/harness.hpp"
#include "hfc/hierarchy.hpp"
#include "hfc/inference.hpp"
#include "hfc/rule_lang.hpp"

namespace py = pybind11;
using namespace hfc;

namespace {

py::dict to_dict(const Diagnostic& d) {
    py::dict out;
    out["severity"] = d.severity == Severity::error ? "error" : "warning";
    out["line"] = d.location.line;
    out["column"] = d.location.column;
    out["message"] = d.message;
    out["code"] = d.code;
    return out;
}

py::list to_list(const std::vector<Diagnostic>& ds) {
    py::list out;
    for (const auto& d : ds) out.append(to_dict(d));
    return out;
}

py::object metrics_dict(const SignalMetrics& m) {
    py::dict out;
    out["overshoot"] = m.overshoot;
    out["undershoot"] = m.undershoot;
    out["settling_time"] = m.settling_time ? py::cast(*m.settling_time) : py::none();
    return std::move(out);
}

}  // namespace

PYBIND11_MODULE(_hfc, m) {
    m.doc() = "Hierarchical fuzzy cart-pole controller";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NoRuleFired>(m, "NoRuleFired", PyExc_RuntimeError);
    py::register_exception<SfcError>(m, "SfcError", PyExc_ValueError);

    py::class_<KnowledgeBase>(m, "KnowledgeBase")
        .def_property_readonly("rule_count", [](const KnowledgeBase& kb) { return kb.rules().size(); })
        .def_property_readonly("output_name", &KnowledgeBase::output_name)
        .def_property_readonly("input_names",
                               [](const KnowledgeBase& kb) {
                                   std::vector<std::string> out;
                                   for (const auto* v : kb.inputs()) out.push_back(v->name());
                                   return out;
                               })
        .def("serialize", &serialize_kb)
        .def("validate", [](const KnowledgeBase& kb) { return to_list(validate_kb(kb)); })
        .def("audit", [](const KnowledgeBase& kb) { return to_list(to_diagnostics(audit_hierarchy(kb, cart_pole_goals()))); },
             "Hierarchy audit against the cart-pole goals.")
        .def(
            "output", [](const KnowledgeBase& kb, const Inputs& inputs) { return fc_output(kb, inputs); },
            py::arg("inputs"))
        .def("__eq__", [](const KnowledgeBase& a, const KnowledgeBase& b) { return a == b; });

    m.def("builtin_kb", &builtin_pole_kb, py::return_value_policy::copy);
    m.def(
        "parse_rules",
        [](std::string_view text) {
            auto r = parse_knowledge_base(text);
            return py::make_tuple(r.kb ? py::cast(*r.kb) : py::none(), to_list(r.diagnostics));
        },
        py::arg("text"), "Returns (KnowledgeBase or None, diagnostics).");

    py::class_<PlantParams>(m, "PlantParams")
        .def(py::init<>())
        .def_static("pole", &PlantParams::pole, py::arg("n"))
        .def_readwrite("g", &PlantParams::g)
        .def_readwrite("m_c", &PlantParams::m_c)
        .def_readwrite("m", &PlantParams::m)
        .def_readwrite("l", &PlantParams::l)
        .def_readwrite("mu_c", &PlantParams::mu_c)
        .def_readwrite("mu_p", &PlantParams::mu_p)
        .def_readwrite("f_max", &PlantParams::f_max)
        .def("frictionless", &PlantParams::frictionless);

    py::class_<PlantState>(m, "PlantState")
        .def(py::init([](double theta, double theta_dot, double x, double x_dot, double tilt) {
                 return PlantState{theta, theta_dot, x, x_dot, tilt};
             }),
             py::arg("theta") = 0.0, py::arg("theta_dot") = 0.0, py::arg("x") = 0.0, py::arg("x_dot") = 0.0,
             py::arg("tilt") = 0.0)
        .def_readwrite("theta", &PlantState::theta)
        .def_readwrite("theta_dot", &PlantState::theta_dot)
        .def_readwrite("x", &PlantState::x)
        .def_readwrite("x_dot", &PlantState::x_dot)
        .def_readwrite("tilt", &PlantState::tilt)
        .def("__repr__", [](const PlantState& s) {
            std::ostringstream os;
            os << "PlantState(theta=" << s.theta << ", theta_dot=" << s.theta_dot << ", x=" << s.x
               << ", x_dot=" << s.x_dot << ", tilt=" << s.tilt << ")";
            return os.str();
        });

    m.def(
        "derivatives",
        [](const PlantState& s, double f, const PlantParams& p) {
            auto a = derivatives(s, f, p);
            return py::make_tuple(a.theta_ddot, a.x_ddot);
        },
        py::arg("state"), py::arg("force"), py::arg("params"), "Returns (theta_ddot, x_ddot).");
    m.def(
        "step",
        [](const PlantState& s, double f, double dt, const PlantParams& p, const std::string& integrator) {
            if (integrator != "euler" && integrator != "rk4") throw py::value_error("integrator must be euler or rk4");
            return step(s, f, dt, p, integrator == "rk4" ? Integrator::rk4 : Integrator::euler);
        },
        py::arg("state"), py::arg("force"), py::arg("dt"), py::arg("params"), py::arg("integrator") = "euler");

    m.def(
        "design_gains",
        [](const PlantParams& p, std::vector<std::complex<double>> poles) {
            if (poles.empty()) poles = default_sfc_poles();
            auto g = design_gains(linearize(p), poles);
            return std::vector<double>{g.k(0), g.k(1), g.k(2), g.k(3)};
        },
        py::arg("params"), py::arg("poles") = std::vector<std::complex<double>>{},
        "Gain row k for the state (theta, theta_dot, x, x_dot); default poles when empty.");

    m.def(
        "step_metrics",
        [](const std::vector<double>& t, const std::vector<double>& y, double sp, double band) {
            return metrics_dict(step_metrics(t, y, sp, band));
        },
        py::arg("t"), py::arg("y"), py::arg("setpoint"), py::arg("band"));

    m.def(
        "simulate",
        [](std::string_view json_text, const std::string& base_dir) {
            Scenario sc = parse_scenario(json_text, base_dir);
            Trajectory tr;
            {
                py::gil_scoped_release release;
                tr = run(sc);
            }
            auto metrics = compute_metrics(tr, sc);
            std::ostringstream csv;
            emit_trajectory(tr, csv);
            py::dict out;
            out["name"] = sc.name;
            out["termination"] = to_string(tr.termination);
            out["csv"] = csv.str();
            out["rows"] = tr.rows.size();
            out["no_rule_fired"] = tr.no_rule_fired;
            out["warnings"] = tr.warnings;
            out["theta"] = metrics_dict(metrics.theta);
            out["x"] = metrics_dict(metrics.x);
            return out;
        },
        py::arg("scenario_json"), py::arg("base_dir") = "",
        "Runs a JSON scenario; returns the trajectory CSV, termination and metrics.");
}
