/*
 Copyright 2026 The gramsched Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
// Python bindings. Schedules and reports cross the boundary as JSON text in
// the same format the command-line tool reads and writes.

#include "gramsched/gramsched.hpp"
#include "gramsched/io.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace gramsched;

namespace {

CandidateVariant variant_from(const std::string& s) {
    if (s == "proof") return CandidateVariant::Proof;
    if (s == "listing") return CandidateVariant::Listing;
    throw InvalidArgument("variant must be 'proof' or 'listing', got '" + s + "'");
}

ScheduleOptions options_from(const std::string& variant) {
    ScheduleOptions opts;
    opts.variant = variant_from(variant);
    return opts;
}

std::string dump(const Schedule& s) { return io::schedule_to_json(s).dump(); }

Schedule load_schedule(const std::string& text) { return io::schedule_from_json(io::Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_gramsched, m) {
    m.doc() = "Sparse sensor and actuator scheduling for discrete-time LTI systems.";

    py::register_exception<NearSingularError>(m, "NearSingularError", PyExc_ArithmeticError);
    py::register_exception<NumericalBreakdown>(m, "NumericalBreakdown", PyExc_RuntimeError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_MemoryError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const nlohmann::json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<LtiSystem>(m, "LtiSystem")
        .def(py::init([](Matrix A, Matrix B, Matrix C) { return LtiSystem(std::move(A), std::move(B), std::move(C)); }),
             py::arg("A"), py::arg("B"), py::arg("C"))
        .def_property_readonly("A", &LtiSystem::A)
        .def_property_readonly("B", &LtiSystem::B)
        .def_property_readonly("C", &LtiSystem::C)
        .def_property_readonly("n", &LtiSystem::n)
        .def_property_readonly("m", &LtiSystem::m)
        .def_property_readonly("p", &LtiSystem::p)
        .def("dual", &LtiSystem::dual)
        .def("to_json", [](const LtiSystem& s) { return io::system_to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return io::system_from_json(io::Json::parse(text)); })
        .def("__repr__", [](const LtiSystem& s) {
            return "LtiSystem(n=" + std::to_string(s.n()) + ", m=" + std::to_string(s.m()) +
                   ", p=" + std::to_string(s.p()) + ")";
        });

    py::class_<SwingParams>(m, "SwingParams")
        .def(py::init<>())
        .def_readwrite("inertia", &SwingParams::inertia)
        .def_readwrite("damping", &SwingParams::damping)
        .def_readwrite("coupling", &SwingParams::coupling)
        .def_readwrite("dt", &SwingParams::dt)
        .def_property_readonly("generators", &SwingParams::generators)
        .def("validate", &SwingParams::validate);

    m.def("random_system", &random_system, py::arg("n"), py::arg("m"), py::arg("p"), py::arg("seed"),
          py::arg("spectral_radius") = 0.9);
    m.def("random_swing_params", &random_swing_params, py::arg("generators"), py::arg("seed"),
          py::arg("dt") = 0.2);
    m.def("swing_system", &swing_system, py::arg("params"));

    m.def("gramians", [](const LtiSystem& sys, int t) {
        const GramianSet g = gramians(sys, t);
        return py::make_tuple(g.P, g.Q);
    }, py::arg("system"), py::arg("t"), "Return (P, Q) over horizon t.");
    m.def("reachability_matrix", [](const LtiSystem& sys, int t) { return reachability_matrix(sys, t); },
          py::arg("system"), py::arg("t"));
    m.def("observability_matrix", [](const LtiSystem& sys, int t) { return observability_matrix(sys, t); },
          py::arg("system"), py::arg("t"));
    m.def("hankel_matrix", [](const LtiSystem& sys, int t) { return hankel_matrix(sys, t); },
          py::arg("system"), py::arg("t"));
    m.def("hankel_singular_values", [](const LtiSystem& sys, int t) {
        return hankel_spectrum(gramians(sys, t)).values;
    }, py::arg("system"), py::arg("t"));
    m.def("loewner_sandwich_epsilon", &loewner_sandwich_epsilon, py::arg("X_ref"), py::arg("X_s"),
          py::arg("min_ratio") = 1e-12);
    m.def("theoretical_epsilon", &theoretical_epsilon, py::arg("n"), py::arg("kappa"));

    m.def("bss_pass", [](const Matrix& candidates, Index budget) {
        const SparsifyResult r = bss_pass(candidates, budget);
        return py::make_tuple(r.weights, r.epsilon_theory);
    }, py::arg("candidates"), py::arg("budget"),
          "Sparsify an isotropic column family; returns (weights, epsilon_theory).");

    m.def("joint_schedule", [](const LtiSystem& sys, int t, double d_s, double d_a, const std::string& variant) {
        py::gil_scoped_release release;
        return dump(joint_schedule(sys, t, d_s, d_a, options_from(variant)));
    }, py::arg("system"), py::arg("t"), py::arg("d_s"), py::arg("d_a"), py::arg("variant") = "proof");
    m.def("separation_schedule", [](const LtiSystem& sys, int t, double d_s, double d_a, const std::string& variant) {
        py::gil_scoped_release release;
        return dump(separation_schedule(sys, t, d_s, d_a, options_from(variant)));
    }, py::arg("system"), py::arg("t"), py::arg("d_s"), py::arg("d_a"), py::arg("variant") = "proof");
    m.def("sensor_schedule", [](const LtiSystem& sys, int t, double d_s, const std::string& variant) {
        py::gil_scoped_release release;
        return dump(sensor_schedule(sys, t, d_s, options_from(variant)));
    }, py::arg("system"), py::arg("t"), py::arg("d_s"), py::arg("variant") = "proof");
    m.def("actuator_schedule", [](const LtiSystem& sys, int t, double d_a, const std::string& variant) {
        py::gil_scoped_release release;
        return dump(actuator_schedule(sys, t, d_a, options_from(variant)));
    }, py::arg("system"), py::arg("t"), py::arg("d_a"), py::arg("variant") = "proof");

    m.def("scheduled_gramians", [](const LtiSystem& sys, const std::string& schedule) {
        const GramianSet g = scheduled_gramians(sys, load_schedule(schedule));
        return py::make_tuple(g.P, g.Q);
    }, py::arg("system"), py::arg("schedule"));
    m.def("verify_schedule", [](const LtiSystem& sys, const std::string& schedule, bool normalize) {
        const Schedule sched = load_schedule(schedule);
        VerifyOptions opts;
        opts.normalize = normalize;
        py::gil_scoped_release release;
        return io::report_to_json(verify_schedule(sys, sched, opts)).dump();
    }, py::arg("system"), py::arg("schedule"), py::arg("normalize") = false);

    m.def("run_sweep", [](const LtiSystem& sys, int t, std::vector<double> d_s, std::vector<double> d_a,
                          const std::string& mode, bool normalize, const std::string& variant) {
        SweepSpec spec;
        spec.t = t;
        spec.sensor_budgets = std::move(d_s);
        spec.actuator_budgets = std::move(d_a);
        spec.mode = sweep_mode_from_string(mode);
        spec.normalize = normalize;
        spec.variant = variant_from(variant);
        SweepResult res = [&] {
            py::gil_scoped_release release;
            return run_sweep(sys, spec);
        }();
        py::dict out;
        out["epsilon"] = res.epsilon_csv();
        out["hankel_norm"] = res.hankel_norm_csv();
        out["log_error"] = res.log_error_csv();
        if (normalize) out["epsilon_normalized"] = res.normalized_epsilon_csv();
        return out;
    }, py::arg("system"), py::arg("t"), py::arg("d_s"), py::arg("d_a"), py::arg("mode") = "joint",
          py::arg("normalize") = false, py::arg("variant") = "proof",
          "Run a budget sweep; returns the CSV tables keyed by name.");
}
