#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "rqpe/bayes.hpp"
#include "rqpe/circuit.hpp"
#include "rqpe/errors.hpp"
#include "rqpe/io.hpp"
#include "rqpe/metrics.hpp"
#include "rqpe/reduction.hpp"
#include "rqpe/simulator.hpp"

namespace py = pybind11;
using namespace rqpe;

namespace {

py::object to_py(const Integer& value) { return py::module_::import("builtins").attr("int")(value.str()); }

py::object to_py(const Rational& value) {
  return py::module_::import("fractions").attr("Fraction")(to_py(value.numerator()), to_py(value.denominator()));
}

template <typename T>
py::list to_py_list(const std::vector<T>& values) {
  py::list out;
  for (const auto& v : values) out.append(to_py(v));
  return out;
}

// Accepts int, str ("p/q"), fractions.Fraction or float.
Rational from_py(const py::handle& value) {
  if (py::isinstance<py::float_>(value)) return rational_from_float(value.cast<double>(), 1e-12);
  return Rational::parse(py::str(value).cast<std::string>());
}

std::vector<Rational> from_py_list(const py::iterable& values) {
  std::vector<Rational> out;
  for (const auto& v : values) out.push_back(from_py(v));
  return out;
}

PhaseSet phase_set(const py::iterable& phases) {
  const auto values = from_py_list(phases);
  return normalize_phase_set(values);
}

py::dict distribution_dict(const OutcomeDistribution& dist) {
  py::dict out;
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
    out[py::str(outcome_label(k, dist.num_lines))] = dist.probabilities[k];
  }
  return out;
}

py::object json_to_py(const Json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

}  // namespace

PYBIND11_MODULE(_rqpe, m) {
  m.doc() = "Reductive quantum phase estimation";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("d", [](const Circuit& c) { return to_py(c.d); })
      .def_property_readonly("gcds", [](const Circuit& c) { return to_py_list(c.gcds); })
      .def_property_readonly("adds", [](const Circuit& c) { return to_py_list(c.adds); })
      .def_property_readonly("u", [](const Circuit& c) { return to_py_list(c.u_vector()); })
      .def_property_readonly("bit_values", [](const Circuit& c) { return to_py_list(c.bit_values); })
      .def_property_readonly("phantoms", [](const Circuit& c) { return std::vector<bool>(c.phantom_flags); })
      .def_property_readonly("num_lines", &Circuit::num_lines)
      .def_property_readonly("num_iterations", &Circuit::num_iterations)
      .def_property_readonly("fallback_used", [](const Circuit& c) { return c.fallback_used; })
      .def_property_readonly("phase_numerators",
                             [](const Circuit& c) { return to_py_list(c.source_phases.numerators); })
      .def("to_json", [](const Circuit& c) { return circuit_to_json(c).dump(2); })
      .def("to_qasm", &to_qasm)
      .def("diagram", &to_diagram)
      .def("__repr__", [](const Circuit& c) {
        return "<rqpe.Circuit d=" + c.d.str() + " lines=" + std::to_string(c.num_lines()) + ">";
      });

  m.def(
      "synthesize",
      [](const py::iterable& phases, bool keep_phantoms) { return synthesize(phase_set(phases), !keep_phantoms); },
      py::arg("phases"), py::arg("keep_phantoms") = false,
      "Circuit distinguishing the given phases (units of pi).");

  m.def(
      "reduce",
      [](const py::iterable& phases) { return json_to_py(trace_to_json(reduce(phase_set(phases)))); },
      py::arg("phases"), "Reduction trace as a dict.");

  m.def(
      "circuit_from_json", [](const std::string& text) {
        try {
          return circuit_from_json(Json::parse(text));
        } catch (const Json::parse_error& e) {
          throw InputError(e.what());
        }
      },
      py::arg("text"));

  m.def(
      "circuit_from_bit_values",
      [](const py::iterable& values) {
        const auto pair = circuit_from_bit_values(from_py_list(values));
        return py::make_tuple(to_py(pair.d), to_py_list(pair.gcds), to_py_list(pair.adds));
      },
      py::arg("bit_values"), "(d, gcds, adds) realizing the bit values.");

  m.def(
      "estimate",
      [](const Circuit& c, const std::string& bits) { return to_py(estimate_theta(c, parse_bits(bits))); },
      py::arg("circuit"), py::arg("bits"), "Phase estimate in units of pi.");

  m.def(
      "distribution", [](const Circuit& c, double theta) { return distribution_dict(outcome_distribution(c, theta)); },
      py::arg("circuit"), py::arg("theta"));
  m.def(
      "statevector_distribution",
      [](const Circuit& c, double theta) { return distribution_dict(statevector_distribution(c, theta)); },
      py::arg("circuit"), py::arg("theta"));
  m.def(
      "sample",
      [](const Circuit& c, double theta, std::uint64_t seed, std::uint64_t run) {
        return to_string(sample_run(c, theta, seed, run));
      },
      py::arg("circuit"), py::arg("theta"), py::arg("seed"), py::arg("run") = 0);

  m.def(
      "verify",
      [](const Circuit& c) {
        const auto report = verify_perfect_distinguishability(c, c.source_phases);
        if (!report.ok) throw VerificationError(report.summary());
        py::dict out;
        for (const auto& [x, bits] : report.assignment) out[to_py(x)] = to_string(bits);
        return out;
      },
      py::arg("circuit"), "Numerator -> deterministic outcome; raises VerificationError on failure.");

  m.def("distance", py::overload_cast<const Circuit&, double, double>(&distance), py::arg("circuit"),
        py::arg("theta_a"), py::arg("theta_b"));
  m.def("cfi_closed_form", &cfi_closed_form, py::arg("circuit"));
  m.def("cfi_numeric", &cfi_numeric, py::arg("circuit"), py::arg("theta"), py::arg("step") = 1e-6);
  m.def(
      "crb_variance", [](std::int64_t runs, double cfi) { return crb_variance(runs, cfi); }, py::arg("runs"),
      py::arg("cfi"));
  m.def("repeated_range", &repeated_range, py::arg("circuit"));
  m.def("unitary_count", [](const Circuit& c) { return to_py(unitary_count(c)); }, py::arg("circuit"));

  m.def(
      "resource_comparison",
      [](double precision, const py::handle& range) {
        return json_to_py(resource_to_json(resource_comparison(precision, from_py(range))));
      },
      py::arg("precision"), py::arg("range"));

  m.def(
      "gate_matrix",
      [](const Circuit& c, bool swapped) {
        const auto mat = rqpe_gate_matrix(c, swapped ? GateOrdering::kSwapped : GateOrdering::kCircuit);
        std::vector<std::vector<std::complex<double>>> rows(mat.dim);
        for (std::size_t k = 0; k < mat.dim; ++k) {
          for (std::size_t j = 0; j < mat.dim; ++j) rows[k].push_back(mat(k, j));
        }
        return rows;
      },
      py::arg("circuit"), py::arg("swapped") = true);

  m.def(
      "run_experiment",
      [](const Circuit& c, double theta, std::int64_t runs, std::pair<double, double> prior, std::size_t grid,
         std::uint64_t seed) {
        const auto posterior = run_experiment(c, theta, runs, {prior.first, prior.second}, grid, seed);
        py::dict out;
        out["grid"] = posterior.grid;
        out["weights"] = posterior.weights;
        std::vector<double> rR, variance;
        for (const auto& point : posterior.trace) {
          rR.push_back(point.unitaries);
          variance.push_back(point.variance);
        }
        out["rR"] = rR;
        out["variance"] = variance;
        std::vector<double> peaks;
        for (const auto& peak : find_peaks(posterior)) peaks.push_back(peak.theta);
        out["peaks"] = peaks;
        return out;
      },
      py::arg("circuit"), py::arg("theta"), py::arg("runs"),
      py::arg("prior") = std::pair<double, double>{0.0, 2.0 * std::numbers::pi}, py::arg("grid") = 4096,
      py::arg("seed") = 0);
}
