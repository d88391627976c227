// bindings.cpp — Python surface: operators, cone membership, catalogs,
// realizations, and the distinguishability game.
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "poptlab/catalog.hpp"
#include "poptlab/cones.hpp"
#include "poptlab/distinguish.hpp"
#include "poptlab/errors.hpp"
#include "poptlab/game.hpp"
#include "poptlab/json_io.hpp"
#include "poptlab/operators.hpp"
#include "poptlab/realization.hpp"

namespace py = pybind11;
using namespace poptlab;

namespace {

std::string table_certificate_json(int which, double tol) {
  std::vector<std::string> labels;
  std::vector<HermitianOperator> states;
  PairLookup lookup;
  if (which == 1) {
    for (const CatalogState8& cs : s8()) {
      labels.push_back(cs.label.text());
      states.push_back(cs.state);
    }
    lookup = [](int i, int j) {
      return table1_measurement(s8()[i].label, s8()[j].label);
    };
  } else if (which == 2) {
    for (const CatalogState24& cs : s24()) {
      labels.push_back(cs.label.text());
      states.push_back(cs.state);
    }
    lookup = [](int i, int j) {
      return table2_measurement(s24()[i].label, s24()[j].label).first;
    };
  } else {
    throw LookupError("table index must be 1 or 2");
  }
  return certificate_to_json(verify_family(labels, states, lookup, tol)).dump();
}

}  // namespace

PYBIND11_MODULE(_poptlab, m) {
  m.doc() = "Native core of poptlab";
  m.attr("__version__") = "0.1.0";

  py::register_exception<LookupError>(m, "CatalogLookupError",
                                      PyExc_LookupError);
  py::register_local_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ShapeError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NotHermitianError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NotPsdError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NotPoptError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NonUnitTraceError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const MeasurementError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const GameError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const SameStateError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    }
  });

  py::class_<SystemShape>(m, "SystemShape")
      .def(py::init<std::vector<int>>())
      .def("dims", &SystemShape::dims)
      .def("total", &SystemShape::total)
      .def("__eq__",
           [](const SystemShape& a, const SystemShape& b) { return a == b; });

  py::class_<HermitianOperator>(m, "HermitianOperator")
      .def(py::init<SystemShape, const Matrix&>())
      .def_property_readonly("shape", &HermitianOperator::shape)
      .def_property_readonly("matrix", &HermitianOperator::matrix)
      .def_property_readonly("dim", &HermitianOperator::dim)
      .def("trace", &HermitianOperator::trace);

  m.def(
      "make_operator",
      [](const std::vector<int>& dims, const Matrix& entries) {
        return HermitianOperator{SystemShape(dims), entries};
      },
      py::arg("dims"), py::arg("matrix"),
      "Operator on the given subsystem layout from a dense complex matrix");

  m.def("tensor", &tensor);
  m.def("partial_trace", &partial_trace, py::arg("operator"), py::arg("keep"));
  m.def("partial_transpose", &partial_transpose, py::arg("operator"),
        py::arg("transposed"));
  m.def("is_psd", &is_psd, py::arg("operator"), py::arg("tol") = kPsdTol);

  py::class_<PoptSearchConfig>(m, "PoptSearchConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &PoptSearchConfig::restarts)
      .def_readwrite("max_iters", &PoptSearchConfig::maxIters)
      .def_readwrite("convergence_tol", &PoptSearchConfig::convergenceTol)
      .def_readwrite("membership_tol", &PoptSearchConfig::membershipTol)
      .def_readwrite("seed", &PoptSearchConfig::seed);

  py::class_<PoptReport>(m, "PoptReport")
      .def_readonly("min_value", &PoptReport::minValue)
      .def_readonly("argmin", &PoptReport::argmin)
      .def_readonly("is_member", &PoptReport::isMember)
      .def_readonly("boundary", &PoptReport::boundary)
      .def_readonly("restart_values", &PoptReport::restartValues);

  m.def("min_product_expectation", &min_product_expectation, py::arg("operator"),
        py::arg("config") = PoptSearchConfig{});
  m.def("is_popt", &is_popt, py::arg("operator"),
        py::arg("config") = PoptSearchConfig{},
        py::arg("require_unit_trace") = false);
  m.def(
      "classify_state",
      [](const HermitianOperator& w, const PoptSearchConfig& cfg) {
        return state_class_name(classify_state(w, cfg));
      },
      py::arg("operator"), py::arg("config") = PoptSearchConfig{},
      "One of 'quantum', 'witness', 'not-a-state'");
  m.def("complement_in_popt_cone", &complement_in_popt_cone, py::arg("operator"),
        py::arg("config") = PoptSearchConfig{});

  m.def("bell_state", [](const std::string& name) {
    for (const CatalogState8& cs : s8()) {
      if (cs.label.text() == name) return cs.state;
    }
    throw LookupError("unknown state label: " + name);
  });
  m.def("s8_labels", []() {
    std::vector<std::string> out;
    for (const CatalogState8& cs : s8()) out.push_back(cs.label.text());
    return out;
  });
  m.def("s8_states", []() {
    std::vector<HermitianOperator> out;
    for (const CatalogState8& cs : s8()) out.push_back(cs.state);
    return out;
  });
  m.def("s24_labels", []() {
    std::vector<std::string> out;
    for (const CatalogState24& cs : s24()) out.push_back(cs.label.text());
    return out;
  });
  m.def("s24_states", []() {
    std::vector<HermitianOperator> out;
    for (const CatalogState24& cs : s24()) out.push_back(cs.state);
    return out;
  });

  m.def("verify_table_json", &table_certificate_json, py::arg("which"),
        py::arg("tol") = 1e-9,
        "Pairwise-distinguishability certificate as a JSON string");

  py::class_<CliqueResult>(m, "CliqueResult")
      .def_readonly("size", &CliqueResult::size)
      .def_readonly("members", &CliqueResult::members);
  m.def("quantum_information_dimension", &quantum_information_dimension,
        py::arg("states"), py::arg("tol") = 1e-9);

  py::class_<PoptRealization>(m, "PoptRealization")
      .def_readonly("v_b", &PoptRealization::vB)
      .def_readonly("v_b_prime", &PoptRealization::vBPrime)
      .def_property_readonly("choi_lambda",
                             [](const PoptRealization& r) { return r.choiLambda.op(); })
      .def_readonly("psi_ar", &PoptRealization::psiAR);
  py::class_<RealizationChecks>(m, "RealizationChecks")
      .def_readonly("reconstruction_residual",
                    &RealizationChecks::reconstructionResidual)
      .def_readonly("unitality_residual", &RealizationChecks::unitalityResidual)
      .def_readonly("marginal_residual", &RealizationChecks::marginalResidual)
      .def_readonly("kraus_residual", &RealizationChecks::krausResidual)
      .def_readonly("psi_residual", &RealizationChecks::psiResidual)
      .def_readonly("choi_block_positive", &RealizationChecks::choiBlockPositive)
      .def_readonly("passed", &RealizationChecks::pass);
  m.def("realize_popt", &realize_popt, py::arg("operator"),
        py::arg("config") = PoptSearchConfig{});
  m.def("verify_realization", &verify_realization, py::arg("operator"),
        py::arg("realization"), py::arg("config") = PoptSearchConfig{});

  py::class_<GameSpec>(m, "GameSpec")
      .def_readonly("n", &GameSpec::n)
      .def_readonly("message_dist", &GameSpec::messageDist)
      .def_readonly("question_dist", &GameSpec::questionDist);
  py::class_<GameStrategy>(m, "GameStrategy")
      .def_property_readonly("encoder",
                             [](const GameStrategy& s) { return s.encoder; });
  py::class_<GameResult>(m, "GameResult")
      .def_readonly("exact_win_prob", &GameResult::exactWinProb)
      .def_readonly("empirical_win_rate", &GameResult::empiricalWinRate)
      .def_readonly("rounds", &GameResult::rounds)
      .def_readonly("seed", &GameResult::seed);
  m.def("uniform_game", &uniform_game, py::arg("n"));
  m.def("builtin_sepbar8", &builtin_sepbar8);
  m.def("builtin_quantum_baseline", &builtin_quantum_baseline, py::arg("n"));
  m.def("exact_win_probability", &exact_win_probability, py::arg("strategy"),
        py::arg("game"));
  m.def("simulate", &simulate, py::arg("strategy"), py::arg("game"),
        py::arg("rounds"), py::arg("seed"));
}
