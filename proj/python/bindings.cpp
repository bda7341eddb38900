// Thin bindings: scenarios and results cross the boundary as JSON text, the
// Python package turns them into dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "mgswap/bba.hpp"
#include "mgswap/coordinator.hpp"
#include "mgswap/errors.hpp"
#include "mgswap/prob_seq.hpp"
#include "mgswap/results.hpp"
#include "mgswap/scenario_io.hpp"

namespace py = pybind11;
using namespace mgswap;

namespace {

Scenario scenario_of(const std::string& text) {
  return text.empty() ? default_scenario() : parse_scenario(text, "<python>");
}

std::string dump(const ResultBundle& b) { return bundle_to_json(b).dump(); }

const char* sense_name(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "==";
  }
  return "?";
}

std::string milp_json(const MilpInstance& m) {
  nlohmann::json j;
  j["maximize"] = m.maximize;
  j["offset"] = m.objective_offset;
  j["c"] = m.objective;
  for (const auto& v : m.variables) {
    j["names"].push_back(v.name);
    j["lower"].push_back(v.lower);
    j["upper"].push_back(v.upper);
    j["integral"].push_back(v.is_integral());
  }
  for (const auto& c : m.constraints) {
    std::vector<double> row(m.num_variables(), 0.0);
    for (const auto& t : c.terms) row[t.var] += t.coef;
    j["A"].push_back(row);
    j["sense"].push_back(sense_name(c.sense));
    j["rhs"].push_back(c.rhs);
  }
  return j.dump();
}

PriceTrack track(const std::vector<double>& prices, const std::vector<int>& modes) {
  if (prices.size() != modes.size()) throw std::invalid_argument("prices and modes differ in length");
  return PriceTrack{prices, modes};
}

std::vector<double> weights(const ProbSeq& s) { return {s.weights().begin(), s.weights().end()}; }

}  // namespace

PYBIND11_MODULE(_mgswap, m) {
  m.doc() = "Microgrid and battery-swapping-station scheduling core";
  m.attr("__version__") = MGSWAP_VERSION;

  static py::exception<InfeasibleError> infeasible(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioError& e) {
      std::string all;
      for (const auto& s : e.errors()) all += (all.empty() ? "" : "\n") + s;
      PyErr_SetString(PyExc_ValueError, all.c_str());
    } catch (const InfeasibleError& e) {
      PyErr_SetString(infeasible.ptr(), e.what());
    }
  });

  m.def("default_scenario", [] { return scenario_text(default_scenario()); });
  m.def("normalize_scenario", [](const std::string& text) { return scenario_text(scenario_of(text)); },
        "Parse, validate and re-emit a scenario.");
  m.def("expected_el", [](const std::string& text) { return make_context(scenario_of(text)).expected_el; },
        py::arg("scenario") = "");

  m.def("solve_joint", [](const std::string& text, int iterations) {
          py::gil_scoped_release nogil;
          const auto ctx = make_context(scenario_of(text));
          return dump(bundle_joint(ctx, solve_joint(ctx, iterations)));
        },
        py::arg("scenario") = "", py::arg("iterations") = 0);
  m.def("compare_pricing", [](const std::string& text) {
          py::gil_scoped_release nogil;
          const auto ctx = make_context(scenario_of(text));
          return dump(bundle_pricing(ctx, compare_pricing(ctx, solve_joint(ctx))));
        },
        py::arg("scenario") = "");
  m.def("sweep_alpha", [](const std::string& text, const std::vector<double>& alphas) {
          py::gil_scoped_release nogil;
          const Scenario sc = scenario_of(text);
          return dump(bundle_sweep(make_context(sc), sweep_alpha(sc, alphas)));
        },
        py::arg("scenario") = "", py::arg("alphas") = std::vector<double>{0.80, 0.85, 0.90, 0.95});

  m.def("station_milp", [](const std::string& text, const std::vector<double>& prices, const std::vector<int>& modes,
                           const std::vector<int>& arrivals) {
          const Scenario sc = scenario_of(text);
          return milp_json(compile_milp(track(prices, modes), arrivals, sc.bss, sc.price).instance);
        },
        py::arg("scenario"), py::arg("prices"), py::arg("modes"), py::arg("arrivals"));
  m.def("solve_station", [](const std::string& text, const std::vector<double>& prices, const std::vector<int>& modes,
                            const std::vector<int>& arrivals) {
          const Scenario sc = scenario_of(text);
          const auto r = solve_lower(track(prices, modes), arrivals, sc.bss, sc.price);
          nlohmann::json j;
          j["status"] = to_string(r.milp.status);
          j["objective"] = r.milp.objective;
          j["x"] = r.milp.x;
          j["f2"] = r.f2;
          j["nodes"] = r.milp.nodes;
          return j.dump();
        },
        py::arg("scenario"), py::arg("prices"), py::arg("modes"), py::arg("arrivals"));

  m.def("atc", [](double q, const std::vector<double>& a, const std::vector<double>& b) {
    return weights(atc(ProbSeq(q, a), ProbSeq(q, b)));
  });
  m.def("stc", [](double q, const std::vector<double>& d, const std::vector<double>& c) {
    return weights(stc(ProbSeq(q, d), ProbSeq(q, c)));
  });
}
