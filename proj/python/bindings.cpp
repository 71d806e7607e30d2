// Python bindings for the conjugation library.  Valuations cross the
// boundary as plain lists of floats (math.inf / -math.inf for the infinite
// values); report-like results come back as dicts mirroring the CLI's JSON
// reports.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conjfix/conjugation.hpp"
#include "conjfix/errors.hpp"
#include "conjfix/fitzpatrick.hpp"
#include "conjfix/fixpoint.hpp"
#include "conjfix/nonsymmetric.hpp"
#include "conjfix/propsuite.hpp"
#include "conjfix/rng.hpp"

namespace py = pybind11;
using namespace conjfix;

namespace {

Valuation valuation_from(const std::vector<double>& values) {
  std::vector<ExtReal> v;
  v.reserve(values.size());
  for (double x : values) v.push_back(ExtReal(x));
  return Valuation(std::move(v));
}

std::vector<double> valuation_to(const Valuation& h) {
  std::vector<double> out;
  out.reserve(h.size());
  for (ExtReal v : h) out.push_back(v.raw());
  return out;
}

DescentConfig make_config(double tol, int max_sweeps, const std::string& rule,
                          bool record_trace) {
  DescentConfig cfg;
  cfg.tolerance = tol;
  cfg.max_sweeps = max_sweeps;
  if (rule == "max-gap") cfg.rule = SelectionRule::max_gap;
  else if (rule == "first-index") cfg.rule = SelectionRule::first_index;
  else throw contract_error("rule must be \"max-gap\" or \"first-index\"");
  cfg.record_trace = record_trace;
  return cfg;
}

py::dict sandwich_dict(const SandwichCheck& s) {
  py::dict d;
  d["lower_holds"] = s.lower_holds;
  d["upper_holds"] = s.upper_holds;
  d["worst_lower_excess"] = s.worst_lower_excess.raw();
  d["worst_upper_excess"] = s.worst_upper_excess.raw();
  return d;
}

py::dict fixpoint_dict(const FixpointResult& res) {
  py::dict d;
  d["h"] = valuation_to(res.h);
  d["final_gap"] = res.final_gap.raw();
  d["sweeps_used"] = res.sweeps_used;
  d["converged"] = res.converged;
  d["exact_fixed_point"] = res.exact_fixed_point;
  if (res.trace) {
    py::list rows;
    for (const TraceRow& r : *res.trace)
      rows.append(py::make_tuple(r.sweep, r.index, r.t0, r.gap_before.raw()));
    d["trace"] = rows;
  } else {
    d["trace"] = py::none();
  }
  d["sandwich"] = res.sandwich ? py::object(sandwich_dict(*res.sandwich)) : py::none();
  return d;
}

py::dict minimality_dict(const MinimalityReport& m) {
  py::dict d;
  d["epsilon"] = m.epsilon;
  d["indices_checked"] = m.indices_checked;
  d["failures"] = m.failures;
  d["passed"] = m.passed();
  return d;
}

py::dict membership_dict(const FtMembershipReport& m) {
  py::dict d;
  d["ok"] = m.ok();
  d["below_pi"] = m.below_pi;
  d["t_mismatch"] = m.t_mismatch;
  py::list conv;
  for (const auto& t : m.convexity) conv.append(py::make_tuple(t[0], t[1], t[2]));
  d["convexity_violations"] = conv;
  d["pi_touch_off_t"] = m.pi_touch_off_t;
  return d;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default: return py::none();
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized conjugation over finite coupling spaces, self-conjugate fixed "
            "points, and discretized representing functions of monotone operators";

  py::register_exception<contract_error>(m, "ContractError", PyExc_ValueError);
  py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<invariant_error>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<CouplingMatrix>(m, "CouplingMatrix")
      .def(py::init([](const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& rows) {
             return CouplingMatrix::from_rows(labels, rows);
           }),
           py::arg("labels"), py::arg("rows"))
      .def(py::init([](const std::vector<std::vector<double>>& rows) {
             return CouplingMatrix::from_rows(rows);
           }),
           py::arg("rows"))
      .def_property_readonly("n", &CouplingMatrix::size)
      .def_property_readonly("labels", &CouplingMatrix::labels)
      .def_property_readonly("symmetric", &CouplingMatrix::symmetric)
      .def("at", &CouplingMatrix::at, py::arg("r"), py::arg("s"))
      .def("rows", [](const CouplingMatrix& phi) {
        std::vector<std::vector<double>> rows(phi.size(), std::vector<double>(phi.size()));
        for (std::size_t r = 0; r < phi.size(); ++r)
          for (std::size_t s = 0; s < phi.size(); ++s) rows[r][s] = phi.at(r, s);
        return rows;
      })
      .def("__repr__", [](const CouplingMatrix& phi) {
        return "<CouplingMatrix n=" + std::to_string(phi.size()) +
               (phi.symmetric() ? " symmetric" : "") + ">";
      });

  py::class_<OperatorSample>(m, "OperatorSample")
      .def(py::init<int, std::vector<std::pair<std::vector<double>, std::vector<double>>>>(),
           py::arg("d"), py::arg("pairs"))
      .def_readonly("d", &OperatorSample::d)
      .def_readonly("pairs", &OperatorSample::pairs)
      .def("__len__", &OperatorSample::size);

  py::class_<ProductGrid>(m, "ProductGrid")
      .def(py::init<int, std::vector<std::vector<double>>, std::vector<std::vector<double>>>(),
           py::arg("d"), py::arg("x_axes"), py::arg("xstar_axes"))
      .def_property_readonly("d", &ProductGrid::d)
      .def_property_readonly("node_count", &ProductGrid::node_count)
      .def("x_of", [](const ProductGrid& g, std::size_t i) {
        return std::vector<double>(g.x_of(i).begin(), g.x_of(i).end());
      })
      .def("xstar_of", [](const ProductGrid& g, std::size_t i) {
        return std::vector<double>(g.xstar_of(i).begin(), g.xstar_of(i).end());
      })
      .def("pi", &ProductGrid::pi, py::arg("i"))
      .def("find_node", [](const ProductGrid& g, const std::vector<double>& x,
                           const std::vector<double>& xs) -> py::object {
        auto node = g.find_node(x, xs);
        return node ? py::object(py::int_(*node)) : py::object(py::none());
      });

  // conjugation
  m.def("conjugate1", [](const CouplingMatrix& phi, const std::vector<double>& h) {
    return valuation_to(conjugate1(phi, valuation_from(h)));
  });
  m.def("conjugate2", [](const CouplingMatrix& phi, const std::vector<double>& h) {
    return valuation_to(conjugate2(phi, valuation_from(h)));
  });
  m.def("sym_conjugate", [](const CouplingMatrix& phi, const std::vector<double>& h) {
    return valuation_to(sym_conjugate(phi, valuation_from(h)));
  });
  m.def("symmetrize", [](const CouplingMatrix& phi) { return symmetrize(phi); });
  m.def("indicator", [](std::size_t n, const std::vector<std::size_t>& support, double offset) {
    return valuation_to(indicator(n, support, ExtReal(offset)));
  }, py::arg("n"), py::arg("support"), py::arg("offset"));
  m.def("is_in_H", [](const CouplingMatrix& phi, const std::vector<double>& h) {
    MembershipReport r = is_in_H(phi, valuation_from(h));
    py::dict d;
    d["member"] = r.member;
    d["first_violation"] =
        r.first_violation ? py::object(py::int_(*r.first_violation)) : py::object(py::none());
    return d;
  });
  m.def("diag_halves", [](const CouplingMatrix& phi) { return valuation_to(diag_halves(phi)); });

  // descent solver
  m.def("descent_step", [](const CouplingMatrix& phi, const std::vector<double>& h,
                           std::size_t r0) {
    return valuation_to(descent_step(phi, valuation_from(h), r0));
  }, py::arg("phi"), py::arg("h"), py::arg("r0"));
  m.def("solve_fixpoint", [](const CouplingMatrix& phi, const std::vector<double>& start,
                             double tol, int max_sweeps, const std::string& rule,
                             bool record_trace) {
    return fixpoint_dict(solve_fixpoint(phi, valuation_from(start),
                                        make_config(tol, max_sweeps, rule, record_trace)));
  }, py::arg("phi"), py::arg("start"), py::arg("tol") = 1e-9, py::arg("max_sweeps") = 1000,
     py::arg("rule") = "max-gap", py::arg("record_trace") = false);
  m.def("solve_fixpoint_from_top", [](const CouplingMatrix& phi, double tol, int max_sweeps,
                                      const std::string& rule, bool record_trace) {
    return fixpoint_dict(solve_fixpoint(phi, Valuation::top(phi.size()),
                                        make_config(tol, max_sweeps, rule, record_trace)));
  }, py::arg("phi"), py::arg("tol") = 1e-9, py::arg("max_sweeps") = 1000,
     py::arg("rule") = "max-gap", py::arg("record_trace") = false);
  m.def("solve_from_below", [](const CouplingMatrix& phi, const std::vector<double>& g0,
                               double tol, int max_sweeps, const std::string& rule,
                               bool record_trace) {
    return fixpoint_dict(solve_from_below(phi, valuation_from(g0),
                                          make_config(tol, max_sweeps, rule, record_trace)));
  }, py::arg("phi"), py::arg("g0"), py::arg("tol") = 1e-9, py::arg("max_sweeps") = 1000,
     py::arg("rule") = "max-gap", py::arg("record_trace") = false);
  m.def("minimality_probe", [](const CouplingMatrix& phi, const std::vector<double>& h,
                               double epsilon) {
    return minimality_dict(minimality_probe(phi, valuation_from(h), epsilon));
  }, py::arg("phi"), py::arg("h"), py::arg("epsilon"));
  m.def("triple_conjugate_residual", [](const CouplingMatrix& phi,
                                        const std::vector<double>& h) {
    return triple_conjugate_residual(phi, valuation_from(h)).raw();
  });

  // non-symmetric analysis
  m.def("membership_equivalence", [](const CouplingMatrix& phi, const std::vector<double>& h) {
    MembershipEquivalence e = membership_equivalence(phi, valuation_from(h));
    py::dict d;
    d["via_c1"] = e.via_c1;
    d["via_c2"] = e.via_c2;
    d["via_max"] = e.via_max;
    d["agree"] = e.agree();
    return d;
  });
  m.def("general_minimal", [](const CouplingMatrix& phi, const std::vector<double>& g,
                              double tol, int max_sweeps, const std::string& rule) {
    GeneralMinimalResult r =
        general_minimal(phi, valuation_from(g), make_config(tol, max_sweeps, rule, false));
    py::dict d = fixpoint_dict(r.fix);
    d["selfconj_residual"] = r.selfconj_residual.raw();
    d["selfconj_ok"] = r.selfconj_ok;
    return d;
  }, py::arg("phi"), py::arg("g"), py::arg("tol") = 1e-9, py::arg("max_sweeps") = 1000,
     py::arg("rule") = "max-gap");
  m.def("fixed_point_implies_minimal_check", [](const CouplingMatrix& phi,
                                                const std::vector<double>& h,
                                                const std::string& which, double epsilon) {
    Conjugation c = which == "c2" ? Conjugation::c2 : Conjugation::c1;
    if (which != "c1" && which != "c2")
      throw contract_error("which must be \"c1\" or \"c2\"");
    FixedPointMinimalReport r =
        fixed_point_implies_minimal_check(phi, valuation_from(h), c, epsilon);
    py::dict d;
    d["which"] = which;
    d["in_family"] = r.in_family;
    d["symmetrized_fixed_point"] = r.symmetrized_fixed_point;
    d["probe"] = minimality_dict(r.probe);
    return d;
  }, py::arg("phi"), py::arg("h"), py::arg("which"), py::arg("epsilon"));
  m.def("subdifferential_check", [](const CouplingMatrix& phi, const std::vector<double>& h,
                                    std::size_t r0, py::object tol) {
    SubdiffReport r = tol.is_none()
                          ? subdifferential_check(phi, valuation_from(h), r0)
                          : subdifferential_check(phi, valuation_from(h), r0, tol.cast<double>());
    py::dict d;
    d["r0"] = r.r0;
    d["applicable"] = r.applicable;
    d["value_at_r0"] = r.value_at_r0.raw();
    if (r.applicable) {
      d["c1_at_r0"] = r.c1_at_r0.raw();
      d["c2_at_r0"] = r.c2_at_r0.raw();
    }
    d["violations_1"] = r.violations_1;
    d["violations_2"] = r.violations_2;
    d["certified"] = r.certified();
    return d;
  }, py::arg("phi"), py::arg("h"), py::arg("r0"), py::arg("tol") = py::none());
  m.def("counterexample_fixture", []() {
    CounterexampleFixture fx = counterexample_fixture();
    py::dict d;
    d["phi"] = fx.phi;
    d["h"] = valuation_to(fx.h);
    d["expected_c1"] = valuation_to(fx.expected_c1);
    d["expected_c2"] = valuation_to(fx.expected_c2);
    return d;
  });

  // discretized representing functions
  m.def("duality_product", [](const std::vector<double>& x, const std::vector<double>& xs) {
    return duality_product(x, xs);
  });
  m.def("monotonicity_check", [](const OperatorSample& T) {
    MonotonicityReport r = monotonicity_check(T);
    py::dict d;
    d["monotone"] = r.monotone;
    d["violation"] = r.violation
                         ? py::object(py::make_tuple(r.violation->first, r.violation->second))
                         : py::object(py::none());
    d["inner_value"] = r.inner_value;
    return d;
  });
  m.def("fitzpatrick_value", [](const OperatorSample& T, const std::vector<double>& x,
                                const std::vector<double>& xs) {
    return fitzpatrick_value(T, x, xs);
  });
  m.def("build_grid_coupling", &build_grid_coupling, py::arg("grid"),
        py::arg("node_cap") = 5000);
  m.def("j_transform_grid", [](const ProductGrid& grid, const std::vector<double>& h,
                               std::size_t node_cap) {
    return valuation_to(j_transform_grid(grid, valuation_from(h), node_cap));
  }, py::arg("grid"), py::arg("h"), py::arg("node_cap") = 5000);
  m.def("ft_membership_grid", [](const OperatorSample& T, const ProductGrid& grid,
                                 const std::vector<double>& h, double tol) {
    return membership_dict(ft_membership_grid(T, grid, valuation_from(h), tol));
  }, py::arg("T"), py::arg("grid"), py::arg("h"), py::arg("tol") = 1e-9);
  m.def("self_conjugate_representer", [](const OperatorSample& T, const ProductGrid& grid,
                                         double tol, int max_sweeps, const std::string& rule,
                                         std::size_t node_cap) {
    RepresenterResult r =
        self_conjugate_representer(T, grid, make_config(tol, max_sweeps, rule, false), node_cap);
    py::dict d = fixpoint_dict(r.fix);
    d["indicator_start"] = r.indicator_start;
    d["membership"] = membership_dict(r.membership);
    return d;
  }, py::arg("T"), py::arg("grid"), py::arg("tol") = 1e-9, py::arg("max_sweeps") = 1000,
     py::arg("rule") = "max-gap", py::arg("node_cap") = 5000);

  // randomized identity suite
  m.def("run_property_suite", [](std::uint64_t cases, std::uint64_t seed, std::size_t max_n) {
    PropertySuiteConfig cfg;
    cfg.cases = cases;
    cfg.seed = seed;
    cfg.max_n = max_n;
    return json_to_py(suite_result_to_json(run_property_suite(cfg)));
  }, py::arg("cases") = 200, py::arg("seed") = 42, py::arg("max_n") = 12);
}
