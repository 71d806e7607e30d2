// conjfix — batch CLI over the conjugation library.
//
// Subcommands: fixture, conjugate, fixpoint, fitz {phi,represent,check},
// proptest.  Every run prints a JSON report to stdout; files are only
// written where flags ask for them.  Reports carry no timestamps, so a rerun
// with identical inputs, flags, and seeds is byte-identical.
//
// Exit codes: 0 success, 2 input/contract error, 3 non-convergence,
// 4 property failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "conjfix/conjugation.hpp"
#include "conjfix/errors.hpp"
#include "conjfix/fitzpatrick.hpp"
#include "conjfix/fixpoint.hpp"
#include "conjfix/io.hpp"
#include "conjfix/nonsymmetric.hpp"
#include "conjfix/propsuite.hpp"

namespace {

using conjfix::ExtReal;
using conjfix::Valuation;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitContract = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitPropertyFailure = 4;

json input_entry(const std::string& path) {
  return json{{"path", path}, {"digest", conjfix::digest_file(path)}};
}

json extreal_json(ExtReal v) { return conjfix::extreal_to_json(v); }

json valuation_values(const Valuation& h) { return conjfix::valuation_to_json(h)["values"]; }

json sandwich_json(const conjfix::SandwichCheck& s) {
  return json{{"lower_holds", s.lower_holds},
              {"upper_holds", s.upper_holds},
              {"worst_lower_excess", extreal_json(s.worst_lower_excess)},
              {"worst_upper_excess", extreal_json(s.worst_upper_excess)}};
}

json minimality_json(const conjfix::MinimalityReport& m) {
  return json{{"epsilon", m.epsilon},
              {"indices_checked", m.indices_checked},
              {"failures", m.failures},
              {"passed", m.passed()}};
}

json membership_json(const conjfix::FtMembershipReport& m) {
  json convexity = json::array();
  for (const auto& t : m.convexity) convexity.push_back({t[0], t[1], t[2]});
  return json{{"ok", m.ok()},
              {"below_pi", m.below_pi},
              {"t_mismatch", m.t_mismatch},
              {"convexity_violations", convexity},
              {"pi_touch_off_t", m.pi_touch_off_t}};
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

std::size_t node_cap_from_env() {
  const char* env = std::getenv("CONJFIX_NODE_CAP");
  if (env == nullptr || *env == '\0') return 5000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0' || v == 0)
    throw conjfix::contract_error("CONJFIX_NODE_CAP must be a positive integer, got \"" +
                                  std::string(env) + "\"");
  return static_cast<std::size_t>(v);
}

struct SolverFlags {
  double tol = 1e-9;
  int max_sweeps = 1000;
  std::string rule = "max-gap";
  std::string trace_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", tol, "convergence tolerance on the largest gap")
        ->capture_default_str();
    cmd->add_option("--max-sweeps", max_sweeps, "budget of single-index updates")
        ->capture_default_str();
    cmd->add_option("--rule", rule, "index selection rule")
        ->check(CLI::IsMember({"max-gap", "first-index"}))
        ->capture_default_str();
    cmd->add_option("--trace", trace_file, "write the update trace CSV here");
  }

  conjfix::DescentConfig config() const {
    conjfix::DescentConfig cfg;
    cfg.tolerance = tol;
    cfg.max_sweeps = max_sweeps;
    cfg.rule = rule == "first-index" ? conjfix::SelectionRule::first_index
                                     : conjfix::SelectionRule::max_gap;
    cfg.record_trace = !trace_file.empty();
    return cfg;
  }

  json config_json() const {
    return json{{"tol", tol}, {"max_sweeps", max_sweeps}, {"rule", rule}};
  }
};

json fixpoint_outputs(const conjfix::FixpointResult& res) {
  json out;
  out["converged"] = res.converged;
  out["exact_fixed_point"] = res.exact_fixed_point;
  out["sweeps_used"] = res.sweeps_used;
  out["final_gap"] = extreal_json(res.final_gap);
  out["h"] = valuation_values(res.h);
  if (res.sandwich) out["sandwich"] = sandwich_json(*res.sandwich);
  return out;
}

/// Minimality probe that only runs when the solved point is close enough to
/// self-conjugate for the probe's precondition.
json probe_or_skip(const conjfix::CouplingMatrix& phi, const conjfix::FixpointResult& res,
                   double eps) {
  if (!res.converged) return json{{"skipped", "solver did not converge"}};
  ExtReal residual = conjfix::max_abs_diff(res.h, conjfix::sym_conjugate(phi, res.h));
  if (!(residual <= ExtReal(eps)))
    return json{{"skipped", "residual exceeds the probe epsilon"},
                {"residual", extreal_json(residual)}};
  return minimality_json(conjfix::minimality_probe(phi, res.h, eps));
}

// --- subcommand handlers -----------------------------------------------

int run_fixture(const std::string& coupling_out, const std::string& valuation_out) {
  conjfix::CounterexampleFixture fx = conjfix::counterexample_fixture();
  conjfix::save_coupling(coupling_out, fx.phi);
  conjfix::save_valuation(valuation_out, fx.h);
  json report;
  report["command"] = "fixture";
  report["outputs"] = {{"coupling", coupling_out},
                       {"valuation", valuation_out},
                       {"expected_c1", valuation_values(fx.expected_c1)},
                       {"expected_c2", valuation_values(fx.expected_c2)},
                       {"max_of_conjugates_equals_h", true}};
  report["status"] = "ok";
  report["exit_code"] = kExitOk;
  emit(report);
  return kExitOk;
}

int run_conjugate(const std::string& coupling_file, const std::string& valuation_file,
                  const std::string& which, const std::string& out_file) {
  conjfix::CouplingMatrix phi = conjfix::load_coupling(coupling_file);
  Valuation h = conjfix::load_valuation(valuation_file);
  Valuation result = which == "c1"   ? conjfix::conjugate1(phi, h)
                     : which == "c2" ? conjfix::conjugate2(phi, h)
                                     : conjfix::sym_conjugate(phi, h);
  if (!out_file.empty()) conjfix::save_valuation(out_file, result);

  json report;
  report["command"] = "conjugate";
  report["inputs"] = {{"coupling", input_entry(coupling_file)},
                      {"valuation", input_entry(valuation_file)}};
  report["config"] = {{"which", which}};
  report["outputs"] = {{"values", valuation_values(result)}};
  if (!out_file.empty()) report["outputs"]["file"] = out_file;
  report["status"] = "ok";
  report["exit_code"] = kExitOk;
  emit(report);
  return kExitOk;
}

int run_fixpoint(const std::string& coupling_file, const std::string& start_file,
                 bool symmetrize_flag, const SolverFlags& flags, double probe_eps,
                 const std::string& out_file) {
  conjfix::CouplingMatrix phi = conjfix::load_coupling(coupling_file);
  Valuation start =
      start_file.empty() ? Valuation::top(phi.size()) : conjfix::load_valuation(start_file);
  conjfix::DescentConfig cfg = flags.config();

  json report;
  report["command"] = "fixpoint";
  report["inputs"] = json::object();
  report["inputs"]["coupling"] = input_entry(coupling_file);
  if (!start_file.empty()) report["inputs"]["start"] = input_entry(start_file);
  report["config"] = flags.config_json();
  report["config"]["symmetrize"] = symmetrize_flag;
  report["config"]["probe_eps"] = probe_eps;
  report["config"]["default_start"] = start_file.empty();

  conjfix::FixpointResult res;
  if (symmetrize_flag) {
    conjfix::GeneralMinimalResult gen = conjfix::general_minimal(phi, start, cfg);
    res = std::move(gen.fix);
    report["diagnostics"]["selfconj_residual"] = extreal_json(gen.selfconj_residual);
    report["diagnostics"]["selfconj_ok"] = gen.selfconj_ok;
  } else {
    res = conjfix::solve_fixpoint(phi, start, cfg);
  }

  report["outputs"] = fixpoint_outputs(res);
  conjfix::CouplingMatrix phi_solve = symmetrize_flag ? conjfix::symmetrize(phi) : phi;
  report["diagnostics"]["minimality"] = probe_or_skip(phi_solve, res, probe_eps);

  if (!out_file.empty()) {
    conjfix::save_valuation(out_file, res.h);
    report["outputs"]["file"] = out_file;
  }
  if (!flags.trace_file.empty() && res.trace) {
    conjfix::write_trace_csv(flags.trace_file, *res.trace);
    report["outputs"]["trace_file"] = flags.trace_file;
  }

  report["status"] = res.converged ? "ok" : "nonconverged";
  report["exit_code"] = res.converged ? kExitOk : kExitNoConverge;
  emit(report);
  return res.converged ? kExitOk : kExitNoConverge;
}

struct FitzInputs {
  conjfix::OperatorSample T;
  conjfix::ProductGrid grid;
  std::vector<std::size_t> t_nodes;
};

FitzInputs load_fitz_inputs(const std::string& operator_file, const std::string& grid_file) {
  conjfix::OperatorSample T = conjfix::load_operator_sample(operator_file);
  conjfix::ProductGrid grid = conjfix::load_grid(grid_file);
  conjfix::MonotonicityReport mono = conjfix::monotonicity_check(T);
  if (!mono.monotone)
    throw conjfix::contract_error(
        "operator sample is not monotone (pairs " + std::to_string(mono.violation->first) +
        " and " + std::to_string(mono.violation->second) + ", inner value " +
        conjfix::format_double(mono.inner_value) + ")");
  std::vector<std::size_t> t_nodes;
  t_nodes.reserve(T.pairs.size());
  for (std::size_t i = 0; i < T.pairs.size(); ++i) {
    auto node = grid.find_node(T.pairs[i].first, T.pairs[i].second);
    if (!node)
      throw conjfix::contract_error("operator sample pair " + std::to_string(i) +
                                    " does not lie on a grid node");
    t_nodes.push_back(*node);
  }
  return FitzInputs{std::move(T), std::move(grid), std::move(t_nodes)};
}

int run_fitz_phi(const std::string& operator_file, const std::string& grid_file,
                 const std::string& out_file) {
  FitzInputs in = load_fitz_inputs(operator_file, grid_file);
  std::vector<ExtReal> values;
  values.reserve(in.grid.node_count());
  for (std::size_t i = 0; i < in.grid.node_count(); ++i)
    values.push_back(ExtReal(
        conjfix::fitzpatrick_value(in.T, in.grid.x_of(i), in.grid.xstar_of(i))));
  Valuation phi_t(std::move(values));
  if (!out_file.empty()) conjfix::write_grid_function_tsv(out_file, in.grid, phi_t);

  json report;
  report["command"] = "fitz phi";
  report["inputs"] = {{"operator", input_entry(operator_file)},
                      {"grid", input_entry(grid_file)}};
  report["outputs"] = {{"nodes", in.grid.node_count()},
                       {"t_nodes", in.t_nodes},
                       {"values", valuation_values(phi_t)}};
  if (!out_file.empty()) report["outputs"]["file"] = out_file;
  report["status"] = "ok";
  report["exit_code"] = kExitOk;
  emit(report);
  return kExitOk;
}

int run_fitz_represent(const std::string& operator_file, const std::string& grid_file,
                       const SolverFlags& flags, const std::string& out_file) {
  FitzInputs in = load_fitz_inputs(operator_file, grid_file);
  conjfix::RepresenterResult res =
      conjfix::self_conjugate_representer(in.T, in.grid, flags.config(), node_cap_from_env());
  if (!out_file.empty()) conjfix::write_grid_function_tsv(out_file, in.grid, res.fix.h);

  json report;
  report["command"] = "fitz represent";
  report["inputs"] = {{"operator", input_entry(operator_file)},
                      {"grid", input_entry(grid_file)}};
  report["config"] = flags.config_json();
  report["outputs"] = fixpoint_outputs(res.fix);
  report["outputs"]["indicator_start"] = res.indicator_start;
  if (!out_file.empty()) report["outputs"]["file"] = out_file;
  if (!flags.trace_file.empty() && res.fix.trace) {
    conjfix::write_trace_csv(flags.trace_file, *res.fix.trace);
    report["outputs"]["trace_file"] = flags.trace_file;
  }
  report["diagnostics"]["membership"] = membership_json(res.membership);

  report["status"] = res.fix.converged ? "ok" : "nonconverged";
  report["exit_code"] = res.fix.converged ? kExitOk : kExitNoConverge;
  emit(report);
  return res.fix.converged ? kExitOk : kExitNoConverge;
}

int run_fitz_check(const std::string& operator_file, const std::string& grid_file,
                   const std::string& values_file, double tol) {
  FitzInputs in = load_fitz_inputs(operator_file, grid_file);
  Valuation h = conjfix::load_valuation(values_file);
  conjfix::FtMembershipReport rep = conjfix::ft_membership_grid(in.T, in.grid, h, tol);

  json report;
  report["command"] = "fitz check";
  report["inputs"] = {{"operator", input_entry(operator_file)},
                      {"grid", input_entry(grid_file)},
                      {"values", input_entry(values_file)}};
  report["config"] = {{"tol", tol}};
  report["outputs"] = membership_json(rep);
  report["status"] = rep.ok() ? "ok" : "membership-failure";
  report["exit_code"] = rep.ok() ? kExitOk : kExitPropertyFailure;
  emit(report);
  return rep.ok() ? kExitOk : kExitPropertyFailure;
}

int run_proptest(std::uint64_t cases, std::uint64_t seed, std::size_t size,
                 const std::string& counterexample_file, bool inject_bug) {
  conjfix::PropertySuiteConfig cfg;
  cfg.cases = cases;
  cfg.seed = seed;
  cfg.max_n = size;
  cfg.inject_comparison_bug = inject_bug;
  conjfix::SuiteResult res = conjfix::run_property_suite(cfg);

  json report;
  report["command"] = "proptest";
  report["config"] = {{"cases", cases}, {"seed", seed}, {"size", size}};
  if (inject_bug) report["config"]["inject_bug"] = true;
  report["outputs"] = conjfix::suite_result_to_json(res);

  if (!res.all_passed()) {
    for (const auto& p : res.properties) {
      if (p.failures == 0) continue;
      json ce;
      ce["property"] = p.name;
      ce["counterexample"] = p.first_counterexample;
      std::ofstream out(counterexample_file);
      if (!out) throw conjfix::io_error("cannot open " + counterexample_file + " for writing");
      out << ce.dump(2) << "\n";
      report["outputs"]["counterexample_file"] = counterexample_file;
      break;
    }
    report["status"] = "property-failure";
    report["exit_code"] = kExitPropertyFailure;
    emit(report);
    return kExitPropertyFailure;
  }
  report["status"] = "ok";
  report["exit_code"] = kExitOk;
  emit(report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized conjugation, self-conjugate fixed points, and discretized "
               "representing functions of monotone operators"};
  app.require_subcommand(1);

  // fixture
  std::string fx_coupling_out = "fixture.coupling.json";
  std::string fx_valuation_out = "fixture.valuation.json";
  CLI::App* fixture = app.add_subcommand(
      "fixture", "write the standing two-point counterexample input files");
  fixture->add_option("--coupling-out", fx_coupling_out)->capture_default_str();
  fixture->add_option("--valuation-out", fx_valuation_out)->capture_default_str();

  // conjugate
  std::string cj_coupling, cj_valuation, cj_which, cj_out;
  CLI::App* conjugate = app.add_subcommand("conjugate", "apply a conjugation to a valuation");
  conjugate->add_option("--coupling", cj_coupling, "coupling JSON file")->required();
  conjugate->add_option("--valuation", cj_valuation, "valuation JSON file")->required();
  conjugate->add_option("--which", cj_which, "c1, c2, or sym")
      ->required()
      ->check(CLI::IsMember({"c1", "c2", "sym"}));
  conjugate->add_option("--out", cj_out, "write the conjugate valuation JSON here");

  // fixpoint
  std::string fp_coupling, fp_start, fp_out;
  bool fp_symmetrize = false;
  double fp_probe_eps = 1e-3;
  SolverFlags fp_flags;
  CLI::App* fixpoint =
      app.add_subcommand("fixpoint", "descend to a self-conjugate valuation");
  fixpoint->add_option("--coupling", fp_coupling, "coupling JSON file")->required();
  fixpoint->add_option("--start", fp_start,
                       "start valuation JSON file (default: identically +inf)");
  fixpoint->add_flag("--symmetrize", fp_symmetrize,
                     "symmetrize a general coupling first and verify the result against "
                     "both of its one-sided conjugates");
  fp_flags.attach(fixpoint);
  fixpoint->add_option("--probe-eps", fp_probe_eps, "minimality probe epsilon")
      ->capture_default_str();
  fixpoint->add_option("--out", fp_out, "write the solved valuation JSON here");

  // fitz
  CLI::App* fitz = app.add_subcommand(
      "fitz", "discretized representing functions of a sampled monotone operator");
  fitz->require_subcommand(1);
  std::string fz_operator, fz_grid, fz_out, fz_values;
  double fz_tol = 1e-9;
  SolverFlags fz_flags;

  CLI::App* fitz_phi = fitz->add_subcommand(
      "phi", "evaluate the sampled-operator convexification on the grid");
  fitz_phi->add_option("--operator", fz_operator, "operator sample JSON file")->required();
  fitz_phi->add_option("--grid", fz_grid, "grid JSON file")->required();
  fitz_phi->add_option("--out", fz_out, "write the grid function TSV here");

  CLI::App* fitz_represent = fitz->add_subcommand(
      "represent", "solve for a self-conjugate representing function on the grid");
  fitz_represent->add_option("--operator", fz_operator, "operator sample JSON file")->required();
  fitz_represent->add_option("--grid", fz_grid, "grid JSON file")->required();
  fz_flags.attach(fitz_represent);
  fitz_represent->add_option("--out", fz_out, "write the grid function TSV here");

  CLI::App* fitz_check = fitz->add_subcommand(
      "check", "test a grid function for discrete representing-family membership");
  fitz_check->add_option("--operator", fz_operator, "operator sample JSON file")->required();
  fitz_check->add_option("--grid", fz_grid, "grid JSON file")->required();
  fitz_check->add_option("--values", fz_values, "grid function as a valuation JSON file")
      ->required();
  fitz_check->add_option("--tol", fz_tol, "membership tolerance")->capture_default_str();

  // proptest
  std::uint64_t pt_cases = 1000, pt_seed = 42;
  std::size_t pt_size = 16;
  std::string pt_counterexample = "counterexample.json";
  bool pt_inject = false;
  CLI::App* proptest =
      app.add_subcommand("proptest", "run the randomized structural-identity suite");
  proptest->add_option("--cases", pt_cases, "cases per property")->capture_default_str();
  proptest->add_option("--seed", pt_seed, "RNG seed")->capture_default_str();
  proptest->add_option("--size", pt_size, "largest generated index-set size")
      ->capture_default_str();
  proptest->add_option("--counterexample", pt_counterexample,
                       "where to write the first minimized counterexample")
      ->capture_default_str();
  proptest->add_flag("--inject-bug", pt_inject)->group("");  // test-only, hidden

  try {
    app.parse(argc, argv);
    if (fixture->parsed()) return run_fixture(fx_coupling_out, fx_valuation_out);
    if (conjugate->parsed()) return run_conjugate(cj_coupling, cj_valuation, cj_which, cj_out);
    if (fixpoint->parsed())
      return run_fixpoint(fp_coupling, fp_start, fp_symmetrize, fp_flags, fp_probe_eps, fp_out);
    if (fitz->parsed()) {
      if (fitz_phi->parsed()) return run_fitz_phi(fz_operator, fz_grid, fz_out);
      if (fitz_represent->parsed())
        return run_fitz_represent(fz_operator, fz_grid, fz_flags, fz_out);
      if (fitz_check->parsed()) return run_fitz_check(fz_operator, fz_grid, fz_values, fz_tol);
    }
    if (proptest->parsed())
      return run_proptest(pt_cases, pt_seed, pt_size, pt_counterexample, pt_inject);
    std::cerr << "no subcommand\n";
    return kExitContract;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  } catch (const conjfix::contract_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return kExitContract;
  } catch (const conjfix::io_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitContract;
  } catch (const conjfix::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitContract;
  } catch (const conjfix::invariant_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kExitContract;
  }
}
