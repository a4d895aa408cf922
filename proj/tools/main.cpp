#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "msym/dsl.hpp"
#include "msym/hamiltonian.hpp"
#include "msym/multiphase.hpp"
#include "msym/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;     // parse errors and other failures
constexpr int kExitRejected = 2;  // non-Poisson / non-Hamiltonian inputs

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw msym::usage_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* poisson_class_name(msym::PoissonClass c) {
  switch (c) {
    case msym::PoissonClass::poisson: return "poisson";
    case msym::PoissonClass::weak_poisson: return "weak-poisson";
    case msym::PoissonClass::hamiltonian_only: return "hamiltonian-only";
    case msym::PoissonClass::not_hamiltonian: return "not-hamiltonian";
  }
  return "unknown";
}

/// Fetches a named value from a document, or parses the argument as an
/// inline expression against the document.
msym::DslValue named_or_expression(const msym::DslDocument& doc,
                                   const std::string& arg) {
  if (const msym::DslValue* v = doc.find(arg)) return *v;
  return msym::parse_expression(arg, doc);
}

msym::Form as_form(const msym::DslValue& v, const msym::Chart& chart,
                   const std::string& what) {
  if (const auto* f = std::get_if<msym::Form>(&v)) return *f;
  if (const auto* s = std::get_if<msym::Scalar>(&v))
    return msym::Form::from_scalar(chart, *s);
  throw msym::usage_error(what + " must be a differential form");
}

msym::Multivector as_multivector(const msym::DslValue& v,
                                 const std::string& what) {
  if (const auto* m = std::get_if<msym::Multivector>(&v)) return *m;
  throw msym::usage_error(what + " must be a multivector field");
}

msym::DslDocument load_document(const std::string& file, int n, int N) {
  if (!file.empty()) return msym::parse_document(read_file(file));
  msym::DslDocument doc;
  doc.chart = msym::Chart::extended(n, N);
  return doc;
}

int cmd_check(const std::string& suite, int n, int N, std::uint64_t seed,
              int trials, int max_degree, bool json) {
  msym::SuiteReport report =
      msym::run_suite(suite, n, N, seed, trials, max_degree);
  std::cout << (json ? report.render_json() : report.render_text());
  return report.all_pass() ? kExitOk : kExitError;
}

int cmd_bracket(const std::string& file, const std::string& fname,
                const std::string& gname) {
  msym::DslDocument doc = msym::parse_document(read_file(file));
  msym::Form f = as_form(named_or_expression(doc, fname), doc.chart, "--f");
  msym::Form g = as_form(named_or_expression(doc, gname), doc.chart, "--g");
  for (const auto& [name, form] : {std::pair{fname, f}, std::pair{gname, g}}) {
    msym::PoissonClass c = msym::is_poisson_form(form);
    if (c != msym::PoissonClass::poisson &&
        c != msym::PoissonClass::weak_poisson) {
      std::cerr << "'" << name << "' is not a Poisson form (classification: "
                << poisson_class_name(c) << ")\n";
      return kExitRejected;
    }
  }
  msym::HamiltonianPair a = msym::solve_hamiltonian_field(f);
  msym::HamiltonianPair b = msym::solve_hamiltonian_field(g);
  msym::Form result = msym::poisson_bracket(a, b);
  std::cout << result.render() << "\n";
  int natural_degree = doc.chart.n() + 1 - a.r() - b.r();
  if (natural_degree < 0) std::cout << "note: degree underflow\n";
  return kExitOk;
}

int cmd_kernel(int degree, int n, int N) {
  msym::Chart chart = msym::Chart::extended(n, N);
  msym::KernelBasis kb = msym::kernel_basis(chart, degree);
  std::cout << "degree: " << kb.degree << "\n";
  std::cout << "elements: " << kb.elements.size() << "\n";
  for (const msym::Multivector& e : kb.elements)
    std::cout << e.render() << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& file, const std::string& fname) {
  msym::DslDocument doc = msym::parse_document(read_file(file));
  msym::Form f = as_form(named_or_expression(doc, fname), doc.chart, "--f");
  try {
    msym::HamiltonianPair pair = msym::solve_hamiltonian_field(f);
    std::cout << "f = " << pair.f.render() << "\n";
    std::cout << "X = " << pair.X.render() << "\n";
    return kExitOk;
  } catch (const msym::not_hamiltonian_error& e) {
    std::cerr << "'" << fname << "' is not a Hamiltonian form: " << e.what()
              << "\n";
    return kExitRejected;
  }
}

int cmd_momentum_map(const std::string& file, const std::string& xarg, int n,
                     int N) {
  msym::DslDocument doc = load_document(file, n, N);
  msym::Multivector X = as_multivector(named_or_expression(doc, xarg), "--X");
  if (!msym::is_exact_hamiltonian(X)) {
    std::cerr << "'" << xarg << "' is not an exact Hamiltonian field\n";
    return kExitRejected;
  }
  msym::HamiltonianPair j = msym::momentum_map(X);
  std::cout << j.f.render() << "\n";
  return kExitOk;
}

int cmd_ddw(const std::string& file, const std::string& harg, int n, int N) {
  msym::DslDocument doc = load_document(file, n, N);
  const msym::Chart& chart = doc.chart;
  msym::DslValue hv = named_or_expression(doc, harg);
  const auto* H = std::get_if<msym::Scalar>(&hv);
  if (!H) throw msym::usage_error("--H must be a scalar Hamiltonian");
  std::vector<msym::Multivector> fields = msym::de_donder_weyl_field(chart, *H);
  for (std::size_t mu = 0; mu < fields.size(); ++mu)
    std::cout << "X" << (mu + 1) << " = " << fields[mu].render() << "\n";
  msym::Multivector X = fields[0];
  for (std::size_t mu = 1; mu < fields.size(); ++mu)
    X = msym::wedge(X, fields[mu]);
  msym::Scalar h =
      -*H - msym::Scalar::variable(chart.vars(), chart.energy_index());
  msym::Form residual =
      msym::contract(msym::omega(chart), X) -
      msym::exterior_derivative(msym::Form::from_scalar(chart, h));
  if (!residual.is_zero()) {
    std::cerr << "verification failed: i_X omega != dh\n";
    return kExitError;
  }
  std::cout << "verified: i_X omega = dh\n";
  return kExitOk;
}

int cmd_connection(const std::string& file, const std::string& bundle) {
  msym::DslDocument doc = msym::parse_document(read_file(file));
  msym::ConnectionData conn = doc.connection();
  msym::Bundle b;
  if (bundle == "VE") b = msym::Bundle::VE;
  else if (bundle == "VstarE") b = msym::Bundle::VstarE;
  else if (bundle == "piTM") b = msym::Bundle::piTM;
  else if (bundle == "piTstarM") b = msym::Bundle::piTstarM;
  else if (bundle == "piVolM") b = msym::Bundle::piVolM;
  else if (bundle == "JvecE") b = msym::Bundle::JvecE;
  else if (bundle == "JE") b = msym::Bundle::JE;
  else if (bundle == "OrdinaryMultiphase") b = msym::Bundle::OrdinaryMultiphase;
  else if (bundle == "ExtendedMultiphase") b = msym::Bundle::ExtendedMultiphase;
  else throw msym::usage_error("unknown bundle: " + bundle);
  msym::InducedConnection ic = msym::induce(conn, b);
  std::cout << "bundle: " << msym::bundle_name(ic.bundle) << "\n";
  for (const std::string& fiber : ic.fiber) {
    const auto& rows = ic.coefficients.at(fiber);
    for (std::size_t mu = 0; mu < rows.size(); ++mu)
      std::cout << fiber << "[" << (mu + 1) << "] = " << rows[mu].render()
                << "\n";
  }
  return kExitOk;
}

int cmd_eval(const std::string& file, const std::string& name,
             const std::string& expr) {
  msym::DslDocument doc = msym::parse_document(read_file(file));
  if (!expr.empty()) {
    std::cout << msym::render_value(msym::parse_expression(expr, doc)) << "\n";
    return kExitOk;
  }
  if (!name.empty()) {
    const msym::DslValue* v = doc.find(name);
    if (!v) throw msym::usage_error("no definition named '" + name + "'");
    std::cout << msym::render_value(*v) << "\n";
    return kExitOk;
  }
  for (const auto& [n2, v] : doc.definitions)
    std::cout << n2 << " = " << msym::render_value(v) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic engine for multiphase-space exterior calculus"};
  app.require_subcommand(1);

  std::string suite = "all", file, fname, gname, xarg, harg, bundle, name, expr;
  int n = 2, N = 1, trials = 25, max_degree = 2, degree = 2;
  std::uint64_t seed = 42;
  bool json = false;

  CLI::App* check = app.add_subcommand("check", "Run identity suites");
  check->add_option("--suite", suite,
                    "schouten|calculus|multiphase|poisson|vertical|"
                    "connections|all");
  check->add_option("--n", n, "Base dimension");
  check->add_option("--N", N, "Fiber dimension");
  check->add_option("--seed", seed, "Random seed");
  check->add_option("--trials", trials, "Trials per identity");
  check->add_option("--max-degree", max_degree, "Max polynomial degree");
  check->add_flag("--json", json, "JSON report");

  CLI::App* bracket =
      app.add_subcommand("bracket", "Poisson bracket of two Poisson forms");
  bracket->add_option("--file", file, "Document file")->required();
  bracket->add_option("--f", fname, "First form (name or expression)")
      ->required();
  bracket->add_option("--g", gname, "Second form (name or expression)")
      ->required();

  CLI::App* kernel =
      app.add_subcommand("kernel", "Constant kernel basis of omega");
  kernel->add_option("--degree", degree, "Multivector degree")->required();
  kernel->add_option("--n", n, "Base dimension");
  kernel->add_option("--N", N, "Fiber dimension");

  CLI::App* solve =
      app.add_subcommand("solve", "Solve i_X omega = df for a form");
  solve->add_option("--file", file, "Document file")->required();
  solve->add_option("--f", fname, "Form (name or expression)")->required();

  CLI::App* mm = app.add_subcommand("momentum-map",
                                    "Momentum map of an exact field");
  mm->add_option("--X", xarg, "Field (name or expression)")->required();
  mm->add_option("--file", file, "Document file");
  mm->add_option("--n", n, "Base dimension");
  mm->add_option("--N", N, "Fiber dimension");

  CLI::App* ddw = app.add_subcommand("ddw", "De Donder-Weyl fields");
  ddw->add_option("--H", harg, "Hamiltonian (name or expression)")->required();
  ddw->add_option("--file", file, "Document file");
  ddw->add_option("--n", n, "Base dimension");
  ddw->add_option("--N", N, "Fiber dimension");

  CLI::App* connection =
      app.add_subcommand("connection", "Induced connection coefficients");
  connection->add_option("--bundle", bundle, "Bundle kind")->required();
  connection->add_option("--file", file, "Connection document")->required();

  CLI::App* eval = app.add_subcommand("eval", "Render definitions");
  eval->add_option("--file", file, "Document file")->required();
  eval->add_option("--name", name, "Definition to print");
  eval->add_option("--expr", expr, "Inline expression");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check(suite, n, N, seed, trials, max_degree, json);
    if (bracket->parsed()) return cmd_bracket(file, fname, gname);
    if (kernel->parsed()) return cmd_kernel(degree, n, N);
    if (solve->parsed()) return cmd_solve(file, fname);
    if (mm->parsed()) return cmd_momentum_map(file, xarg, n, N);
    if (ddw->parsed()) return cmd_ddw(file, harg, n, N);
    if (connection->parsed()) return cmd_connection(file, bundle);
    if (eval->parsed()) return cmd_eval(file, name, expr);
  } catch (const msym::parse_error& e) {
    std::cerr << "parse error at " << e.line << ":" << e.column << ": "
              << e.what() << "\n";
    return kExitError;
  } catch (const msym::not_hamiltonian_error& e) {
    std::cerr << "not Hamiltonian: " << e.what() << "\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
