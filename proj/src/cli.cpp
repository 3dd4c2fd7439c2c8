#include "deforma/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/expression.hpp"
#include "deforma/fractional.hpp"
#include "deforma/output.hpp"
#include "deforma/qcalc.hpp"
#include "deforma/qpotential.hpp"
#include "deforma/special.hpp"
#include "deforma/spectral.hpp"
#include "deforma/verify.hpp"

namespace deforma::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string format;  // empty until parsed: text for verify, csv otherwise
  std::string output;

  std::string only;
  std::uint64_t seed = 1;

  std::string method;
  std::string kind;
  std::string op;
  std::string parity = "none";
  std::string r_text;
  std::string f_text;

  double q = 0.0;
  double Q = 0.0;
  double alpha = 0.0;
  double D = 1.0;
  double p = 0.0;
  double at = 0.0;
  double L = 8.0;
  int N = 401;
  int nmax = 10;
  int n = 0;
  double tol = 1e-10;
};

// Options whose presence matters, keyed by flag name.
class Given {
 public:
  void track(CLI::Option* option) { options_.push_back(option); }
  bool has(const std::string& name) const {
    for (const CLI::Option* o : options_) {
      if (o->check_lname(name) && o->count() > 0) return true;
    }
    return false;
  }
  void require(const std::string& name, const std::string& context) const {
    if (!has(name)) throw UsageError(context + " requires --" + name);
  }

 private:
  std::vector<CLI::Option*> options_;
};

void emit(const output::Table& table, const Settings& s, std::ostream& out) {
  output::write_output(output::render(table, output::parse_format(s.format)), s.output, out);
}

void report_warnings(const Warnings& warnings, std::ostream& err) {
  std::vector<std::string> seen;
  for (const std::string& w : warnings) {
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
    seen.push_back(w);
    err << "deforma: warning: " << w << '\n';
  }
}

Parity parse_parity(const std::string& name) {
  if (name == "even") return Parity::even;
  if (name == "odd") return Parity::odd;
  return Parity::none;
}

Grid symmetric_grid(const Settings& s) {
  if (!(s.L > 0.0)) throw UsageError("--L must be positive");
  if (s.N < 2) throw UsageError("--N must be at least 2");
  return Grid::uniform(-s.L, s.L, static_cast<std::size_t>(s.N));
}

void require_order(double alpha, double lo, bool lo_open, double hi, const char* op) {
  const bool ok = (lo_open ? alpha > lo : alpha >= lo) && alpha < hi;
  if (!ok) {
    throw DomainError(std::string(op) + ": alpha must lie in " + (lo_open ? "(" : "[") +
                      format_number(lo) + ", " + format_number(hi) + ")");
  }
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Settings& s, std::ostream& out) {
  const std::vector<verify::Record> records = verify::run({s.only, s.seed});
  std::string text;
  if (s.format == "text") {
    text = verify::format_report(records);
  } else {
    output::Table table;
    table.meta = {{"command", "verify"},
                  {"seed", std::to_string(s.seed)},
                  {"only", s.only.empty() ? "all" : s.only}};
    std::vector<std::string> status;
    std::vector<std::string> module;
    std::vector<std::string> name;
    std::vector<double> max_error;
    std::vector<double> tolerance;
    std::vector<std::string> detail;
    for (const verify::Record& r : records) {
      const bool info = r.status == verify::Status::info;
      status.emplace_back(verify::to_string(r.status));
      module.push_back(r.module);
      name.push_back(r.name);
      max_error.push_back(info ? kNaN : r.max_error);
      tolerance.push_back(info ? kNaN : r.tolerance);
      detail.push_back(r.detail);
    }
    table.add("status", std::move(status))
        .add("module", std::move(module))
        .add("check", std::move(name))
        .add("max_error", std::move(max_error))
        .add("tolerance", std::move(tolerance))
        .add("detail", std::move(detail));
    text = output::render(table, output::parse_format(s.format));
  }
  output::write_output(text, s.output, out);
  return verify::all_passed(records) ? kExitSuccess : kExitVerificationFailed;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const Settings& s, const Given& given, std::ostream& out) {
  if (s.nmax < 0) throw UsageError("--nmax must be >= 0");
  spectral::SpectrumResult result;
  double param = 0.0;
  if (s.method == "q") {
    given.require("q", "spectrum --method q");
    result = spectral::q_oscillator_energies(s.q, s.nmax);
    param = s.q;
  } else if (s.method == "wkb") {
    given.require("alpha", "spectrum --method wkb");
    result = spectral::wkb_energies(s.alpha, s.nmax);
    param = s.alpha;
  } else if (s.method == "numeric") {
    given.require("alpha", "spectrum --method numeric");
    result = spectral::fractional_oscillator_numeric(s.alpha, s.L, s.N, s.nmax + 1);
    param = s.alpha;
  } else {
    given.require("D", "spectrum --method dunkl");
    result = spectral::d_oscillator_energies(s.D, s.nmax);
    param = s.D;
  }

  output::Table table;
  table.meta = result.params;
  table.meta["command"] = "spectrum";
  table.meta["method"] = s.method;
  table.meta["nmax"] = std::to_string(s.nmax);
  std::vector<double> n;
  for (std::size_t i = 0; i < result.energies.size(); ++i) n.push_back(static_cast<double>(i));
  const std::size_t rows = result.energies.size();
  table.add("n", std::move(n))
      .add("energy", result.energies)
      .add("method", std::vector<std::string>(rows, spectral::to_string(result.method)))
      .add("param", std::vector<double>(rows, param));
  emit(table, s, out);
  return kExitSuccess;
}

// ---------------------------------------------------------------- profile

int cmd_profile(const Settings& s, const Given& given, std::ostream& out) {
  const Grid grid = symmetric_grid(s);
  output::Table table;

  if (s.kind == "density") {
    given.require("D", "profile --kind density");
    given.require("p", "profile --kind density");
    table = output::profile_table(spectral::probability_density(s.p, s.D, grid), "rho");
  } else if (s.kind == "psi") {
    given.require("D", "profile --kind psi");
    given.require("p", "profile --kind psi");
    const FunctionHandle psi = spectral::free_particle_psi(s.p, s.D);
    std::vector<Complex> values;
    for (double xi : grid.abscissae()) values.push_back(psi(xi));
    table = output::profile_table(
        Profile(grid, std::move(values),
                {{"kind", "psi"}, {"p", format_number(s.p)}, {"D", format_number(s.D)}}));
  } else if (s.kind == "eigen") {
    given.require("D", "profile --kind eigen");
    const dcalc::Eigenstate state = dcalc::eigenfunction(s.n, s.D);
    std::vector<Complex> values;
    for (double xi : grid.abscissae()) values.emplace_back(state.evaluate(xi), 0.0);
    table = output::profile_table(Profile(grid, std::move(values),
                                          {{"kind", "eigen"},
                                           {"n", std::to_string(s.n)},
                                           {"D", format_number(s.D)},
                                           {"norm2", format_number(std::pow(kPi, s.D / 2.0))}}));
  } else if (s.kind == "qp") {
    given.require("r", "profile --kind qp");
    const FunctionHandle r = parse_expression(s.r_text);
    const Parity parity = parse_parity(s.parity);
    if (parity == Parity::none && s.D != 1.0) {
      throw UsageError("profile --kind qp with --D other than 1 needs --parity even|odd");
    }
    std::vector<Complex> values;
    int omitted = 0;
    for (double xi : grid.abscissae()) {
      const bool singular = (parity != Parity::none && xi == 0.0) || std::abs(r.real(xi)) < 1e-10;
      if (singular) {
        values.emplace_back(kNaN, 0.0);
        ++omitted;
        continue;
      }
      const double v = (parity == Parity::none) ? qpotential::qp_standard(r, xi)
                                                : qpotential::qp_deformed(r, s.D, parity, xi);
      values.emplace_back(v, 0.0);
    }
    table = output::profile_table(Profile(grid, std::move(values),
                                          {{"kind", "qp"},
                                           {"D", format_number(s.D)},
                                           {"parity", s.parity},
                                           {"r", s.r_text},
                                           {"omitted", std::to_string(omitted)}}));
  } else {
    given.require("r", "profile --kind qp-check");
    const Parity parity = parse_parity(s.parity);
    if (parity == Parity::none) throw UsageError("profile --kind qp-check needs --parity even|odd");
    const Profile c =
        qpotential::qp_relation_check(parse_expression(s.r_text), s.D, parity, grid);
    double max_abs = 0.0;
    for (const Complex& v : c.values()) {
      if (!std::isnan(v.real())) max_abs = std::max(max_abs, std::abs(v.real()));
    }
    table = output::profile_table(c);
    table.meta["r"] = s.r_text;
    table.meta["max_abs"] = format_number(max_abs);
    table.meta["tol"] = format_number(s.tol);
    table.meta["within_tol"] = max_abs <= s.tol ? "true" : "false";
  }

  table.meta["command"] = "profile";
  table.meta["L"] = format_number(s.L);
  table.meta["N"] = std::to_string(s.N);
  emit(table, s, out);
  return kExitSuccess;
}

// ---------------------------------------------------------------- deriv

int cmd_deriv(const Settings& s, const Given& given, std::ostream& out, std::ostream& err) {
  given.require("f", "deriv");
  const FunctionHandle f = parse_expression(s.f_text);
  Warnings warnings;
  std::function<double(double)> apply;
  output::Table table;
  table.meta = {{"command", "deriv"}, {"op", s.op}, {"f", s.f_text}};

  if (s.op == "q") {
    given.require("q", "deriv --op q");
    qcalc::require_deformation(s.q, "deriv --op q");
    const FunctionHandle d = qcalc::q_derivative(f, s.q);
    apply = [d](double x) { return d.real(x); };
    table.meta["q"] = format_number(s.q);
  } else if (s.op == "Q") {
    given.require("Q", "deriv --op Q");
    qcalc::require_deformation(s.Q, "deriv --op Q");
    const FunctionHandle d = qcalc::Q_derivative(f, s.Q);
    apply = [d](double x) { return d.real(x); };
    table.meta["Q"] = format_number(s.Q);
  } else if (s.op == "caputo" || s.op == "riesz" || s.op == "feller") {
    given.require("alpha", "deriv --op " + s.op);
    Warnings* sink = &warnings;
    if (s.op == "caputo") {
      require_order(s.alpha, 0.0, true, 2.0, "caputo");
      apply = [f, s, sink](double x) { return fractional::caputo(f, s.alpha, x, 1.0 / 512, sink); };
    } else if (s.op == "riesz") {
      require_order(s.alpha, 0.0, true, 2.0, "riesz");
      apply = [f, s, sink](double x) {
        return fractional::riesz(f, s.alpha, x, fractional::kDefaultCutoff, fractional::kDefaultStep,
                                 sink);
      };
    } else {
      require_order(s.alpha, 0.0, false, 1.0, "feller");
      apply = [f, s, sink](double x) {
        return fractional::feller(f, s.alpha, x, fractional::kDefaultCutoff,
                                  fractional::kDefaultStep, sink);
      };
    }
    table.meta["alpha"] = format_number(s.alpha);
  } else {
    given.require("D", "deriv --op dunkl");
    dcalc::require_dimension(s.D, "deriv --op dunkl");
    const FunctionHandle d = dcalc::d_derivative(f, s.D);
    apply = [d](double x) { return d.real(x); };
    table.meta["D"] = format_number(s.D);
  }

  if (given.has("at")) {
    const double value = apply(s.at);
    report_warnings(warnings, err);
    if (s.format == "csv") {
      output::write_output(format_number(value) + "\n", s.output, out);
      return kExitSuccess;
    }
    table.meta["at"] = format_number(s.at);
    table.add("x", std::vector<double>{s.at}).add("value", std::vector<double>{value});
    emit(table, s, out);
    return kExitSuccess;
  }

  // Grid mode: points where the operator is undefined (x = 0 for the
  // difference quotients, x <= 0 for Caputo) are written as NaN.
  const Grid grid = symmetric_grid(s);
  std::vector<double> values;
  int omitted = 0;
  for (double x : grid.abscissae()) {
    try {
      values.push_back(apply(x));
    } catch (const DomainError&) {
      values.push_back(kNaN);
      ++omitted;
    }
  }
  report_warnings(warnings, err);
  table.meta["L"] = format_number(s.L);
  table.meta["N"] = std::to_string(s.N);
  table.meta["omitted"] = std::to_string(omitted);
  table.add("x", grid.abscissae()).add("value", std::move(values));
  emit(table, s, out);
  return kExitSuccess;
}

void add_output_options(CLI::App* cmd, Settings& s, std::vector<std::string> formats,
                        const std::string& fallback) {
  cmd->add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->default_str(fallback);
  cmd->add_option("--output", s.output, "Write to this file instead of standard output");
}

void add_grid_options(CLI::App* cmd, Settings& s) {
  cmd->add_option("-L,--L", s.L, "Half-width of the grid [-L, L]")->capture_default_str();
  cmd->add_option("-N,--N", s.N, "Number of grid points")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  Given given;
  CLI::App app("Deformed and fractional calculus toolkit", "deforma");
  app.set_version_flag("--version", "deforma 0.1.0");
  app.require_subcommand(1);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the identity suite");
  verify_cmd->add_option("--only", s.only, "Restrict to one module")
      ->check(CLI::IsMember(verify::module_names()));
  verify_cmd->add_option("--seed", s.seed, "Seed of the random corpora")->capture_default_str();
  add_output_options(verify_cmd, s, {"text", "csv", "json"}, "text");

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Oscillator energy levels");
  spectrum_cmd->add_option("--method", s.method, "q | wkb | numeric | dunkl")
      ->required()
      ->check(CLI::IsMember({"q", "wkb", "numeric", "dunkl"}));
  given.track(spectrum_cmd->add_option("--q", s.q, "q deformation"));
  given.track(spectrum_cmd->add_option("--alpha", s.alpha, "Fractional order"));
  given.track(spectrum_cmd->add_option("--D", s.D, "Fractional dimension"));
  spectrum_cmd->add_option("--nmax", s.nmax, "Highest level")->capture_default_str();
  add_grid_options(spectrum_cmd, s);

  CLI::App* profile_cmd = app.add_subcommand("profile", "Densities, wavefunctions, quantum potentials");
  profile_cmd->add_option("--kind", s.kind, "density | psi | eigen | qp | qp-check")
      ->required()
      ->check(CLI::IsMember({"density", "psi", "eigen", "qp", "qp-check"}));
  given.track(profile_cmd->add_option("--D", s.D, "Fractional dimension"));
  given.track(profile_cmd->add_option("--p", s.p, "Momentum"));
  profile_cmd->add_option("--n", s.n, "Level of the eigenfunction")->capture_default_str();
  profile_cmd->add_option("--parity", s.parity, "even | odd | none")
      ->check(CLI::IsMember({"even", "odd", "none"}))
      ->capture_default_str();
  given.track(profile_cmd->add_option("--r", s.r_text, "Amplitude as a function of x"));
  profile_cmd->add_option("--tol", s.tol, "Tolerance reported by qp-check")->capture_default_str();
  add_grid_options(profile_cmd, s);

  CLI::App* deriv_cmd = app.add_subcommand("deriv", "Deformed and fractional derivatives");
  deriv_cmd->add_option("--op", s.op, "q | Q | caputo | riesz | feller | dunkl")
      ->required()
      ->check(CLI::IsMember({"q", "Q", "caputo", "riesz", "feller", "dunkl"}));
  given.track(deriv_cmd->add_option("--f", s.f_text, "Function of x"));
  given.track(deriv_cmd->add_option("--q", s.q, "q deformation"));
  given.track(deriv_cmd->add_option("--Q", s.Q, "Q deformation"));
  given.track(deriv_cmd->add_option("--alpha", s.alpha, "Fractional order"));
  given.track(deriv_cmd->add_option("--D", s.D, "Fractional dimension"));
  given.track(deriv_cmd->add_option("--at", s.at, "Evaluate at one point instead of a grid"));
  add_grid_options(deriv_cmd, s);

  for (CLI::App* cmd : {spectrum_cmd, profile_cmd, deriv_cmd}) {
    add_output_options(cmd, s, {"csv", "json"}, "csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  if (s.format.empty()) s.format = verify_cmd->parsed() ? "text" : "csv";
  try {
    if (verify_cmd->parsed()) return cmd_verify(s, out);
    if (spectrum_cmd->parsed()) return cmd_spectrum(s, given, out);
    if (profile_cmd->parsed()) return cmd_profile(s, given, out);
    return cmd_deriv(s, given, out, err);
  } catch (const UsageError& e) {
    err << "deforma: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "deforma: cannot parse function: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "deforma: " << e.what() << '\n';
    return kExitDomain;
  } catch (const RangeError& e) {
    err << "deforma: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "deforma: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::runtime_error& e) {
    err << "deforma: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace deforma::cli
