#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cvbell/bell.hpp"
#include "cvbell/channel.hpp"
#include "cvbell/criteria.hpp"
#include "cvbell/error.hpp"
#include "cvbell/gaussian_state.hpp"
#include "cvbell/homodyne.hpp"
#include "cvbell/io.hpp"
#include "cvbell/wigner.hpp"

namespace cvbell::cli {
namespace {

constexpr double kDefaultTolerance = 1e-9;
constexpr double kDefaultOracleTolerance = 1e-12;

struct Options {
  std::string input;
  std::optional<double> n;
  std::optional<double> c;
  std::string out;
  std::string dataset;
  int resolution = 200;
  double t_min = 0.01;
  double t_max = 1.0;
  int steps = 100;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int trials = 1000;
  std::optional<double> tolerance;
};

// Signals a failure with an exit code after a diagnostic has been written.
struct Exit {
  int code;
};

double resolve_tolerance(const Options& opt, double fallback, std::ostream& err) {
  if (opt.tolerance) return *opt.tolerance;
  if (const char* env = std::getenv("CVE_TOLERANCE"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value >= 0.0)) {
      err << "error: CVE_TOLERANCE is not a non-negative number: " << env << '\n';
      throw Exit{kInputError};
    }
    return value;
  }
  return fallback;
}

std::optional<CovarianceMatrix> load_state(const Options& opt, std::ostream& err,
                                           bool required) {
  const bool from_file = !opt.input.empty();
  const bool inline_state = opt.n.has_value();
  if (from_file && inline_state) {
    err << "error: give either --input or --n/--c, not both\n";
    throw Exit{kInputError};
  }
  if (opt.c && !inline_state) {
    err << "error: --c requires --n\n";
    throw Exit{kInputError};
  }
  if (!from_file && !inline_state) {
    if (!required) return std::nullopt;
    err << "error: a state is required (--input FILE or --n N [--c C])\n";
    throw Exit{kInputError};
  }
  if (inline_state) {
    const double n = *opt.n;
    if (opt.c) return CovarianceMatrix::from_standard_form({n, n, *opt.c, -*opt.c});
    return CovarianceMatrix::from_standard_form(pure_symmetric_state(n));
  }
  std::ifstream in(opt.input);
  if (!in) {
    err << "error: cannot read " << opt.input << '\n';
    throw Exit{kInputError};
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return io::parse_state_text(buffer.str());
}

// Writes to --out when given, else to `out`.
template <typename Writer>
void emit(const Options& opt, std::ostream& out, std::ostream& err, Writer&& write) {
  if (opt.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(opt.out);
  if (!file) {
    err << "error: cannot write " << opt.out << '\n';
    throw Exit{kInputError};
  }
  write(file);
}

void emit_json(const Options& opt, std::ostream& out, std::ostream& err, const nlohmann::json& j) {
  emit(opt, out, err, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  const Tolerance tol{resolve_tolerance(opt, kDefaultTolerance, err)};
  const CovarianceMatrix cm = *load_state(opt, err, true);
  const PhysicalityReport phys = is_physical(cm, tol);

  nlohmann::json report;
  report["invariants"] = io::to_json(symplectic_invariants(cm));
  report["physicality"] = io::to_json(phys);
  report["purity"] = phys.physical ? io::number(purity(cm, tol)) : nlohmann::json();
  report["standard_form"] = nullptr;
  report["criteria"] = nullptr;
  report["region"] = nullptr;
  report["bell"] = nullptr;
  if (phys.physical) {
    const StandardForm sf = standard_form(cm, tol);
    report["standard_form"] = io::to_json(sf);
    report["criteria"] = io::to_json(classify(sf));
    report["symmetric"] = sf.is_symmetric(tol);
    if (sf.is_symmetric(tol)) {
      const double mu_s = single_mode_purity(sf, tol);
      const double corr = correlation_coefficient(sf, tol);
      report["region"] = io::to_json(classify_region(mu_s, corr, tol));
      const BellEvaluation max = maximize_bell(sf.n, sf.c1);
      report["bell"] = {{"optimal_intensity", io::number(max.displacement_intensity)},
                        {"bell_max", io::number(max.value)},
                        {"violates", max.violates}};
    }
  }
  emit_json(opt, out, err, report);
  if (!phys.physical) {
    err << "error: state is unphysical (d_minus = " << io::format_number(phys.d_minus) << ")\n";
    return kUnphysical;
  }
  return kSuccess;
}

StandardForm require_symmetric_form(const CovarianceMatrix& cm, Tolerance tol, std::ostream& err) {
  if (!is_physical(cm, tol).physical) {
    err << "error: state is unphysical\n";
    throw Exit{kUnphysical};
  }
  const StandardForm sf = standard_form(cm, tol);
  if (!sf.is_symmetric(tol)) {
    err << "error: this command needs a symmetric state (n = m, c1 = -c2)\n";
    throw Exit{kPrecondition};
  }
  return sf;
}

int cmd_bell(const Options& opt, std::ostream& out, std::ostream& err) {
  const Tolerance tol{resolve_tolerance(opt, kDefaultTolerance, err)};
  const CovarianceMatrix cm = *load_state(opt, err, true);
  const StandardForm sf = require_symmetric_form(cm, tol, err);
  const BellEvaluation max = maximize_bell(sf.n, sf.c1);
  const NumericBellMax numeric = bell_max_numeric(CovarianceMatrix::from_standard_form(sf));
  const double mu_s = single_mode_purity(sf, tol);
  const double corr = correlation_coefficient(sf, tol);
  nlohmann::json report = {
      {"n", io::number(sf.n)},
      {"c", io::number(sf.c1)},
      {"optimal_intensity", io::number(max.displacement_intensity)},
      {"bell_max", io::number(max.value)},
      {"bell_max_from_purity", io::number(bell_max_from_purity(mu_s, corr, tol))},
      {"numeric", {{"intensity", io::number(numeric.intensity)}, {"value", io::number(numeric.value)}}},
      {"violates", max.violates},
      {"region", io::to_json(classify_region(mu_s, corr, tol))}};
  emit_json(opt, out, err, report);
  return kSuccess;
}

int cmd_region(const Options& opt, std::ostream& out, std::ostream& err) {
  const Tolerance tol{resolve_tolerance(opt, kDefaultTolerance, err)};
  if (opt.resolution < 2) {
    err << "error: --resolution must be >= 2\n";
    return kInputError;
  }
  const auto grid = region_grid(opt.resolution, tol);
  emit(opt, out, err, [&](std::ostream& os) { io::write_region_csv(os, grid); });
  return kSuccess;
}

int cmd_evolve(const Options& opt, std::ostream& out, std::ostream& err) {
  const Tolerance tol{resolve_tolerance(opt, kDefaultTolerance, err)};
  if (opt.t_min > opt.t_max) {
    err << "error: --t-min must not exceed --t-max\n";
    return kInputError;
  }
  if (!(opt.t_min > 0.0 && opt.t_max <= 1.0)) {
    err << "error: transmittivities must lie in (0, 1]\n";
    return kInputError;
  }
  if (opt.steps < 1) {
    err << "error: --steps must be >= 1\n";
    return kInputError;
  }
  const CovarianceMatrix cm = *load_state(opt, err, true);
  if (!is_physical(cm, tol).physical) {
    err << "error: state is unphysical\n";
    return kUnphysical;
  }
  const StandardForm sf = standard_form(cm, tol);
  if (!is_pure_symmetric(sf, tol)) {
    err << "error: evolve needs a pure symmetric ancestor\n";
    return kPrecondition;
  }
  std::vector<double> grid;
  if (opt.steps == 1) {
    grid.push_back(opt.t_max);
  } else {
    for (int k = 0; k < opt.steps; ++k) {
      grid.push_back(opt.t_min + (opt.t_max - opt.t_min) * k / (opt.steps - 1));
    }
  }
  const auto rows = sweep(sf, grid, tol);
  emit(opt, out, err, [&](std::ostream& os) { io::write_sweep_csv(os, rows, true); });
  return kSuccess;
}

int cmd_oracle_check(const Options& opt, std::ostream& out, std::ostream& err) {
  const double tolerance = resolve_tolerance(opt, kDefaultOracleTolerance, err);
  if (opt.trials < 0) {
    err << "error: --trials must be >= 0\n";
    return kInputError;
  }
  std::vector<std::pair<double, double>> states;
  if (const auto cm = load_state(opt, err, false)) {
    const StandardForm sf = standard_form(*cm);
    if (!sf.is_symmetric()) {
      err << "error: oracle-check needs a symmetric state\n";
      return kPrecondition;
    }
    states.emplace_back(sf.n, sf.c1);
  }
  std::mt19937_64 engine(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < opt.trials; ++t) {
    const double n = 0.5 + 4.5 * unit(engine);
    const double c = unit(engine) * std::sqrt((n - 0.5) * (n + 0.5));
    states.emplace_back(n, c);
  }
  if (states.empty()) {
    err << "warning: no trials requested; oracle check passes vacuously\n";
  }

  constexpr int kIntensities = 10;
  double max_deviation = 0.0;
  for (const auto& [n, c] : states) {
    const CovarianceMatrix cm = CovarianceMatrix::from_standard_form({n, n, c, -c});
    const double d = (n - c) * (n + c);
    for (int k = 0; k < kIntensities; ++k) {
      const double intensity = d * k / 3.0;
      const double closed = bell_function(intensity, n, c);
      const double oracle = bell_combination(cm, intensity);
      max_deviation = std::max(max_deviation, std::abs(closed - oracle) / std::abs(oracle));
    }
  }
  const bool pass = max_deviation <= tolerance;
  emit(opt, out, err, [&](std::ostream& os) {
    fmt::print(os, "states: {}\nintensities per state: {}\nmax relative deviation: {:.3e}\n"
                   "tolerance: {:.3e}\nresult: {}\n",
               states.size(), kIntensities, max_deviation, tolerance, pass ? "PASS" : "FAIL");
  });
  return pass ? kSuccess : kOracleFailure;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  const Tolerance tol{resolve_tolerance(opt, kDefaultTolerance, err)};
  if (opt.samples < 2) {
    err << "error: --samples must be >= 2\n";
    return kInputError;
  }
  const CovarianceMatrix cm = *load_state(opt, err, true);
  if (!is_physical(cm, tol).physical) {
    err << "error: state is unphysical\n";
    return kUnphysical;
  }
  const StandardForm sf = standard_form(cm, tol);
  if (!opt.dataset.empty()) {
    std::ofstream file(opt.dataset);
    if (!file) {
      err << "error: cannot write " << opt.dataset << '\n';
      return kInputError;
    }
    const auto settings = default_settings();
    write_dataset_csv(file, sample_quadratures(CovarianceMatrix::from_standard_form(sf),
                                                   settings, opt.samples, opt.seed, tol));
  }
  emit_json(opt, out, err, io::to_json(end_to_end(sf, opt.samples, opt.seed,
                                                  kDefaultBootstrapReplicates, tol)));
  return kSuccess;
}

void add_state_options(CLI::App* sub, Options& opt) {
  sub->add_option("--input", opt.input, "State JSON file ({\"matrix\": ...} or {\"standard_form\": ...})");
  sub->add_option("--n", opt.n, "Inline symmetric state: mode variance n");
  sub->add_option("--c", opt.c, "Inline symmetric state: correlation c (default: pure, sqrt(n^2 - 1/4))");
}

void add_common_options(CLI::App* sub, Options& opt) {
  sub->add_option("--out", opt.out, "Output file (default: stdout)");
  sub->add_option("--tolerance", opt.tolerance, "Relative tolerance (env CVE_TOLERANCE)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Two-mode Gaussian state analysis: entanglement criteria and phase-space Bell tests",
               "cvbell"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Invariants, physicality, criteria and region of a state");
  add_state_options(analyze, opt);
  add_common_options(analyze, opt);

  auto* bell = app.add_subcommand("bell", "Analytic and numeric Bell maximization for a symmetric state");
  add_state_options(bell, opt);
  add_common_options(bell, opt);

  auto* region = app.add_subcommand("region", "Region grid over (mu_s, C_ab) as CSV");
  region->add_option("--resolution", opt.resolution, "Grid points per axis")->capture_default_str();
  add_common_options(region, opt);

  auto* evolve = app.add_subcommand("evolve", "Loss-channel sweep of a pure symmetric ancestor as CSV");
  add_state_options(evolve, opt);
  add_common_options(evolve, opt);
  evolve->add_option("--t-min", opt.t_min, "Smallest transmittivity")->capture_default_str();
  evolve->add_option("--t-max", opt.t_max, "Largest transmittivity")->capture_default_str();
  evolve->add_option("--steps", opt.steps, "Number of grid points")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle-check", "Closed-form Bell function vs Wigner-function oracle");
  add_state_options(oracle, opt);
  add_common_options(oracle, opt);
  oracle->add_option("--trials", opt.trials, "Random symmetric states")->capture_default_str();
  oracle->add_option("--seed", opt.seed, "Random seed")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Synthetic homodyne reconstruction and a posteriori Bell test");
  add_state_options(simulate, opt);
  add_common_options(simulate, opt);
  simulate->add_option("--samples", opt.samples, "Samples per measurement setting")->capture_default_str();
  simulate->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  simulate->add_option("--dataset", opt.dataset, "Write the quadrature samples as CSV");

  std::vector<const char*> argv{"cvbell"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(opt, out, err);
    if (bell->parsed()) return cmd_bell(opt, out, err);
    if (region->parsed()) return cmd_region(opt, out, err);
    if (evolve->parsed()) return cmd_evolve(opt, out, err);
    if (oracle->parsed()) return cmd_oracle_check(opt, out, err);
    if (simulate->parsed()) return cmd_simulate(opt, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const MalformedMatrix& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kInputError;
}

}  // namespace cvbell::cli
