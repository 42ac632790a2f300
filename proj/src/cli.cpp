#include "rqpe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rqpe/bayes.hpp"
#include "rqpe/circuit.hpp"
#include "rqpe/errors.hpp"
#include "rqpe/io.hpp"
#include "rqpe/metrics.hpp"
#include "rqpe/reduction.hpp"
#include "rqpe/simulator.hpp"

namespace rqpe {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(token);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

Rational parse_phase(const std::string& token, double tolerance) {
  if (token.find_first_of(".eE") == std::string::npos) return Rational::parse(token);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse phase '" + token + "'");
  }
  if (used != token.size()) throw InputError("cannot parse phase '" + token + "'");
  return rational_from_float(value, tolerance);
}

std::vector<Rational> parse_phase_list(const std::string& text, double tolerance) {
  std::vector<Rational> out;
  for (const auto& token : split_list(text)) out.push_back(parse_phase(token, tolerance));
  if (out.empty()) throw InputError("no phases given");
  return out;
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    out += line + "\n";
  }
  return out;
}

Circuit load_circuit(const std::string& path) {
  const std::string text = read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return circuit_from_json(doc);
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < values.size(); ++i) s << (i ? ", " : "") << values[i];
  s << ']';
  return s.str();
}

struct ThetaOption {
  std::optional<double> radians;
  std::string over_pi;

  void add(CLI::App* app) {
    app->add_option("--theta", radians, "Phase in radians");
    app->add_option("--theta-pi", over_pi, "Phase in units of pi, e.g. 13/12");
  }
  bool exact() const { return !over_pi.empty(); }
  Rational rational() const { return Rational::parse(over_pi); }
  double value() const {
    if (radians && !over_pi.empty()) throw InputError("give either --theta or --theta-pi, not both");
    if (radians) return *radians;
    if (!over_pi.empty()) return rational().to_double() * std::numbers::pi;
    throw InputError("a phase is required (--theta or --theta-pi)");
  }
};

std::string qubit_bounds_line(const Circuit& circuit) {
  const auto& phases = circuit.source_phases;
  const auto n = static_cast<int>(circuit.num_iterations());
  if (phases.m() < 2) return "qubit bounds: n/a (single phase)";
  const QubitBounds b = qubit_bounds(Integer(phases.m()), phases.h());
  const bool inside = b.lower <= n && n <= b.upper;
  std::ostringstream s;
  s << "qubit bounds: " << b.lower << " <= n <= " << b.upper << " (n = " << n << ", "
    << (inside ? "within" : "outside") << ")";
  return s.str();
}

DistinguishabilityReport require_verified(const Circuit& circuit) {
  auto report = verify_perfect_distinguishability(circuit, circuit.source_phases);
  if (!report.ok) throw VerificationError("circuit does not perfectly distinguish its phases:\n" + report.summary());
  return report;
}

void print_stats(const Circuit& circuit, std::ostream& out) {
  std::vector<std::size_t> phantoms;
  for (std::size_t j = 0; j < circuit.phantom_flags.size(); ++j) {
    if (circuit.phantom_flags[j]) phantoms.push_back(j);
  }
  std::vector<std::string> u;
  for (const auto& value : circuit.u_vector()) u.push_back(value.to_string());
  std::vector<std::string> bits;
  for (const auto& value : circuit.bit_values) bits.push_back(value.to_string());
  out << "lines: " << circuit.num_lines() << " measured of " << circuit.num_iterations() << " iterations\n";
  out << "phantoms: " << join(phantoms) << '\n';
  out << "gcds: " << join(circuit.gcds) << '\n';
  out << "adds: " << join(circuit.adds) << '\n';
  out << "u: " << join(u) << '\n';
  out << "bit values (pi): " << join(bits) << '\n';
  out << "r: " << unitary_count(circuit) << '\n';
  out << "cfi: " << format_double(cfi_closed_form(circuit)) << '\n';
  out << "repeated range: " << format_double(repeated_range(circuit)) << '\n';
  out << qubit_bounds_line(circuit) << '\n';
  out << "fallback: " << (circuit.fallback_used ? "yes (default ladder)" : "no") << '\n';
}

// Phases reachable by summing bit values over every outcome, as numerators over d.
PhaseSet phases_from_bit_values(const Integer& d, const std::vector<Rational>& values) {
  if (values.size() > 20) throw InputError("too many bit values");
  std::vector<Rational> sums;
  for (std::size_t mask = 0; mask < (std::size_t{1} << values.size()); ++mask) {
    Rational s = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if ((mask >> j) & 1U) s += values[j];
    }
    sums.push_back(s.mod(2));
  }
  PhaseSet phases;
  phases.denominator = d;
  for (const auto& s : sums) phases.numerators.push_back((s * Rational(d)).numerator());
  std::sort(phases.numerators.begin(), phases.numerators.end());
  phases.numerators.erase(std::unique(phases.numerators.begin(), phases.numerators.end()), phases.numerators.end());
  return phases;
}

double numeric_cfi_at_generic(const Circuit& circuit, const std::vector<double>& thetas, double& used) {
  for (double theta : thetas) {
    try {
      used = theta;
      return cfi_numeric(circuit, theta);
    } catch (const InputError&) {
    }
  }
  throw InputError("choose generic theta: every probe point has a near-zero outcome probability");
}

// Fixed circuits regenerated by `repro`.
struct NamedCircuit {
  std::string name;
  std::vector<Rational> phases;
};

std::vector<Rational> over(const std::vector<int>& numerators, int d) {
  std::vector<Rational> out;
  for (int x : numerators) out.emplace_back(Integer(x), Integer(d));
  return out;
}

std::vector<NamedCircuit> repro_circuits() {
  return {
      {"ri7", over({0, 1}, 7)},
      {"qpe3", over({0, 1, 2, 3, 4, 5, 6, 7}, 4)},
      {"rqpe61", over({0, 1, 6, 7}, 6)},
      {"fig1", over({21, 22, 64, 65, 107, 108}, 64)},
      {"fig2", over({66, 93, 108, 123, 138}, 70)},
  };
}

struct Options {
  // generate
  std::string phases, phases_file, bit_values, out_path, trace_path, qasm_path;
  double tolerance = 1e-9;
  bool keep_phantoms = false;
  // shared
  std::string circuit_path;
  ThetaOption theta;
  std::size_t grid = 512;
  std::uint64_t seed = 20240101;
  // simulate
  std::size_t samples = 0;
  // distance
  std::optional<double> theta_b;
  // fisher
  std::string fisher_thetas;
  std::int64_t runs = 1000;
  bool sqrt_crb = false;
  // estimate
  std::string bits;
  // bayes
  std::string prior = "0,2";
  std::string posterior_path;
  double min_peak = 0.05;
  // compare
  double precision = 0.0;
  std::string range;
  // export
  std::string format = "qasm";
  // repro
  std::string out_dir;
  std::size_t distance_grid_points = 256;
  std::size_t bayes_grid = 4096;
};

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  const int sources = !o.phases.empty() + !o.phases_file.empty() + !o.bit_values.empty();
  if (sources != 1) throw InputError("give exactly one of --phases, --phases-file, --bit-values");

  Circuit circuit;
  std::optional<ReductionTrace> trace;
  if (!o.bit_values.empty()) {
    const auto values = parse_phase_list(o.bit_values, o.tolerance);
    const GcdAddPair pair = circuit_from_bit_values(values);
    std::vector<Rational> reduced;
    for (const auto& b : values) reduced.push_back(b);
    circuit = build_circuit(pair.d, pair.gcds, pair.adds, phases_from_bit_values(pair.d, reduced));
  } else {
    const std::string text = o.phases.empty() ? strip_comments(read_file(o.phases_file)) : o.phases;
    const PhaseSet phases = normalize_phase_set(parse_phase_list(text, o.tolerance));
    if (phases.m() < 2) throw InputError("need at least two distinct phases");
    trace = reduce(phases);
    circuit = build_circuit(*trace, phases);
    if (!o.keep_phantoms) circuit = remove_phantoms(circuit);
    if (trace->exceeds_m_minus_1) err << "warning: circuit uses more than m-1 lines\n";
  }

  print_stats(circuit, out);
  out << to_diagram(circuit);
  const auto report = require_verified(circuit);
  out << "verified: " << report.assignment.size() << " phases perfectly distinguished\n";
  for (const auto& [x, bits] : report.assignment) {
    out << "  " << format_pi(circuit.source_phases.phase(x)) << " -> " << to_string(bits) << '\n';
  }
  if (!o.out_path.empty()) write_file_atomic(o.out_path, circuit_to_json(circuit).dump(2) + "\n");
  if (!o.trace_path.empty()) {
    if (!trace) throw InputError("--trace-out needs --phases or --phases-file");
    write_file_atomic(o.trace_path, trace_to_json(*trace).dump(2) + "\n");
  }
  if (!o.qasm_path.empty()) write_file_atomic(o.qasm_path, to_qasm(circuit));
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  const double theta = o.theta.value();
  if (o.samples > 0) {
    const LineModel model(circuit);
    std::map<std::string, std::size_t> counts;
    for (std::size_t run = 0; run < o.samples; ++run) counts[to_string(sample_run(model, theta, o.seed, run))]++;
    std::ostringstream csv;
    csv << "outcome,count\n";
    for (const auto& [label, count] : counts) csv << label << ',' << count << '\n';
    emit(o.out_path, csv.str(), out);
    return 0;
  }
  const auto dist = o.theta.exact() ? outcome_distribution(circuit, o.theta.rational())
                                    : outcome_distribution(circuit, theta);
  emit(o.out_path, probmap_csv({dist}), out);
  return 0;
}

int cmd_probmap(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  emit(o.out_path, probmap_csv(probability_map(circuit, o.grid)), out);
  return 0;
}

int cmd_distance(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  if (o.theta_b) {
    out << format_double(distance(circuit, o.theta.value(), *o.theta_b)) << '\n';
    return 0;
  }
  emit(o.out_path, distance_csv(distance_grid(circuit, o.grid)), out);
  return 0;
}

int cmd_fisher(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  std::vector<double> thetas{0.3, 0.4, 0.7, 1.1, 1.9, 2.3};
  if (!o.fisher_thetas.empty()) {
    thetas.clear();
    for (const auto& token : split_list(o.fisher_thetas)) thetas.push_back(std::stod(token));
  }
  const double closed = cfi_closed_form(circuit);
  out << "cfi closed: " << format_double(closed) << '\n';
  if (!o.fisher_thetas.empty()) {
    for (double theta : thetas) {
      out << "cfi numeric at " << format_double(theta) << ": " << format_double(cfi_numeric(circuit, theta)) << '\n';
    }
  } else {
    double used = 0.0;
    const double numeric = numeric_cfi_at_generic(circuit, thetas, used);
    out << "cfi numeric at " << format_double(used) << ": " << format_double(numeric) << '\n';
  }
  const auto form = o.sqrt_crb ? CrbForm::kSqrtProduct : CrbForm::kVariance;
  out << "crb variance (R=" << o.runs << "): " << format_double(crb_variance(o.runs, closed, form)) << '\n';
  return 0;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  out << format_pi(estimate_theta(circuit, parse_bits(o.bits))) << '\n';
  return 0;
}

PriorSupport parse_prior(const std::string& text) {
  if (text == "full") return PriorSupport::circle();
  const auto tokens = split_list(text);
  if (tokens.size() != 2) throw InputError("--prior takes 'lo,hi' in units of pi or 'full'");
  return {Rational::parse(tokens[0]).to_double() * std::numbers::pi,
          Rational::parse(tokens[1]).to_double() * std::numbers::pi};
}

struct ExperimentSummary {
  double final_variance = 0.0;
  double crb = 0.0;
  std::optional<double> slope;
  std::vector<Peak> peaks;
};

ExperimentSummary summarize(const Circuit& circuit, const PosteriorGrid& posterior, double min_peak) {
  ExperimentSummary s;
  s.final_variance = posterior.variance();
  s.crb = crb_variance(std::max<std::int64_t>(posterior.runs_completed, 1), cfi_closed_form(circuit));
  const std::int64_t runs = posterior.runs_completed;
  if (runs >= 20) s.slope = loglog_slope(posterior, runs / 10, runs);
  s.peaks = find_peaks(posterior, min_peak);
  return s;
}

void print_summary(const ExperimentSummary& s, std::ostream& out) {
  out << "final variance: " << format_double(s.final_variance) << '\n';
  out << "crb 1/(R*I): " << format_double(s.crb) << " (ratio " << format_double(s.final_variance / s.crb) << ")\n";
  if (s.slope) out << "log-log slope: " << format_double(*s.slope) << '\n';
  out << "peaks: " << s.peaks.size() << '\n';
  for (const auto& p : s.peaks) {
    out << "  theta " << format_double(p.theta) << " height " << format_double(p.height) << " mass "
        << format_double(p.mass) << '\n';
  }
}

int cmd_bayes(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  const auto posterior =
      run_experiment(circuit, o.theta.value(), o.runs, parse_prior(o.prior), o.bayes_grid, o.seed);
  if (!o.out_path.empty()) write_file_atomic(o.out_path, experiment_csv(posterior));
  if (!o.posterior_path.empty()) write_file_atomic(o.posterior_path, posterior_csv(posterior));
  print_summary(summarize(circuit, posterior, o.min_peak), out);
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto report = resource_comparison(o.precision, Rational::parse(o.range));
  emit(o.out_path, resource_to_json(report).dump(2) + "\n", out);
  return 0;
}

int cmd_export(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit_path);
  std::string content;
  if (o.format == "qasm") {
    content = to_qasm(circuit);
  } else if (o.format == "json") {
    content = circuit_to_json(circuit).dump(2) + "\n";
  } else if (o.format == "diagram") {
    content = to_diagram(circuit);
  } else {
    throw InputError("unknown export format '" + o.format + "'");
  }
  emit(o.out_path, content, out);
  return 0;
}

int cmd_repro(const Options& o, std::ostream& out) {
  if (o.out_dir.empty()) throw InputError("--out-dir is required");
  const fs::path root(o.out_dir);
  std::map<std::string, Circuit> circuits;
  std::ostringstream cfi;
  cfi << "circuit,lines,r,cfi_closed,cfi_numeric,theta,repeated_range\n";
  for (const auto& spec : repro_circuits()) {
    const PhaseSet phases = normalize_phase_set(spec.phases);
    const ReductionTrace trace = reduce(phases);
    const Circuit circuit = remove_phantoms(build_circuit(trace, phases));
    require_verified(circuit);
    write_file_atomic(root / "circuits" / (spec.name + ".json"), circuit_to_json(circuit).dump(2) + "\n");
    write_file_atomic(root / "circuits" / (spec.name + ".trace.json"), trace_to_json(trace).dump(2) + "\n");
    write_file_atomic(root / "circuits" / (spec.name + ".qasm"), to_qasm(circuit));
    write_file_atomic(root / "circuits" / (spec.name + ".txt"), to_diagram(circuit));
    write_file_atomic(root / "probmap" / (spec.name + ".csv"), probmap_csv(probability_map(circuit, o.grid)));
    double used = 0.0;
    const double numeric = numeric_cfi_at_generic(circuit, {0.3, 0.4, 0.7, 1.1, 1.9, 2.3}, used);
    cfi << spec.name << ',' << circuit.num_lines() << ',' << unitary_count(circuit).to_double() << ','
        << format_double(cfi_closed_form(circuit)) << ',' << format_double(numeric) << ',' << format_double(used)
        << ',' << format_double(repeated_range(circuit)) << '\n';
    out << spec.name << ": " << circuit.num_lines() << " lines, verified\n";
    circuits.emplace(spec.name, circuit);
  }
  write_file_atomic(root / "cfi.csv", cfi.str());

  for (const char* name : {"ri7", "qpe3", "rqpe61"}) {
    write_file_atomic(root / "distance" / (std::string(name) + ".csv"),
                      distance_csv(distance_grid(circuits.at(name), o.distance_grid_points)));
  }

  const double theta_true = 13.0 * std::numbers::pi / 12.0;
  const PriorSupport narrow{std::numbers::pi, 7.0 * std::numbers::pi / 6.0};
  Json summary;
  for (const char* name : {"ri7", "qpe3", "rqpe61"}) {
    const Circuit& circuit = circuits.at(name);
    for (const auto& [label, support] : {std::pair{"narrow", narrow}, std::pair{"full", PriorSupport::circle()}}) {
      const auto posterior = run_experiment(circuit, theta_true, o.runs, support, o.bayes_grid, o.seed);
      const fs::path dir = root / (std::string("bayes_") + label);
      write_file_atomic(dir / (std::string(name) + "_trace.csv"), experiment_csv(posterior));
      write_file_atomic(dir / (std::string(name) + "_posterior.csv"), posterior_csv(posterior));
      const auto s = summarize(circuit, posterior, 0.05);
      Json entry;
      entry["final_variance"] = s.final_variance;
      entry["crb"] = s.crb;
      if (s.slope) entry["slope"] = *s.slope;
      entry["peaks"] = s.peaks.size();
      summary[label][name] = std::move(entry);
    }
  }
  write_file_atomic(root / "bayes_summary.json", summary.dump(2) + "\n");
  write_file_atomic(root / "resources.json",
                    resource_to_json(resource_comparison(32.0, Rational(Integer(1), Integer(4)))).dump(2) + "\n");
  out << "wrote " << root.string() << '\n';
  return 0;
}

}  // namespace

std::string format_pi(const Rational& theta_over_pi) {
  const Integer p = theta_over_pi.numerator();
  const Integer q = theta_over_pi.denominator();
  if (p == 0) return "0";
  std::string out;
  if (p == -1) {
    out = "-π";
  } else if (p == 1) {
    out = "π";
  } else {
    out = p.str() + "π";
  }
  if (q != 1) out += "/" + q.str();
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reductive quantum phase estimation toolkit", "rqpe"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Build a circuit that distinguishes a set of phases");
  generate->add_option("--phases", o.phases, "Phases in units of pi, e.g. 21/64,22/64");
  generate->add_option("--phases-file", o.phases_file, "File with phases in units of pi");
  generate->add_option("--bit-values", o.bit_values, "Bit values in units of pi");
  generate->add_option("--tolerance", o.tolerance, "Tolerance for decimal phases");
  generate->add_option("--out", o.out_path, "Circuit JSON output");
  generate->add_option("--trace-out", o.trace_path, "Reduction trace JSON output");
  generate->add_option("--qasm", o.qasm_path, "OpenQASM 3 output");
  generate->add_flag("--keep-phantoms", o.keep_phantoms, "Keep phantom lines in the circuit");

  auto* simulate = app.add_subcommand("simulate", "Outcome distribution or samples at one phase");
  simulate->add_option("--circuit", o.circuit_path)->required();
  o.theta.add(simulate);
  simulate->add_option("--samples", o.samples, "Number of sampled runs");
  simulate->add_option("--seed", o.seed);
  simulate->add_option("--out", o.out_path);

  auto* probmap = app.add_subcommand("probmap", "Outcome probabilities over a phase grid");
  probmap->add_option("--circuit", o.circuit_path)->required();
  probmap->add_option("--grid", o.grid);
  probmap->add_option("--out", o.out_path);

  auto* dist = app.add_subcommand("distance", "Distance between phases");
  dist->add_option("--circuit", o.circuit_path)->required();
  dist->add_option("--grid", o.grid);
  o.theta.add(dist);
  dist->add_option("--theta-b", o.theta_b, "Second phase in radians");
  dist->add_option("--out", o.out_path);

  auto* fisher = app.add_subcommand("fisher", "Classical Fisher information");
  fisher->add_option("--circuit", o.circuit_path)->required();
  fisher->add_option("--thetas", o.fisher_thetas, "Phases in radians for the numeric check");
  fisher->add_option("--runs", o.runs);
  fisher->add_flag("--sqrt-crb", o.sqrt_crb, "Report 1/(sqrt(R) sqrt(I))");

  auto* estimate = app.add_subcommand("estimate", "Phase estimate from measured bits");
  estimate->add_option("--circuit", o.circuit_path)->required();
  estimate->add_option("--bits", o.bits)->required();

  auto* bayes = app.add_subcommand("bayes", "Bayesian reconstruction of a phase");
  bayes->add_option("--circuit", o.circuit_path)->required();
  o.theta.add(bayes);
  bayes->add_option("--runs", o.runs);
  bayes->add_option("--prior", o.prior, "lo,hi in units of pi, or 'full'");
  bayes->add_option("--grid", o.bayes_grid);
  bayes->add_option("--seed", o.seed);
  bayes->add_option("--out", o.out_path, "Variance trace CSV");
  bayes->add_option("--posterior-out", o.posterior_path, "Posterior CSV");
  bayes->add_option("--min-peak", o.min_peak);

  auto* compare = app.add_subcommand("compare", "RI / QPE / RQPE resource comparison");
  compare->add_option("--precision", o.precision)->required();
  compare->add_option("--range", o.range, "Largest phase in units of pi")->required();
  compare->add_option("--out", o.out_path);

  auto* exporter = app.add_subcommand("export", "Export a circuit");
  exporter->add_option("--circuit", o.circuit_path)->required();
  exporter->add_option("--format", o.format)->check(CLI::IsMember({"qasm", "json", "diagram"}));
  exporter->add_option("--out", o.out_path);

  auto* repro = app.add_subcommand("repro", "Regenerate every dataset under one directory");
  repro->add_option("--out-dir", o.out_dir)->required();
  repro->add_option("--seed", o.seed);
  repro->add_option("--grid", o.grid);
  repro->add_option("--runs", o.runs);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return cmd_generate(o, out, err);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (probmap->parsed()) return cmd_probmap(o, out);
    if (dist->parsed()) return cmd_distance(o, out);
    if (fisher->parsed()) return cmd_fisher(o, out);
    if (estimate->parsed()) return cmd_estimate(o, out);
    if (bayes->parsed()) return cmd_bayes(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (exporter->parsed()) return cmd_export(o, out);
    if (repro->parsed()) return cmd_repro(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace rqpe
