#include "rqpe/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "rqpe/errors.hpp"

namespace rqpe {
namespace {

std::string int_string(const Integer& value) { return value.str(); }

Integer parse_integer(const Json& node, const char* what) {
  if (!node.is_string()) throw InputError(std::string(what) + " must be a decimal string");
  const Rational value = Rational::parse(node.get<std::string>());
  if (!value.is_integer()) throw InputError(std::string(what) + " must be an integer");
  return value.numerator();
}

Rational parse_rational(const Json& node, const char* what) {
  if (!node.is_string()) throw InputError(std::string(what) + " must be a \"p/q\" string");
  return Rational::parse(node.get<std::string>());
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("circuit JSON is missing \"") + key + "\"");
  return doc.at(key);
}

std::vector<Integer> integer_list(const Json& doc, const char* key) {
  const Json& node = field(doc, key);
  if (!node.is_array()) throw InputError(std::string(key) + " must be an array");
  std::vector<Integer> out;
  for (const auto& item : node) out.push_back(parse_integer(item, key));
  return out;
}

Json string_list(const std::vector<Integer>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(int_string(v));
  return out;
}

// Rational as an OpenQASM float expression: 64, (70.0/3), (-43.0/64).
std::string qasm_number(const Rational& value) {
  if (value.is_integer()) return value.numerator().str();
  return "(" + value.numerator().str() + ".0/" + value.denominator().str() + ")";
}

std::vector<std::size_t> positions_by_iteration(const Circuit& circuit) {
  std::vector<std::size_t> pos(circuit.num_iterations(), circuit.lines.size());
  for (std::size_t p = 0; p < circuit.lines.size(); ++p) pos[static_cast<std::size_t>(circuit.lines[p].index)] = p;
  return pos;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

Json circuit_to_json(const Circuit& circuit) {
  Json doc;
  doc["denominator"] = int_string(circuit.d);
  doc["gcds"] = string_list(circuit.gcds);
  doc["adds"] = string_list(circuit.adds);
  doc["phase_numerators"] = string_list(circuit.source_phases.numerators);
  Json lines = Json::array();
  for (const auto& line : circuit.lines) {
    Json entry;
    entry["index"] = line.index;
    entry["u"] = line.u.to_string();
    entry["phantom"] = line.phantom;
    Json cz = Json::array();
    for (const auto& term : line.cz) {
      Json t;
      t["control"] = term.control;
      t["exponent"] = term.exponent.to_string();
      cz.push_back(std::move(t));
    }
    entry["cz"] = std::move(cz);
    Json z = Json::array();
    for (const auto& power : line.z) z.push_back(power.to_string());
    entry["z"] = std::move(z);
    lines.push_back(std::move(entry));
  }
  doc["lines"] = std::move(lines);
  Json bits = Json::array();
  for (const auto& b : circuit.bit_values) bits.push_back(b.to_string());
  doc["bit_values_pi"] = std::move(bits);
  return doc;
}

Circuit circuit_from_json(const Json& doc) {
  try {
    const Integer d = parse_integer(field(doc, "denominator"), "denominator");
    const auto gcds = integer_list(doc, "gcds");
    const auto adds = integer_list(doc, "adds");
    PhaseSet phases;
    phases.denominator = d;
    phases.numerators = integer_list(doc, "phase_numerators");
    validate(phases);

    const Json& lines = field(doc, "lines");
    if (!lines.is_array()) throw InputError("lines must be an array");
    std::vector<CircuitLine> stored;
    for (const auto& node : lines) {
      CircuitLine line;
      line.index = field(node, "index").get<int>();
      line.u = parse_rational(field(node, "u"), "u");
      line.phantom = field(node, "phantom").get<bool>();
      for (const auto& term : field(node, "cz")) {
        line.cz.push_back({field(term, "control").get<int>(), parse_rational(field(term, "exponent"), "exponent")});
      }
      for (const auto& power : field(node, "z")) line.z.push_back(parse_rational(power, "z"));
      stored.push_back(std::move(line));
    }

    Circuit circuit = build_circuit(d, gcds, adds, phases);
    std::vector<bool> present(gcds.size(), false);
    for (const auto& line : stored) {
      if (line.index < 0 || static_cast<std::size_t>(line.index) >= gcds.size()) {
        throw InputError("line index out of range");
      }
      present[static_cast<std::size_t>(line.index)] = true;
      if (line.phantom) circuit.phantom_flags[static_cast<std::size_t>(line.index)] = true;
    }
    bool removed = false;
    for (std::size_t j = 0; j < gcds.size(); ++j) {
      if (!present[j]) {
        circuit.phantom_flags[j] = true;
        removed = true;
      }
      circuit.lines[j].phantom = circuit.phantom_flags[j];
    }
    if (removed) circuit = remove_phantoms(circuit);
    if (doc.contains("fallback_used")) circuit.fallback_used = doc.at("fallback_used").get<bool>();

    if (circuit.lines != stored) throw InputError("circuit JSON lines disagree with its gcds/adds");
    if (doc.contains("bit_values_pi")) {
      std::vector<Rational> bits;
      for (const auto& b : doc.at("bit_values_pi")) bits.push_back(parse_rational(b, "bit value"));
      if (bits != circuit.bit_values) throw InputError("circuit JSON bit values disagree with its gcds/adds");
    }
    return circuit;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed circuit JSON: ") + e.what());
  }
}

Json trace_to_json(const ReductionTrace& trace) {
  Json doc;
  Json sets = Json::array();
  Json moduli = Json::array();
  Json phantoms = Json::array();
  for (const auto& step : trace.steps) {
    sets.push_back(string_list(step.set));
    moduli.push_back(int_string(step.modulus));
    phantoms.push_back(step.phantom);
  }
  sets.push_back(string_list(trace.final_set));
  doc["sets"] = std::move(sets);
  doc["gcds"] = string_list(trace.gcds());
  doc["adds"] = string_list(trace.adds());
  doc["moduli"] = std::move(moduli);
  doc["phantoms"] = std::move(phantoms);
  doc["fallback_used"] = trace.fallback_used;
  return doc;
}

Json resource_to_json(const ResourceReport& report) {
  Json doc;
  doc["precision"] = report.precision;
  doc["range"] = report.range.to_string();
  doc["ri_runs"] = int_string(report.ri_runs);
  doc["ri_total_unitaries"] = report.ri_total_unitaries.to_string();
  doc["qpe_unitaries_bound"] = report.qpe_unitaries_bound;
  doc["qpe_unitaries"] = int_string(report.qpe_unitaries);
  doc["qpe_qubits"] = report.qpe_qubits;
  doc["qpe_better"] = report.qpe_better;
  doc["bins_k"] = int_string(report.bins_k);
  doc["rqpe_unitaries"] = report.rqpe_unitaries;
  doc["ri_window_edge"] = report.ri_window_edge;
  doc["ri_beats_rqpe_bound"] = report.ri_beats_rqpe_bound;
  doc["ri_beats_rqpe_exact"] = report.ri_beats_rqpe_exact;
  return doc;
}

std::string probmap_csv(const std::vector<OutcomeDistribution>& rows) {
  std::ostringstream out;
  const std::size_t n = rows.empty() ? 0 : rows.front().num_lines;
  std::vector<std::size_t> order(std::size_t{1} << n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [n](std::size_t a, std::size_t b) { return outcome_label(a, n) < outcome_label(b, n); });
  out << "theta";
  for (auto k : order) out << ",M_" << outcome_label(k, n);
  out << '\n';
  for (const auto& row : rows) {
    out << format_double(row.theta);
    for (auto k : order) out << ',' << format_double(row.probabilities[k]);
    out << '\n';
  }
  return out.str();
}

std::string distance_csv(const DistanceGrid& grid) {
  std::ostringstream out;
  out << "theta";
  for (double t : grid.thetas) out << ',' << format_double(t);
  out << '\n';
  for (std::size_t a = 0; a < grid.size(); ++a) {
    out << format_double(grid.thetas[a]);
    for (std::size_t b = 0; b < grid.size(); ++b) out << ',' << format_double(grid(a, b));
    out << '\n';
  }
  return out.str();
}

std::string experiment_csv(const PosteriorGrid& posterior) {
  std::ostringstream out;
  out << "rR,variance,map_theta\n";
  for (const auto& point : posterior.trace) {
    out << format_double(point.unitaries) << ',' << format_double(point.variance) << ','
        << format_double(point.map_theta) << '\n';
  }
  return out.str();
}

std::string posterior_csv(const PosteriorGrid& posterior) {
  std::ostringstream out;
  out << "theta,weight\n";
  for (std::size_t i = 0; i < posterior.grid.size(); ++i) {
    out << format_double(posterior.grid[i]) << ',' << format_double(posterior.weights[i]) << '\n';
  }
  return out.str();
}

std::string to_qasm(const Circuit& circuit) {
  const std::size_t n = circuit.lines.size();
  const auto pos = positions_by_iteration(circuit);
  std::ostringstream out;
  out << "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n\n";
  out << "input float[64] theta;\n";
  out << "qubit[" << n << "] q;\n";
  out << "bit[" << n << "] c;\n\n";
  for (std::size_t p = 0; p < n; ++p) out << "h q[" << p << "];\n";
  for (std::size_t p = 0; p < n; ++p) {
    out << "rz(" << qasm_number(circuit.lines[p].u) << "*theta) q[" << p << "];\n";
  }
  for (std::size_t p = 0; p < n; ++p) {
    const auto& line = circuit.lines[p];
    out << '\n';
    for (const auto& term : line.cz) {
      out << "ctrl @ p(pi*" << qasm_number(term.exponent) << ") q[" << pos.at(static_cast<std::size_t>(term.control))
          << "], q[" << p << "];\n";
    }
    for (const auto& power : line.z) out << "p(pi*" << qasm_number(power) << ") q[" << p << "];\n";
    out << "h q[" << p << "];\n";
    out << "c[" << p << "] = measure q[" << p << "];\n";
  }
  return out.str();
}

std::string to_diagram(const Circuit& circuit) {
  const auto pos = positions_by_iteration(circuit);
  std::ostringstream out;
  for (std::size_t p = 0; p < circuit.lines.size(); ++p) {
    const auto& line = circuit.lines[p];
    out << "q" << p << " (iteration " << line.index << (line.phantom ? ", phantom" : "") << "): H  U^" << line.u;
    for (const auto& term : line.cz) {
      out << "  CZ[q" << pos.at(static_cast<std::size_t>(term.control)) << "]^" << term.exponent;
    }
    for (const auto& power : line.z) out << "  Z^" << power;
    out << "  H  measure  b=" << circuit.bit_values.at(static_cast<std::size_t>(line.index)) << " pi\n";
  }
  for (std::size_t j = 0; j < circuit.num_iterations(); ++j) {
    if (pos[j] == circuit.lines.size()) {
      out << "phantom iteration " << j << " removed, always 1, b=" << circuit.bit_values[j] << " pi\n";
    }
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace rqpe
