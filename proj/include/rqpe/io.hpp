#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "rqpe/bayes.hpp"
#include "rqpe/circuit.hpp"
#include "rqpe/metrics.hpp"
#include "rqpe/reduction.hpp"
#include "rqpe/simulator.hpp"

namespace rqpe {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double ("0.25", "1e-05").
std::string format_double(double value);

Json circuit_to_json(const Circuit& circuit);

/// Rebuilds a circuit from its JSON form. The stored lines must agree with the
/// ones derived from (denominator, gcds, adds); otherwise InputError.
Circuit circuit_from_json(const Json& doc);

Json trace_to_json(const ReductionTrace& trace);
Json resource_to_json(const ResourceReport& report);

/// Header `theta,M_<bits>...` with labels in lexicographic order, one row per grid node.
std::string probmap_csv(const std::vector<OutcomeDistribution>& rows);

/// N+1 by N+1 table; the first row and column hold the theta values.
std::string distance_csv(const DistanceGrid& grid);

std::string experiment_csv(const PosteriorGrid& posterior);
std::string posterior_csv(const PosteriorGrid& posterior);

/// OpenQASM 3 with `theta` as an input parameter.
std::string to_qasm(const Circuit& circuit);

/// Plain-text summary of the lines, one row per line.
std::string to_diagram(const Circuit& circuit);

/// Writes through a temporary sibling and renames it into place. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace rqpe
