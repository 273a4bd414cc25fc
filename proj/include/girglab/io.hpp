#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "girglab/expansion.hpp"
#include "girglab/graph.hpp"
#include "girglab/model.hpp"

namespace girglab {

/// Malformed graph files.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration errors; the message names the offending field.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AnalysisParams {
    double gamma = 2.5;
    double c_prime = 1.0;
    double c1 = 1.0;
    double c2 = 2.0;
    InduceMode mode = InduceMode::WeightThreshold;
    bool allow_subcritical = false;
    ProbePlan probes;
    std::int64_t trials = 100;
    std::int64_t cover_s = 3;
    std::int64_t cover_k = 1;
    std::string target = "induced";  // induced, giant or full: graph used by spectral/walk/rumor/si
    double eps_tv = 0.05;
    std::int64_t walk_budget = 100000;
    double coverage = 0.5;
    double beta = 0.5;
    int coordinate = 0;
    std::vector<std::int64_t> sizes;  // cut-contrast sizes; empty means {n}
    std::vector<int> criteria;        // acceptance ids; empty means all
    std::string scale = "full";       // acceptance: full or quick

    ThresholdConstants constants() const { return {c_prime, c1, c2}; }
};

struct OutputOptions {
    std::string dir = "out";
    std::string format = "csv";  // results table format: csv or json
    bool write_graphs = true;     // generate: write edge/vertex files
    bool traces = false;          // rumor/si: per-round trace files
};

struct ExperimentConfig {
    std::string name = "experiment";
    ModelParams model;
    std::vector<std::uint64_t> seeds{0};
    std::vector<std::string> analyses{"generate"};
    AnalysisParams analysis;
    OutputOptions output;
    int threads = 1;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;
};

/// Names accepted in ExperimentConfig::analyses.
const std::vector<std::string>& known_analyses();

/// gamma must exceed 1/(3 - tau) unless allow_subcritical; throws ConfigError with the hint.
void check_gamma(double gamma, double tau, bool allow_subcritical);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON rendering of a config; parse_config(config_to_json(c)) == c.
std::string config_to_json(const ExperimentConfig& cfg);

/// Shortest-exact decimal with 17 significant digits.
std::string format_real(double x);

void write_edges(std::ostream& os, const Graph& g);
void write_vertices(std::ostream& os, const Graph& g);
/// Writes the edge file, and the vertex file when the graph carries vertex data.
void save_graph(const Graph& g, const std::string& edges_path, const std::string& verts_path);

Graph read_graph(std::istream& edges, std::istream* verts = nullptr);
Graph load_graph(const std::string& edges_path, const std::optional<std::string>& verts_path = std::nullopt);

}  // namespace girglab
