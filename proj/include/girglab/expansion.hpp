#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "girglab/graph.hpp"

namespace girglab {

/// |N_ext(s)| / |s|. Throws on an empty set, duplicates or out-of-range ids.
double expansion_ratio(const Graph& g, std::span<const VertexId> s);

struct WorstSet {
    std::vector<VertexId> set;
    double ratio = 0.0;
};

/// Exact minimum of expansion_ratio over nonempty sets of size <= max_size;
/// ties go to the lexicographically smallest set. Throws std::length_error when
/// the number of sets exceeds `budget`.
WorstSet brute_force_min_expansion(const Graph& g, int max_size, std::uint64_t budget = 20'000'000);

/// Greedy growth from `restarts` random start vertices: repeatedly add the
/// external neighbour that adds the fewest new external neighbours (ties: the
/// smallest id), up to max(1, floor(max_frac * n)) vertices. Returns the best
/// prefix seen. restarts < 1 throws.
WorstSet greedy_worst_set(const Graph& g, int restarts, double max_frac, std::uint64_t seed = 0);

/// For each trajectory size s, the smallest ratio reached by any greedy run.
/// Entry s-1 holds size s; sizes no run reached are absent.
std::vector<double> greedy_profile(const Graph& g, int restarts, std::size_t max_size, std::uint64_t seed);

enum class DisconnectedPolicy {
    ReportZero,        // lambda2 = 0, flagged
    Throw,             // std::domain_error
    LargestComponent,  // gap of the largest component, flagged
};

struct SpectralOptions {
    DisconnectedPolicy policy = DisconnectedPolicy::ReportZero;
    std::size_t dense_cutoff = 500;
    double rel_tol = 1e-6;
    int max_iterations = 20000;
};

struct SpectralGap {
    double lambda2 = 0.0;
    bool connected = true;
    std::size_t components = 1;
    std::size_t solved_size = 0;
    std::string method;  // "dense" or "lanczos"
    int iterations = 0;
    bool converged = true;
};

/// Second smallest eigenvalue of I - D^{-1/2} A D^{-1/2}.
SpectralGap spectral_gap(const Graph& g, const SpectralOptions& opt = {});

/// Lanczos path regardless of size; exposed for cross-checks against the dense solve.
SpectralGap spectral_gap_lanczos(const Graph& g, double rel_tol = 1e-6, int max_iterations = 20000);
SpectralGap spectral_gap_dense(const Graph& g);

struct CheegerBounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// (lambda2 / 2, sqrt(2 lambda2)); lambda2 must lie in [0, 2].
CheegerBounds cheeger_bounds(double lambda2);

/// cut(s) / min(vol(s), vol(V \ s)); infinite when either volume is 0.
double conductance(const Graph& g, std::span<const VertexId> s);

enum class InduceMode { WeightThreshold, WeightBand, DegreeThreshold, DegreeBand };

const char* to_string(InduceMode m);
InduceMode induce_mode_from_string(const std::string& s);

struct ThresholdConstants {
    double c_prime = 1.0;  // threshold modes: value >= c' (ln n)^gamma
    double c1 = 1.0;       // band modes: c1 (ln n)^gamma <= value <= c2 (ln n)^gamma
    double c2 = 2.0;
};

/// Bounds of the induced set for this mode at size n.
std::pair<double, double> induce_bounds(InduceMode mode, std::int64_t n, double gamma, const ThresholdConstants& k);

/// Induced subgraph for one of the four modes. Weight modes need vertex data.
SubgraphView induce(const Graph& g, InduceMode mode, double gamma, const ThresholdConstants& k);

struct ProbePlan {
    int grid_points = 8;        // log-spaced sizes between 1 and max_frac |V'|
    double max_frac = 0.5;
    int random_sets = 20;       // per size
    int bfs_sets = 20;          // per size
    int strip_sets = 20;        // per size
    int greedy_restarts = 10;
    double c_d = 2.0;           // used for the predicted column
    std::uint64_t seed = 0;
};

struct ExpansionRow {
    std::int64_t s = 0;
    double worst_ratio = 0.0;
    double predicted = 0.0;
    std::string method;
};

struct ExpansionReport {
    std::size_t v_prime = 0;
    bool connected = false;
    std::size_t components = 0;
    std::size_t min_induced_degree = 0;
    std::vector<ExpansionRow> rows;  // sorted by (s, method)
    double epsilon = 0.0;            // largest eps with observed >= eps * shape on every probed s
    double c_d = 0.0;                // c_d used for epsilon (fitted when the fit is usable)
    double fitted_c_d = 0.0;         // NaN when the slope is outside (0, 1)
    bool fit_used = false;

    /// Smallest ratio over all methods at size s; NaN when s was not probed.
    double worst_at(std::int64_t s) const;
};

struct TheoremCheckConfig {
    double gamma = 1.2;
    double tau = 2.5;
    InduceMode mode = InduceMode::WeightThreshold;
    ThresholdConstants constants;
    ProbePlan probes;
};

/// Probes the induced subgraph with random sets, BFS balls, greedy growth and
/// strip-aligned sets, and compares with eps * min{(ln n)^{gamma(3-tau)},
/// (|V'|/s)^{1-1/c_d}}. Throws when the induced set is empty.
ExpansionReport theorem_check(const Graph& g, const TheoremCheckConfig& cfg);

/// Edges whose endpoints fall on different sides of {x_i < 1/2}.
std::size_t hyperplane_cut_edges(const Graph& g, int coordinate);

}  // namespace girglab
