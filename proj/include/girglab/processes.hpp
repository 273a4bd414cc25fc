#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "girglab/graph.hpp"

namespace girglab {

struct WalkDistribution {
    std::vector<double> p;
    std::int64_t step = 0;
};

/// pi(v) = deg(v) / 2|E|. Throws on isolated vertices or a disconnected graph.
WalkDistribution stationary_distribution(const Graph& g);

/// Point mass at `start`.
WalkDistribution point_mass(const Graph& g, VertexId start);

/// One step of the walk that holds with probability 1/2.
WalkDistribution lazy_step(const Graph& g, const WalkDistribution& x);

/// (1/2) sum |p_v - q_v|. Sizes must match.
double tv_distance(std::span<const double> p, std::span<const double> q);

struct MixingResult {
    std::int64_t steps = 0;      // first t with TV <= eps, or the budget when not reached
    bool within_budget = true;
    double final_tv = 0.0;
    std::vector<double> tv_curve;  // TV after 0, 1, ..., steps
};

/// Lazy walk from `start`, evolved by exact sparse powering.
MixingResult estimate_mixing_time(const Graph& g, double eps_tv, VertexId start, std::int64_t budget = 100000);
/// Same, from an arbitrary starting distribution.
MixingResult estimate_mixing_time(const Graph& g, double eps_tv, const WalkDistribution& start,
                                  std::int64_t budget = 100000);

struct SpreadResult {
    std::int64_t rounds = 0;  // first round reaching the target, -1 when unreachable
    bool reached = true;
    std::size_t target = 0;
    std::vector<std::size_t> informed;  // informed count after round 0, 1, ...
};

/// Synchronous push: every informed vertex tells one uniform neighbour per round.
/// The target is ceil(coverage * n) vertices. Unreachable targets (source
/// component too small) give reached = false.
SpreadResult push_rumor(const Graph& g, VertexId source, double coverage, std::uint64_t seed,
                        std::int64_t max_rounds = 1'000'000);

/// Each round every infected-susceptible edge transmits with probability beta.
SpreadResult si_spread(const Graph& g, VertexId source, double beta, double coverage, std::uint64_t seed,
                       std::int64_t max_rounds = 1'000'000);

/// Rounds only; throws std::domain_error when the target is unreachable.
std::int64_t push_rumor_rounds(const Graph& g, VertexId source, double coverage, std::uint64_t seed);
std::int64_t si_spread_rounds(const Graph& g, VertexId source, double beta, double coverage, std::uint64_t seed);

/// "round,informed_count" lines with a header.
void write_trace_csv(std::ostream& os, const SpreadResult& r);

}  // namespace girglab
