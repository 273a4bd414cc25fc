#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "girglab/graph.hpp"
#include "girglab/model.hpp"

namespace girglab {

struct StripWidth {
    std::int64_t count = 0;  // M
    double width = 0.0;      // 1/M
};

/// M = floor(n / (ln n)^{2 gamma}). Throws std::invalid_argument when M = 0,
/// naming the smallest n that gives a strip.
StripWidth strip_width(std::int64_t n, double gamma);

/// Smallest n >= 3 with at least one strip for this gamma.
std::int64_t min_n_for_strips(double gamma);

/// Per-coordinate strip membership of a vertex set.
class StripIndex {
public:
    StripIndex(std::span<const VertexData> vertices, std::int64_t n, double gamma);
    /// Uses the graph's vertex data; n is the graph size.
    StripIndex(const Graph& g, double gamma);
    /// Explicit strip count, for callers that fix M directly.
    StripIndex(std::span<const VertexData> vertices, std::int64_t strips);

    std::int64_t n() const { return n_; }
    int dim() const { return d_; }
    std::int64_t strips() const { return m_; }
    double width() const { return 1.0 / static_cast<double>(m_); }

    std::uint32_t strip_of(VertexId v, int i) const { return ids_[std::size_t(v) * d_ + i]; }
    std::span<const VertexId> bucket(int i, std::uint32_t strip) const;

private:
    void build(std::span<const VertexData> vertices);

    std::int64_t n_ = 0;
    int d_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::uint32_t> ids_;
    // per coordinate: CSR over strips
    std::vector<std::vector<std::size_t>> start_;
    std::vector<std::vector<VertexId>> members_;
};

/// Strip id of a coordinate value for M strips.
std::uint32_t strip_id(double x, std::int64_t strips);

struct StripSpread {
    std::int64_t k_star = 0;
    int coordinate = 0;
};

/// Largest number of distinct i-strips met by s, over all coordinates i
/// (ties: smallest coordinate). Throws on an empty set.
StripSpread strip_spread(const StripIndex& idx, std::span<const VertexId> s);

/// Kept neighbours u of parent vertex v sharing v's i-strip with lo <= w_u <= hi.
std::size_t same_strip_neighbors(const SubgraphView& view, const StripIndex& idx, VertexId v, int i,
                                 double lo = 1.0, double hi = kInfinity);

struct CoverBoundInput {
    std::int64_t nv = 0;
    std::int64_t s = 0;
    std::int64_t k = 0;
    std::int64_t strips = 0;  // M
    int d = 1;

    void validate() const;
};

/// Natural log of C(nv,s) * C(M,k)^d * (k/M)^{ds}, via lgamma.
double log_cover_bound(const CoverBoundInput& in);

/// The same quantity with each log binomial replaced by the entropy bound
/// log C(n,k) <= n H(k/n); never below log_cover_bound.
double log_cover_bound_stirling(const CoverBoundInput& in);

/// min{1, exp(log_cover_bound)}.
double cover_bound(const CoverBoundInput& in);

struct CoverDecision {
    bool covered = false;
    bool exact = true;
};

/// Whether some s vertices of `members` lie in at most k strips of every
/// coordinate. Strip choices are enumerated over occupied strips of all but the
/// last coordinate, where the k fullest strips are optimal. When that search
/// exceeds `budget` nodes the answer uses only the first two coordinates
/// (which can only overstate coverage) and `exact` is false.
CoverDecision covered_by_strips(const StripIndex& idx, std::span<const VertexId> members, std::int64_t s,
                                std::int64_t k, std::int64_t budget = 2'000'000);

struct CoverEstimate {
    double frequency = 0.0;
    /// Mean over trials of the capped bound at that trial's |V'|.
    double mean_bound = 0.0;
    double mean_nv = 0.0;
    std::int64_t trials = 0;
    /// Set when some trial fell back to the overstating check.
    bool upper_estimate = false;
};

/// Monte Carlo over seeds p.seed + t. V' is the vertex set with weight >=
/// c_prime * (ln n)^gamma. Throws when strip_width fails or trials < 1.
CoverEstimate empirical_cover_probability(const ModelParams& p, double gamma, std::int64_t s, std::int64_t k,
                                          std::int64_t trials, double c_prime = 1.0);

}  // namespace girglab
