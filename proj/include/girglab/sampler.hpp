#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "girglab/graph.hpp"
#include "girglab/model.hpp"
#include "girglab/random_tape.hpp"

namespace girglab {

/// n records; weight from Purpose::Weight at address v, coordinate k from
/// Purpose::Position at address (v, k).
std::vector<VertexData> sample_vertices(const ModelParams& p);
std::vector<VertexData> sample_vertices(std::uint64_t seed, std::int64_t n, int d, double tau);

struct WeightBand {
    double lo = 0.0;
    double hi = kInfinity;
    bool contains(double w) const { return w >= lo && w <= hi; }
};

namespace detail {
class SlotIndex;
}

/// The edge coins of one draw.
///
/// Each unordered pair {u,v} has one coin, uniform on [0,1) and independent
/// of every other pair; the edge is present iff coin < connection probability.
/// Coins are grouped by (owner, coordinate, distance class, weight layer): the
/// owner is the heavier endpoint, the coordinate is the one realising the
/// minimum cell offset (coordinate 0 for L-infinity), the class is the dyadic
/// bucket of that offset on a grid of 2^K >= n cells, and the layer is
/// floor(log2 w) of the lighter endpoint. Within a group the pairs are laid out
/// in a fixed slot order and a geometric skip stream with the group's kernel
/// envelope q marks candidate slots. A candidate's coin is q*U, any other
/// slot's coin is q + (1-q)*U', which keeps every coin exactly uniform while
/// letting a sampler visit only the candidates.
class CoinTape {
public:
    CoinTape(const ModelParams& p, std::span<const VertexData> vertices);
    ~CoinTape();
    CoinTape(CoinTape&&) noexcept;
    CoinTape& operator=(CoinTape&&) noexcept;

    const ModelParams& params() const;
    std::size_t num_vertices() const;

    /// Symmetric in (u, v). Throws std::invalid_argument when u == v.
    double pair_coin(VertexId u, VertexId v) const;

    /// Kernel envelope of the group holding {u, v}; never below the pair's probability.
    double envelope(VertexId u, VertexId v) const;

    const detail::SlotIndex& index() const { return *index_; }

private:
    std::unique_ptr<detail::SlotIndex> index_;
};

inline double pair_coin(const CoinTape& tape, VertexId u, VertexId v) { return tape.pair_coin(u, v); }

/// Includes uv iff pair_coin(u,v) < connection_probability for every pair.
/// Quadratic; meant as the reference for small n.
Graph sample_graph_naive(const ModelParams& p);
Graph sample_graph_naive(const ModelParams& p, std::vector<VertexData> vertices);

struct SamplerOptions {
    int threads = 1;
    /// When set, only pairs with both weights inside the band are sampled. The
    /// result equals the full draw induced on the band, since coins do not
    /// depend on which pairs get visited.
    std::optional<WeightBand> restrict_to;
};

/// Same edge set as sample_graph_naive, visiting only candidate slots of the
/// coin tape. `gamma` fixes the strip partition and must give at least one strip.
Graph sample_graph_bucketed(const ModelParams& p, double gamma, const SamplerOptions& opt = {});
Graph sample_graph_bucketed(const ModelParams& p, double gamma, std::vector<VertexData> vertices,
                            const SamplerOptions& opt = {});

/// Worker count from GIRG_LAB_THREADS, defaulting to 1.
int default_thread_count();

}  // namespace girglab
