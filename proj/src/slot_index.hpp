#pragma once

// Slot layout shared by CoinTape and the bucketed sampler.
//
// MCD: one system per coordinate, keys are cells of a 2^K grid on that
// coordinate, class t is the dyadic bucket of the circular cell offset.
// L-infinity: a single system keyed by the Morton code of the vertex's cell in
// a 2^L-per-side grid; class t = L - l where l is the finest level at which
// the two aligned dyadic blocks touch.

#include <cstdint>
#include <span>
#include <vector>

#include "girglab/graph.hpp"
#include "girglab/model.hpp"
#include "girglab/random_tape.hpp"

namespace girglab::detail {

struct Range {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t size() const { return end - begin; }
};

/// Index ranges into one (system, layer) ordering.
struct Segments {
    std::vector<Range> r;
    std::uint32_t total = 0;

    void clear() {
        r.clear();
        total = 0;
    }
    void push(Range x) {
        if (x.end > x.begin) {
            r.push_back(x);
            total += x.size();
        }
    }
};

class SlotIndex {
public:
    SlotIndex(const ModelParams& p, std::span<const VertexData> vertices);

    const ModelParams& params() const { return p_; }
    std::size_t n() const { return n_; }
    int systems() const { return systems_; }
    int max_class() const { return max_class_; }

    double weight(VertexId v) const { return weight_[v]; }
    int layer(VertexId v) const { return layer_[v]; }
    std::span<const double> position(VertexId v) const { return {pos_.data() + std::size_t(v) * d_, std::size_t(d_)}; }

    bool owns(VertexId a, VertexId b) const {
        return weight_[a] > weight_[b] || (weight_[a] == weight_[b] && a < b);
    }

    /// System whose slot groups hold the pair.
    int canonical_system(VertexId a, VertexId b) const;
    /// Distance class of the pair within system i.
    int pair_class(VertexId a, VertexId b, int i) const;

    std::size_t layer_size(int i, int j) const { return order_[slot(i, j)].size(); }
    /// Slots of owner a's group (i, t, j), written into out.
    void segments(int i, int j, VertexId a, int t, Segments& out) const;
    VertexId at(int i, int j, const Segments& s, std::uint32_t pos) const;
    VertexId member(int i, int j, std::uint32_t rank) const { return order_[slot(i, j)][rank]; }
    /// Position of b within s; b must lie in one of its ranges.
    std::uint32_t locate(int i, VertexId b, const Segments& s) const;

    double envelope(double w_owner, int j, int t) const;
    double probability(VertexId a, VertexId b) const;

    /// Group address used for the tape streams.
    static std::uint64_t pack(int i, int t, int j) {
        return (std::uint64_t(i) << 32) | (std::uint64_t(t) << 16) | std::uint64_t(j);
    }
    /// Non-candidate slots between candidate k-1 and candidate k.
    double skip(VertexId owner, std::uint64_t group, std::uint64_t k, double q) const;
    double candidate_uniform(VertexId owner, std::uint64_t group, std::uint64_t slot) const {
        return tape_.uniform(Purpose::EdgeCoin, owner, group, slot);
    }
    double rest_uniform(VertexId owner, std::uint64_t group, std::uint64_t slot) const {
        return tape_.uniform(Purpose::EdgeCoinRest, owner, group, slot);
    }

private:
    std::size_t slot(int i, int j) const { return std::size_t(i) * num_layers_ + j; }
    std::uint32_t lower(int i, int j, std::uint64_t key) const;
    std::uint32_t cell(VertexId v, int i) const { return cell_[std::size_t(v) * d_ + i]; }
    std::uint32_t offset(VertexId a, VertexId b, int i) const;
    void mcd_segments(int i, int j, std::uint32_t c, int t, Segments& out) const;
    void push_cells(Segments& s, int i, int j, std::int64_t first, std::int64_t count) const;
    void linf_segments(int j, VertexId a, int t, Segments& out) const;
    int touch_level(VertexId a, VertexId b) const;
    std::uint64_t morton(std::span<const std::uint32_t> block, int bits) const;

    ModelParams p_;
    RandomTape tape_;
    std::size_t n_;
    int d_;
    bool linf_;
    int systems_;
    int bits_;             // grid resolution per coordinate
    std::uint64_t keys_total_;
    int max_class_;
    int num_layers_ = 0;
    std::vector<double> weight_;
    std::vector<std::uint8_t> layer_;
    std::vector<double> pos_;
    std::vector<std::uint32_t> cell_;
    // per (system, layer): vertex ids sorted by (key, id), their keys, and for
    // well-populated layers a key -> first index table
    std::vector<std::vector<VertexId>> order_;
    std::vector<std::vector<std::uint64_t>> keys_;
    std::vector<std::vector<std::uint32_t>> start_;
    std::vector<std::uint32_t> rank_;
};

}  // namespace girglab::detail
