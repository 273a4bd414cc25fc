#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "girglab/model.hpp"

namespace girglab {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Immutable undirected simple graph in CSR form, optionally carrying the
/// weight and position of every vertex.
class Graph {
public:
    Graph() = default;

    /// Edges may come in any order and orientation. Self-loops, duplicates and
    /// out-of-range ids throw std::invalid_argument.
    Graph(std::size_t n, std::vector<Edge> edges, std::vector<VertexData> vertex_data = {});

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return adj_.size() / 2; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(VertexId u, VertexId v) const;

    bool has_vertex_data() const { return !data_.empty(); }
    const std::vector<VertexData>& vertex_data() const { return data_; }
    const VertexData& vertex(VertexId v) const { return data_.at(v); }

    /// All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> adj_;
    std::vector<VertexData> data_;
};

/// Induced subgraph over a sorted subset of a parent graph's vertices.
/// The parent must outlive the view. Local ids are positions in kept().
class SubgraphView {
public:
    SubgraphView(const Graph& parent, std::vector<VertexId> kept);

    const Graph& parent() const { return *parent_; }
    std::span<const VertexId> kept() const { return kept_; }
    std::size_t size() const { return kept_.size(); }
    bool empty() const { return kept_.empty(); }

    bool contains(VertexId parent_id) const { return local_[parent_id] != kAbsent; }
    std::optional<VertexId> local_id(VertexId parent_id) const;
    VertexId parent_id(VertexId local) const { return kept_[local]; }

    /// Induced neighbours of a kept vertex, as local ids.
    std::vector<VertexId> neighbors(VertexId local) const;
    std::size_t induced_degree(VertexId local) const;

    /// Copies the induced subgraph out, relabelled to local ids.
    Graph materialize() const;

private:
    static constexpr VertexId kAbsent = std::numeric_limits<VertexId>::max();

    const Graph* parent_;
    std::vector<VertexId> kept_;
    std::vector<VertexId> local_;
};

/// {v outside s : v adjacent to some member of s}, sorted.
std::vector<VertexId> external_neighborhood(const Graph& g, std::span<const VertexId> s);

/// Keeps vertices with lo <= w_v <= hi. hi may be kInfinity.
SubgraphView induced_by_weight(const Graph& g, double lo, double hi = kInfinity);

/// Keeps vertices with lo <= deg_G(v) <= hi, degree taken in the full graph.
SubgraphView induced_by_degree(const Graph& g, double lo, double hi = kInfinity);

/// Kept vertices without kept neighbours.
std::size_t isolated_count(const SubgraphView& view);

struct Components {
    /// Component index per vertex; components are numbered by their smallest vertex id.
    std::vector<std::uint32_t> label;
    std::vector<std::size_t> sizes;

    std::size_t count() const { return sizes.size(); }
    std::uint32_t largest() const;
};

Components connected_components(const Graph& g);

/// Vertices of the largest component (ties: smallest label), sorted.
std::vector<VertexId> largest_component(const Graph& g);

}  // namespace girglab
