#include "girglab/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace girglab {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<VertexData> vertex_data)
    : n_(n), data_(std::move(vertex_data)) {
    if (n > std::numeric_limits<VertexId>::max() - 1u) throw std::invalid_argument("too many vertices");
    if (!data_.empty() && data_.size() != n)
        throw std::invalid_argument("vertex data has " + std::to_string(data_.size()) + " records for " +
                                    std::to_string(n) + " vertices");
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw std::invalid_argument("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));

    std::vector<std::size_t> deg(n + 1, 0);
    for (const auto& [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // edges are sorted, so smaller partners land first and each list comes out sorted
    for (const auto& [u, v] : edges) adj_[fill[v]++] = u;
    for (const auto& [u, v] : edges) adj_[fill[u]++] = v;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (VertexId u = 0; u < n_; ++u)
        for (VertexId v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

SubgraphView::SubgraphView(const Graph& parent, std::vector<VertexId> kept)
    : parent_(&parent), kept_(std::move(kept)), local_(parent.num_vertices(), kAbsent) {
    for (std::size_t i = 0; i < kept_.size(); ++i) {
        const VertexId v = kept_[i];
        if (v >= parent.num_vertices()) throw std::invalid_argument("kept vertex out of range");
        if (i > 0 && kept_[i - 1] >= v) throw std::invalid_argument("kept vertices must be strictly increasing");
        local_[v] = static_cast<VertexId>(i);
    }
}

std::optional<VertexId> SubgraphView::local_id(VertexId parent_id) const {
    if (parent_id >= local_.size() || local_[parent_id] == kAbsent) return std::nullopt;
    return local_[parent_id];
}

std::vector<VertexId> SubgraphView::neighbors(VertexId local) const {
    std::vector<VertexId> out;
    for (VertexId u : parent_->neighbors(kept_.at(local)))
        if (local_[u] != kAbsent) out.push_back(local_[u]);
    return out;
}

std::size_t SubgraphView::induced_degree(VertexId local) const {
    std::size_t deg = 0;
    for (VertexId u : parent_->neighbors(kept_.at(local))) deg += local_[u] != kAbsent;
    return deg;
}

Graph SubgraphView::materialize() const {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < kept_.size(); ++i)
        for (VertexId u : parent_->neighbors(kept_[i]))
            if (local_[u] != kAbsent && local_[u] > i) edges.emplace_back(i, local_[u]);
    std::vector<VertexData> data;
    if (parent_->has_vertex_data()) {
        data.reserve(kept_.size());
        for (VertexId v : kept_) data.push_back(parent_->vertex(v));
    }
    return Graph(kept_.size(), std::move(edges), std::move(data));
}

std::vector<VertexId> external_neighborhood(const Graph& g, std::span<const VertexId> s) {
    const std::size_t n = g.num_vertices();
    std::vector<char> in_s(n, 0);
    for (VertexId v : s) {
        if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
        in_s[v] = 1;
    }
    std::vector<char> seen(n, 0);
    std::vector<VertexId> out;
    for (VertexId v : s)
        for (VertexId u : g.neighbors(v))
            if (!in_s[u] && !seen[u]) {
                seen[u] = 1;
                out.push_back(u);
            }
    std::sort(out.begin(), out.end());
    return out;
}

SubgraphView induced_by_weight(const Graph& g, double lo, double hi) {
    if (!g.has_vertex_data()) throw std::invalid_argument("induced_by_weight: graph carries no weights");
    if (!(lo <= hi)) throw std::invalid_argument("induced_by_weight: lo must not exceed hi");
    std::vector<VertexId> kept;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const double w = g.vertex(v).weight;
        if (w >= lo && w <= hi) kept.push_back(v);
    }
    return SubgraphView(g, std::move(kept));
}

SubgraphView induced_by_degree(const Graph& g, double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("induced_by_degree: lo must not exceed hi");
    std::vector<VertexId> kept;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const double deg = static_cast<double>(g.degree(v));
        if (deg >= lo && deg <= hi) kept.push_back(v);
    }
    return SubgraphView(g, std::move(kept));
}

std::size_t isolated_count(const SubgraphView& view) {
    std::size_t count = 0;
    for (VertexId i = 0; i < view.size(); ++i) count += view.induced_degree(i) == 0;
    return count;
}

std::uint32_t Components::largest() const {
    if (sizes.empty()) throw std::logic_error("no components");
    return static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

Components connected_components(const Graph& g) {
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = g.num_vertices();
    Components c;
    c.label.assign(n, kUnset);
    std::vector<VertexId> stack;
    for (VertexId root = 0; root < n; ++root) {
        if (c.label[root] != kUnset) continue;
        const auto id = static_cast<std::uint32_t>(c.sizes.size());
        std::size_t size = 0;
        c.label[root] = id;
        stack.push_back(root);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            ++size;
            for (VertexId u : g.neighbors(v))
                if (c.label[u] == kUnset) {
                    c.label[u] = id;
                    stack.push_back(u);
                }
        }
        c.sizes.push_back(size);
    }
    return c;
}

std::vector<VertexId> largest_component(const Graph& g) {
    if (g.num_vertices() == 0) return {};
    const Components c = connected_components(g);
    const std::uint32_t big = c.largest();
    std::vector<VertexId> out;
    out.reserve(c.sizes[big]);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (c.label[v] == big) out.push_back(v);
    return out;
}

}  // namespace girglab
