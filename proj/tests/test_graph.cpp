#include "doctest.h"

#include <stdexcept>

#include "girglab/graph.hpp"

using namespace girglab;

namespace {

Graph path(std::size_t n) {
    std::vector<Edge> e;
    for (VertexId v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
    return Graph(n, e);
}

Graph complete(std::size_t n) {
    std::vector<Edge> e;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) e.push_back({u, v});
    return Graph(n, e);
}

std::vector<VertexData> weights(std::initializer_list<double> w) {
    std::vector<VertexData> out;
    for (double x : w) out.push_back({x, TorusPoint({0.5})});
    return out;
}

}  // namespace

TEST_CASE("csr construction") {
    const Graph g(4, {{2, 1}, {0, 1}, {3, 2}});
    CHECK(g.num_edges() == 3);
    CHECK(g.degree(1) == 2);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 3));
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("external neighbourhood") {
    const Graph p = path(3);
    const std::vector<VertexId> mid{1};
    CHECK(external_neighborhood(p, mid) == std::vector<VertexId>{0, 2});
    const std::vector<VertexId> all{0, 1, 2};
    CHECK(external_neighborhood(p, all).empty());
    const Graph tri = complete(3);
    const std::vector<VertexId> a{0};
    CHECK(external_neighborhood(tri, a) == std::vector<VertexId>{1, 2});
}

TEST_CASE("weight and degree induction") {
    const Graph g(3, {{0, 1}, {1, 2}}, weights({1.0, 5.0, 2.5}));
    CHECK(induced_by_weight(g, 1.0).size() == 3);
    CHECK(induced_by_weight(g, 6.0).empty());
    const SubgraphView band = induced_by_weight(g, 2.0, 5.0);
    CHECK(band.size() == 2);
    CHECK(band.contains(1));
    CHECK_FALSE(band.contains(0));
    CHECK(band.local_id(2) == VertexId(1));
    CHECK_FALSE(band.local_id(0).has_value());
    CHECK(band.induced_degree(0) == 1);
    const Graph h = band.materialize();
    CHECK(h.num_edges() == 1);
    CHECK(h.vertex(0).weight == 5.0);

    CHECK(induced_by_degree(g, 0).size() == 3);
    CHECK(induced_by_degree(g, 3).empty());
    CHECK(induced_by_degree(g, 2).kept().size() == 1);
}

TEST_CASE("isolated vertices") {
    const Graph empty(3, {});
    CHECK(isolated_count(SubgraphView(empty, {0, 1, 2})) == 3);
    const Graph k = complete(5);
    CHECK(isolated_count(SubgraphView(k, {1, 3})) == 0);
    CHECK(isolated_count(SubgraphView(k, {0, 1, 2, 3, 4})) == 0);
    CHECK(isolated_count(SubgraphView(path(4), {0, 2})) == 2);
}

TEST_CASE("connected components") {
    CHECK(connected_components(path(5)).count() == 1);
    CHECK(connected_components(Graph(3, {})).count() == 3);
    const Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const Components c = connected_components(two);
    CHECK(c.sizes == std::vector<std::size_t>{3, 3});
    CHECK(c.label[4] == 1);
    CHECK(largest_component(two) == std::vector<VertexId>{0, 1, 2});
    const Graph lop(5, {{3, 4}, {2, 3}});
    CHECK(largest_component(lop) == std::vector<VertexId>{2, 3, 4});
}
