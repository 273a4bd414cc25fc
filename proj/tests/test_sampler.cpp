#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "girglab/sampler.hpp"

using namespace girglab;

namespace {

ModelParams small(std::int64_t n, int d, Geometry geo, std::uint64_t seed) {
    ModelParams p;
    p.n = n;
    p.d = d;
    p.geometry = geo;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("vertex sampling is deterministic and in range") {
    const auto a = sample_vertices(7, 500, 3, 2.5);
    const auto b = sample_vertices(7, 500, 3, 2.5);
    REQUIRE(a.size() == 500);
    for (std::size_t v = 0; v < a.size(); ++v) {
        CHECK(a[v].weight == b[v].weight);
        CHECK(a[v].position == b[v].position);
        CHECK(a[v].weight >= 1.0);
        for (int i = 0; i < 3; ++i) {
            CHECK(a[v].position[i] >= 0.0);
            CHECK(a[v].position[i] < 1.0);
        }
    }
    CHECK(sample_vertices(7, 1, 2, 2.5).size() == 1);
}

TEST_CASE("pair coins are symmetric and bounded") {
    const auto p = small(300, 2, Geometry::MCD, 3);
    const auto verts = sample_vertices(p);
    const CoinTape tape(p, verts);
    for (VertexId u = 0; u < 40; ++u)
        for (VertexId v = u + 1; v < 40; ++v) {
            const double c = tape.pair_coin(u, v);
            CHECK(c == tape.pair_coin(v, u));
            CHECK(c >= 0.0);
            CHECK(c < 1.0);
        }
    CHECK_THROWS_AS(tape.pair_coin(4, 4), std::invalid_argument);
}

TEST_CASE("envelope dominates every pair probability") {
    for (auto geo : {Geometry::MCD, Geometry::LINF}) {
        auto p = small(400, 2, geo, 11);
        const auto verts = sample_vertices(p);
        const CoinTape tape(p, verts);
        for (VertexId u = 0; u < 400; ++u)
            for (VertexId v = u + 1; v < 400; ++v) {
                const double prob = connection_probability(
                    verts[u].weight, verts[v].weight, distance(geo, verts[u].position.coords(), verts[v].position.coords()), p);
                CHECK(tape.envelope(u, v) >= prob);
            }
    }
}

TEST_CASE("pair coins look uniform") {
    const auto p = small(600, 2, Geometry::MCD, 5);
    const auto verts = sample_vertices(p);
    const CoinTape tape(p, verts);
    std::vector<int> hist(10, 0);
    int total = 0;
    for (VertexId u = 0; u < 600; ++u)
        for (VertexId v = u + 1; v < 600; ++v) {
            ++hist[std::min(9, int(tape.pair_coin(u, v) * 10))];
            ++total;
        }
    for (int h : hist) CHECK(std::abs(h - total / 10.0) < 5 * std::sqrt(total * 0.09));
}

TEST_CASE("bucketed sampler equals the naive one") {
    int cells = 0;
    for (auto geo : {Geometry::MCD, Geometry::LINF})
        for (int d : {1, 2, 3})
            for (std::uint64_t seed : {1u, 2u}) {
                auto p = small(700, d, geo, seed);
                p.tau = seed == 1 ? 2.3 : 2.8;
                p.alpha = seed == 1 ? 1.3 : 3.0;
                const Graph a = sample_graph_naive(p);
                const Graph b = sample_graph_bucketed(p, 1.0);
                CHECK(a.edges() == b.edges());
                CHECK(a.num_edges() > 0);
                ++cells;
            }
    CHECK(cells == 12);
}

TEST_CASE("threads do not change the draw") {
    const auto p = small(3000, 2, Geometry::MCD, 9);
    SamplerOptions one, four;
    four.threads = 4;
    CHECK(sample_graph_bucketed(p, 1.0, one).edges() == sample_graph_bucketed(p, 1.0, four).edges());
}

TEST_CASE("restricted sampling equals the induced full draw") {
    const auto p = small(2000, 2, Geometry::MCD, 4);
    const Graph full = sample_graph_bucketed(p, 1.0);
    SamplerOptions opt;
    opt.restrict_to = WeightBand{3.0, 12.0};
    const Graph part = sample_graph_bucketed(p, 1.0, opt);
    std::vector<Edge> expect;
    for (auto [u, v] : full.edges())
        if (opt.restrict_to->contains(full.vertex(u).weight) && opt.restrict_to->contains(full.vertex(v).weight))
            expect.emplace_back(u, v);
    CHECK(part.edges() == expect);
    CHECK(!expect.empty());
}

TEST_CASE("zero kernel constant gives no edges") {
    auto p = small(300, 2, Geometry::MCD, 1);
    p.kernel_c = 0.0;
    CHECK(sample_graph_bucketed(p, 1.0).num_edges() == 0);
    CHECK(sample_graph_naive(p).num_edges() == 0);
}

TEST_CASE("too few strips is rejected") {
    const auto p = small(1000, 2, Geometry::MCD, 1);
    CHECK_THROWS_AS(sample_graph_bucketed(p, 2.0), std::invalid_argument);
}

TEST_CASE("distinct seeds give different coins") {
    ModelParams a = small(1000, 2, Geometry::MCD, 1), b = a;
    b.seed = 2;
    const auto verts = sample_vertices(a);
    const CoinTape ta(a, verts), tb(b, verts);
    const RandomTape pick(99);
    int differ = 0;
    for (int k = 0; k < 10000; ++k) {
        const auto u = VertexId(pick.below(1000, Purpose::Trial, k, 0));
        auto v = VertexId(pick.below(999, Purpose::Trial, k, 1));
        if (v >= u) ++v;
        CHECK(pair_coin(ta, u, v) == pair_coin(ta, v, u));
        differ += pair_coin(ta, u, v) != pair_coin(tb, u, v);
    }
    CHECK(differ >= 9900);
}

TEST_CASE("a forced strong tie is always present") {
    ModelParams p = small(2, 1, Geometry::MCD, 4);
    std::vector<VertexData> v{{2.0, TorusPoint({0.1})}, {1.5, TorusPoint({0.6})}};
    for (std::uint64_t s = 0; s < 20; ++s) {
        p.seed = s;
        CHECK(sample_graph_naive(p, v).num_edges() == 1);
    }
}

TEST_CASE("mean degree grows linearly with a pinned weight") {
    ModelParams p = small(2000, 2, Geometry::MCD, 0);
    std::vector<double> per_weight;
    for (double w : {4.0, 16.0, 64.0}) {
        double total = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            p.seed = s;
            auto v = sample_vertices(p);
            v[0].weight = w;
            total += double(sample_graph_bucketed(p, 1.0, v).degree(0));
        }
        per_weight.push_back(total / 100.0 / w);
    }
    const auto [lo, hi] = std::minmax_element(per_weight.begin(), per_weight.end());
    CHECK(*hi / *lo <= 1.5);
}
