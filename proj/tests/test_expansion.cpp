#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "girglab/expansion.hpp"
#include "girglab/sampler.hpp"

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

// independent dense oracle: eigenvalues of D^{-1/2} L D^{-1/2} via the symmetric solver
double lambda2_oracle(const Graph& g) {
    const auto n = Eigen::Index(g.num_vertices());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (auto [u, v] : g.edges()) {
        const double x = 1.0 / std::sqrt(double(g.degree(u)) * double(g.degree(v)));
        m(u, v) = m(v, u) = -x;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(1);
}

Graph girg(std::int64_t n, std::uint64_t seed) {
    ModelParams p;
    p.n = n;
    p.seed = seed;
    return sample_graph_naive(p);
}

}  // namespace

TEST_CASE("expansion ratio") {
    const Graph k4 = complete(4);
    const std::vector<VertexId> one{0}, all{0, 1, 2, 3}, ab{0, 1};
    CHECK(expansion_ratio(k4, one) == 3.0);
    CHECK(expansion_ratio(k4, all) == 0.0);
    CHECK(expansion_ratio(path(4), ab) == 0.5);
    CHECK_THROWS(expansion_ratio(k4, std::vector<VertexId>{}));
    CHECK_THROWS(expansion_ratio(k4, std::vector<VertexId>{1, 1}));
    CHECK_THROWS(expansion_ratio(k4, std::vector<VertexId>{4}));
}

TEST_CASE("brute force minimum expansion") {
    const WorstSet p = brute_force_min_expansion(path(4), 2);
    CHECK(p.ratio == 0.5);
    CHECK(p.set == std::vector<VertexId>{0, 1});
    const WorstSet k = brute_force_min_expansion(complete(4), 2);
    CHECK(k.ratio == 1.0);
    CHECK(k.set.size() == 2);
    const WorstSet e = brute_force_min_expansion(Graph(4, {}), 3);
    CHECK(e.ratio == 0.0);
    CHECK(e.set == std::vector<VertexId>{0});
    CHECK_THROWS_AS(brute_force_min_expansion(complete(40), 10, 1000), std::length_error);
}

TEST_CASE("greedy never beats brute force") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = girg(18, seed);
        const WorstSet b = brute_force_min_expansion(g, 9);
        const WorstSet w = greedy_worst_set(g, 5, 0.5, seed);
        CHECK(w.ratio >= b.ratio);
        CHECK(expansion_ratio(g, w.set) == doctest::Approx(w.ratio));
        CHECK(w.set.size() <= 9);
    }
    CHECK_THROWS(greedy_worst_set(complete(4), 0, 0.5));
    const auto prof = greedy_profile(path(6), 3, 3, 1);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0] >= 1.0);
    CHECK(prof[1] >= 0.5);
    CHECK(prof[2] >= brute_force_min_expansion(path(6), 3).ratio);
}

TEST_CASE("spectral gap of small graphs") {
    CHECK(spectral_gap(complete(4)).lambda2 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(spectral_gap(path(3)).lambda2 == doctest::Approx(1.0).epsilon(1e-12));
    const SpectralGap dis = spectral_gap(Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}));
    CHECK(dis.lambda2 == 0.0);
    CHECK_FALSE(dis.connected);
    CHECK(dis.components == 2);
    SpectralOptions thr;
    thr.policy = DisconnectedPolicy::Throw;
    CHECK_THROWS_AS(spectral_gap(Graph(3, {{0, 1}}), thr), std::domain_error);
    SpectralOptions big;
    big.policy = DisconnectedPolicy::LargestComponent;
    const SpectralGap lc = spectral_gap(Graph(5, {{0, 1}, {2, 3}, {3, 4}}), big);
    CHECK(lc.lambda2 == doctest::Approx(1.0));
    CHECK(lc.solved_size == 3);
}

TEST_CASE("lanczos matches the dense oracle") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Graph full = girg(450, seed);
        const Graph g = SubgraphView(full, largest_component(full)).materialize();
        const double oracle = lambda2_oracle(g);
        CHECK(spectral_gap_dense(g).lambda2 == doctest::Approx(oracle).epsilon(1e-9));
        const SpectralGap lz = spectral_gap_lanczos(g, 1e-9);
        CHECK(lz.converged);
        CHECK(std::abs(lz.lambda2 - oracle) <= 1e-6 * oracle);
    }
    const Graph big = girg(1500, 3);
    const Graph gc = SubgraphView(big, largest_component(big)).materialize();
    const SpectralGap s = spectral_gap(gc);
    CHECK(s.method == "lanczos");
    CHECK(std::abs(s.lambda2 - lambda2_oracle(gc)) <= 1e-6 * s.lambda2);
}

TEST_CASE("cheeger bounds and conductance") {
    CHECK(cheeger_bounds(0).lo == 0.0);
    CHECK(cheeger_bounds(0).hi == 0.0);
    CHECK(cheeger_bounds(2).lo == 1.0);
    CHECK(cheeger_bounds(2).hi == 2.0);
    CHECK(cheeger_bounds(4.0 / 3).lo == doctest::Approx(2.0 / 3));
    CHECK(cheeger_bounds(4.0 / 3).hi == doctest::Approx(std::sqrt(8.0 / 3)));
    CHECK_THROWS(cheeger_bounds(-0.1));
    CHECK_THROWS(cheeger_bounds(2.1));
    const std::vector<VertexId> half{0, 1};
    CHECK(conductance(path(4), half) == doctest::Approx(1.0 / 3));
    const Graph g = girg(300, 9);
    const Graph gc = SubgraphView(g, largest_component(g)).materialize();
    const CheegerBounds cb = cheeger_bounds(spectral_gap(gc).lambda2);
    const WorstSet w = greedy_worst_set(gc, 4, 0.5, 1);
    CHECK(conductance(gc, w.set) >= cb.lo - 1e-12);
}

TEST_CASE("induce modes") {
    const Graph g = girg(2000, 4);
    const ThresholdConstants k;
    const double t = std::pow(std::log(2000.0), 1.2);
    const auto [lo, hi] = induce_bounds(InduceMode::WeightBand, 2000, 1.2, k);
    CHECK(lo == doctest::Approx(t));
    CHECK(hi == doctest::Approx(2 * t));
    const SubgraphView band = induce(g, InduceMode::WeightBand, 1.2, k);
    CHECK_FALSE(band.empty());
    for (VertexId v : band.kept()) CHECK((g.vertex(v).weight >= lo && g.vertex(v).weight <= hi));
    const SubgraphView deg = induce(g, InduceMode::DegreeThreshold, 1.2, k);
    CHECK_FALSE(deg.empty());
    for (VertexId v : deg.kept()) CHECK(double(g.degree(v)) >= t);
    CHECK(induce_mode_from_string("degree-band") == InduceMode::DegreeBand);
    CHECK(std::string(to_string(InduceMode::WeightThreshold)) == "weight_threshold");
    CHECK_THROWS(induce_mode_from_string("weights"));
}

TEST_CASE("theorem check on a complete graph") {
    std::vector<VertexData> v;
    for (int i = 0; i < 12; ++i) v.push_back({100.0, TorusPoint({i / 12.0, 0.5})});
    std::vector<Edge> e;
    for (VertexId a = 0; a < 12; ++a)
        for (VertexId b = a + 1; b < 12; ++b) e.push_back({a, b});
    const Graph g(12, e, v);
    TheoremCheckConfig cfg;
    const ExpansionReport r = theorem_check(g, cfg);
    CHECK(r.v_prime == 12);
    CHECK(r.connected);
    CHECK(r.min_induced_degree == 11);
    REQUIRE_FALSE(r.rows.empty());
    for (const auto& row : r.rows) {
        CHECK(row.worst_ratio >= 1.0);
        CHECK(row.s <= 6);
    }
    CHECK(r.worst_at(1) == 11.0);
}

TEST_CASE("hyperplane cuts") {
    std::vector<VertexData> v{{1.0, TorusPoint({0.1, 0.2})}, {1.0, TorusPoint({0.6, 0.2})}, {1.0, TorusPoint({0.2, 0.9})}};
    CHECK(hyperplane_cut_edges(Graph(3, {{0, 1}}, v), 0) == 1);
    CHECK(hyperplane_cut_edges(Graph(3, {{0, 2}}, v), 0) == 0);
    CHECK(hyperplane_cut_edges(Graph(3, {{0, 2}, {0, 1}}, v), 1) == 1);
}
