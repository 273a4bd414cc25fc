#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "girglab/random_tape.hpp"
#include "girglab/strips.hpp"

using namespace girglab;

namespace {

std::vector<VertexData> at(std::initializer_list<std::vector<double>> pts) {
    std::vector<VertexData> out;
    for (const auto& p : pts) out.push_back({1.0, TorusPoint(p)});
    return out;
}

long double binom(int n, int k) {
    long double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// every s-subset of members, counting distinct strips per coordinate
bool covered_oracle(const StripIndex& idx, const std::vector<VertexId>& m, int s, int k) {
    const int n = int(m.size());
    if (s > n) return false;
    std::vector<int> pick(s);
    for (int i = 0; i < s; ++i) pick[i] = i;
    while (true) {
        bool ok = true;
        for (int c = 0; c < idx.dim() && ok; ++c) {
            std::set<std::uint32_t> strips;
            for (int i : pick) strips.insert(idx.strip_of(m[i], c));
            ok = int(strips.size()) <= k;
        }
        if (ok) return true;
        int i = s - 1;
        while (i >= 0 && pick[i] == n - s + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

TEST_CASE("strip counts") {
    for (auto [n, gamma] : {std::pair<std::int64_t, double>{1000, 1.0}, {10000, 1.0}, {100000, 1.2}, {200, 1.08}}) {
        const long double oracle = std::floor(n / std::pow(std::log((long double)n), 2.0L * gamma));
        const StripWidth sw = strip_width(n, gamma);
        CHECK(sw.count == std::int64_t(oracle));
        CHECK(sw.width == doctest::Approx(1.0 / double(oracle)));
    }
    CHECK(strip_width(1000, 1.0).count == 20);
    CHECK(strip_width(10000, 1.0).count == 117);
    CHECK_THROWS_AS(strip_width(1000, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(strip_width(2, 1.0), std::invalid_argument);
    const std::int64_t m = min_n_for_strips(2.0);
    CHECK(strip_width(m, 2.0).count >= 1);
    CHECK_THROWS(strip_width(m - 1, 2.0));
}

TEST_CASE("strip ids") {
    CHECK(strip_id(0.0, 5) == 0);
    CHECK(strip_id(0.2, 5) == 1);
    CHECK(strip_id(0.999999, 5) == 4);
    const auto v = at({{0.05, 0.9}, {0.25, 0.1}, {0.26, 0.95}});
    const StripIndex idx(v, 4);
    CHECK(idx.strip_of(1, 0) == 1);
    CHECK(idx.bucket(0, 1).size() == 2);
    CHECK(idx.bucket(1, 3).size() == 2);
    CHECK(idx.bucket(1, 2).empty());
}

TEST_CASE("strip spread") {
    // three vertices in one vertical strip and two horizontal ones
    const auto v = at({{0.10, 0.10}, {0.15, 0.50}, {0.12, 0.55}});
    const StripIndex idx(v, 5);
    const std::vector<VertexId> all{0, 1, 2};
    const StripSpread sp = strip_spread(idx, all);
    CHECK(sp.k_star == 2);
    CHECK(sp.coordinate == 1);
    const std::vector<VertexId> one{1};
    CHECK(strip_spread(idx, one).k_star == 1);
    const auto w = at({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}, {0.7, 0.5}});
    const StripIndex jdx(w, 5);
    const std::vector<VertexId> four{0, 1, 2, 3};
    CHECK(strip_spread(jdx, four).k_star == 4);
    CHECK_THROWS(strip_spread(jdx, std::vector<VertexId>{}));
}

TEST_CASE("same-strip neighbours") {
    std::vector<VertexData> v = at({{0.11, 0.1}, {0.12, 0.9}, {0.13, 0.5}, {0.6, 0.5}, {0.14, 0.3}});
    v[2].weight = 10.0;
    const Graph g(5, {{0, 1}, {0, 2}, {0, 3}}, v);
    const StripIndex idx(g.vertex_data(), 5);
    const SubgraphView all(g, {0, 1, 2, 3, 4});
    CHECK(same_strip_neighbors(all, idx, 4, 0) == 0);
    CHECK(same_strip_neighbors(all, idx, 0, 0) == 2);
    CHECK(same_strip_neighbors(all, idx, 0, 0, 5.0, 20.0) == 1);
    const SubgraphView part(g, {0, 1, 2});
    CHECK(same_strip_neighbors(part, idx, 0, 0) == g.degree(0) - 1);
}

TEST_CASE("cover bound arithmetic") {
    const CoverBoundInput in{10, 3, 1, 5, 2};
    // 120 * 25 * (1/5)^6 = 3000 / 15625
    const long double exact = binom(10, 3) * std::pow(binom(5, 1), 2) / std::pow(5.0L, 6);
    CHECK(double(exact) == doctest::Approx(0.192).epsilon(1e-15));
    CHECK(cover_bound(in) == 0.192);
    CHECK(std::exp(log_cover_bound(in)) == doctest::Approx(0.192).epsilon(1e-12));
    CHECK(cover_bound({400, 30, 3, 50, 3}) == doctest::Approx(std::exp(log_cover_bound({400, 30, 3, 50, 3}))).epsilon(1e-9));
    CHECK(log_cover_bound_stirling(in) >= log_cover_bound(in));
    CHECK(cover_bound({10, 3, 5, 5, 2}) == 1.0);
    CHECK(cover_bound({7, 7, 4, 4, 1}) == 1.0);
    for (int nv = 5; nv <= 60; nv += 11)
        for (int s = 1; s <= 5; ++s)
            for (int k = 1; k <= 3; ++k) {
                const CoverBoundInput c{nv, s, k, 7, 2};
                const long double o =
                    std::log(binom(nv, s)) + 2 * std::log(binom(7, k)) + 2.0L * s * std::log(k / 7.0L);
                CHECK(log_cover_bound(c) == doctest::Approx(double(o)).epsilon(1e-10));
                CHECK(log_cover_bound_stirling(c) >= log_cover_bound(c) - 1e-12);
            }
    CHECK_THROWS(cover_bound({3, 4, 1, 5, 2}));
    CHECK_THROWS(cover_bound({10, 3, 0, 5, 2}));
}

TEST_CASE("strip covering search agrees with enumeration") {
    const RandomTape tape(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<VertexData> v;
        const int n = 5 + trial % 5;
        for (int i = 0; i < n; ++i)
            v.push_back({1.0, TorusPoint({tape.uniform(Purpose::Trial, trial, i, 0),
                                          tape.uniform(Purpose::Trial, trial, i, 1)})});
        const StripIndex idx(v, 4);
        std::vector<VertexId> members(n);
        for (int i = 0; i < n; ++i) members[i] = VertexId(i);
        for (int s = 1; s <= 4; ++s)
            for (int k = 1; k <= 2; ++k) {
                const CoverDecision d = covered_by_strips(idx, members, s, k);
                CHECK(d.exact);
                CHECK(d.covered == covered_oracle(idx, members, s, k));
            }
    }
}

TEST_CASE("empirical covering edge cases") {
    ModelParams p;
    p.n = 200;
    p.seed = 5;
    REQUIRE(strip_width(200, 1.08).count == 5);
    CHECK(empirical_cover_probability(p, 1.08, 1, 1, 30).frequency == 1.0);
    CHECK(empirical_cover_probability(p, 1.08, 3, 5, 30).frequency == 1.0);
    const CoverEstimate e = empirical_cover_probability(p, 1.08, 4, 1, 50);
    CHECK(e.frequency <= e.mean_bound);
    CHECK(e.trials == 50);
    CHECK_THROWS(empirical_cover_probability(p, 1.08, 3, 1, 0));
    CHECK_THROWS(empirical_cover_probability(p, 3.0, 3, 1, 10));
}
