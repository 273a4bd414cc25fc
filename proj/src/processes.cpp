#include "girglab/processes.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "girglab/random_tape.hpp"

namespace girglab {

namespace {

void check_vertex(const Graph& g, VertexId v, const char* what) {
    if (v >= g.num_vertices()) throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

std::size_t component_size(const Graph& g, VertexId source) {
    std::vector<char> seen(g.num_vertices(), 0);
    std::queue<VertexId> q;
    q.push(source);
    seen[source] = 1;
    std::size_t count = 0;
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        ++count;
        for (VertexId u : g.neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                q.push(u);
            }
    }
    return count;
}

std::size_t target_count(const Graph& g, double coverage) {
    if (!(coverage > 0.0 && coverage <= 1.0)) throw std::invalid_argument("coverage must lie in (0,1]");
    const double t = std::ceil(coverage * double(g.num_vertices()) - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

}  // namespace

WalkDistribution stationary_distribution(const Graph& g) {
    if (g.num_vertices() == 0) throw std::invalid_argument("stationary_distribution: empty graph");
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 0) throw std::domain_error("stationary_distribution: isolated vertex " + std::to_string(v));
    if (connected_components(g).count() != 1) throw std::domain_error("stationary_distribution: graph is disconnected");
    WalkDistribution pi;
    pi.p.resize(g.num_vertices());
    const double two_m = 2.0 * double(g.num_edges());
    for (VertexId v = 0; v < g.num_vertices(); ++v) pi.p[v] = double(g.degree(v)) / two_m;
    return pi;
}

WalkDistribution point_mass(const Graph& g, VertexId start) {
    check_vertex(g, start, "point_mass");
    WalkDistribution x;
    x.p.assign(g.num_vertices(), 0.0);
    x.p[start] = 1.0;
    return x;
}

WalkDistribution lazy_step(const Graph& g, const WalkDistribution& x) {
    if (x.p.size() != g.num_vertices()) throw std::invalid_argument("lazy_step: size mismatch");
    WalkDistribution y;
    y.step = x.step + 1;
    y.p.resize(x.p.size());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        double in = 0.0;
        for (VertexId u : g.neighbors(v)) in += x.p[u] / double(g.degree(u));
        y.p[v] = 0.5 * x.p[v] + 0.5 * in;
    }
    return y;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

MixingResult estimate_mixing_time(const Graph& g, double eps_tv, const WalkDistribution& start, std::int64_t budget) {
    if (!(eps_tv > 0.0 && eps_tv < 1.0)) throw std::invalid_argument("estimate_mixing_time: eps must lie in (0,1)");
    if (budget < 0) throw std::invalid_argument("estimate_mixing_time: negative budget");
    const WalkDistribution pi = stationary_distribution(g);
    if (start.p.size() != pi.p.size()) throw std::invalid_argument("estimate_mixing_time: start has wrong size");
    MixingResult out;
    WalkDistribution x = start;
    x.step = 0;
    double tv = tv_distance(x.p, pi.p);
    out.tv_curve.push_back(tv);
    while (tv > eps_tv && x.step < budget) {
        x = lazy_step(g, x);
        tv = tv_distance(x.p, pi.p);
        out.tv_curve.push_back(tv);
    }
    out.steps = x.step;
    out.final_tv = tv;
    out.within_budget = tv <= eps_tv;
    return out;
}

MixingResult estimate_mixing_time(const Graph& g, double eps_tv, VertexId start, std::int64_t budget) {
    return estimate_mixing_time(g, eps_tv, point_mass(g, start), budget);
}

SpreadResult push_rumor(const Graph& g, VertexId source, double coverage, std::uint64_t seed, std::int64_t max_rounds) {
    check_vertex(g, source, "push_rumor");
    SpreadResult out;
    out.target = target_count(g, coverage);
    std::vector<char> informed(g.num_vertices(), 0);
    std::vector<VertexId> list{source};
    informed[source] = 1;
    out.informed.push_back(1);
    if (list.size() >= out.target) return out;
    if (component_size(g, source) < out.target) {
        out.reached = false;
        out.rounds = -1;
        return out;
    }
    const RandomTape tape(seed);
    std::vector<VertexId> fresh;
    for (std::int64_t round = 1; round <= max_rounds; ++round) {
        fresh.clear();
        for (VertexId v : list) {
            const std::size_t deg = g.degree(v);
            if (deg == 0) continue;
            const VertexId u = g.neighbors(v)[tape.below(deg, Purpose::Rumor, std::uint64_t(round), v)];
            if (!informed[u]) {
                informed[u] = 1;
                fresh.push_back(u);
            }
        }
        list.insert(list.end(), fresh.begin(), fresh.end());
        out.informed.push_back(list.size());
        if (list.size() >= out.target) {
            out.rounds = round;
            return out;
        }
    }
    out.reached = false;
    out.rounds = -1;
    return out;
}

SpreadResult si_spread(const Graph& g, VertexId source, double beta, double coverage, std::uint64_t seed,
                       std::int64_t max_rounds) {
    check_vertex(g, source, "si_spread");
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("si_spread: beta must lie in (0,1]");
    SpreadResult out;
    out.target = target_count(g, coverage);
    std::vector<char> infected(g.num_vertices(), 0);
    std::vector<VertexId> list{source};
    infected[source] = 1;
    out.informed.push_back(1);
    if (list.size() >= out.target) return out;
    if (component_size(g, source) < out.target) {
        out.reached = false;
        out.rounds = -1;
        return out;
    }
    const RandomTape tape(seed);
    std::vector<VertexId> fresh;
    for (std::int64_t round = 1; round <= max_rounds; ++round) {
        fresh.clear();
        for (VertexId v : list)
            for (VertexId u : g.neighbors(v)) {
                if (infected[u]) continue;
                if (beta >= 1.0 || tape.uniform(Purpose::Infection, std::uint64_t(round), v, u) < beta) {
                    infected[u] = 1;
                    fresh.push_back(u);
                }
            }
        list.insert(list.end(), fresh.begin(), fresh.end());
        out.informed.push_back(list.size());
        if (list.size() >= out.target) {
            out.rounds = round;
            return out;
        }
    }
    out.reached = false;
    out.rounds = -1;
    return out;
}

std::int64_t push_rumor_rounds(const Graph& g, VertexId source, double coverage, std::uint64_t seed) {
    const SpreadResult r = push_rumor(g, source, coverage, seed);
    if (!r.reached) throw std::domain_error("push_rumor: coverage not reachable from the source");
    return r.rounds;
}

std::int64_t si_spread_rounds(const Graph& g, VertexId source, double beta, double coverage, std::uint64_t seed) {
    const SpreadResult r = si_spread(g, source, beta, coverage, seed);
    if (!r.reached) throw std::domain_error("si_spread: coverage not reachable from the source");
    return r.rounds;
}

void write_trace_csv(std::ostream& os, const SpreadResult& r) {
    os << "round,informed_count\n";
    for (std::size_t k = 0; k < r.informed.size(); ++k) os << k << ',' << r.informed[k] << '\n';
}

}  // namespace girglab
