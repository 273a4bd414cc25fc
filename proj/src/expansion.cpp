#include "girglab/expansion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "girglab/random_tape.hpp"
#include "girglab/strips.hpp"

namespace girglab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_set(const Graph& g, std::span<const VertexId> s, std::vector<char>& in_s) {
    if (s.empty()) throw std::invalid_argument("expansion_ratio: empty set");
    in_s.assign(g.num_vertices(), 0);
    for (VertexId v : s) {
        if (v >= g.num_vertices()) throw std::invalid_argument("expansion_ratio: vertex out of range");
        if (in_s[v]) throw std::invalid_argument("expansion_ratio: duplicate vertex");
        in_s[v] = 1;
    }
}

std::size_t external_count(const Graph& g, std::span<const VertexId> s, std::vector<char>& mark) {
    std::size_t ext = 0;
    for (VertexId v : s)
        for (VertexId u : g.neighbors(v))
            if (!mark[u]) {
                mark[u] = 2;
                ++ext;
            }
    for (VertexId v : s)
        for (VertexId u : g.neighbors(v))
            if (mark[u] == 2) mark[u] = 0;
    return ext;
}

// Greedy growth from one start; calls visit(size, ext) after each addition.
class GreedyRun {
public:
    explicit GreedyRun(const Graph& g) : g_(g), state_(g.num_vertices()), gain_(g.num_vertices()) {}

    template <class Visit>
    void run(VertexId start, std::size_t max_size, Visit visit) {
        std::fill(state_.begin(), state_.end(), 0);
        for (VertexId v = 0; v < g_.num_vertices(); ++v) gain_[v] = g_.degree(v);
        frontier_.clear();
        order_.clear();
        ext_ = 0;
        VertexId next = start;
        while (true) {
            add(next);
            order_.push_back(next);
            visit(order_.size(), ext_);
            if (order_.size() >= max_size || frontier_.empty()) break;
            next = frontier_.begin()->second;
        }
    }

    const std::vector<VertexId>& order() const { return order_; }

private:
    void leave_outside(VertexId x) {
        for (VertexId y : g_.neighbors(x)) {
            if (state_[y] == 2) {
                frontier_.erase({gain_[y], y});
                --gain_[y];
                frontier_.insert({gain_[y], y});
            } else {
                --gain_[y];
            }
        }
    }

    void add(VertexId v) {
        if (state_[v] == 0) {
            leave_outside(v);
        } else {
            frontier_.erase({gain_[v], v});
            --ext_;
        }
        state_[v] = 1;
        for (VertexId u : g_.neighbors(v)) {
            if (state_[u] != 0) continue;
            leave_outside(u);
            state_[u] = 2;
            ++ext_;
            frontier_.insert({gain_[u], u});
        }
    }

    const Graph& g_;
    std::vector<char> state_;  // 0 outside, 1 in S, 2 external neighbour
    std::vector<std::size_t> gain_;
    std::set<std::pair<std::size_t, VertexId>> frontier_;
    std::vector<VertexId> order_;
    std::size_t ext_ = 0;
};

// Binomial sum with saturation.
std::uint64_t count_sets(std::uint64_t n, int max_size, std::uint64_t cap) {
    std::uint64_t total = 0;
    long double c = 1;
    for (int s = 1; s <= max_size && std::uint64_t(s) <= n; ++s) {
        c = c * static_cast<long double>(n - s + 1) / s;
        if (c > static_cast<long double>(cap)) return cap + 1;
        total += static_cast<std::uint64_t>(c + 0.5L);
        if (total > cap) return cap + 1;
    }
    return total;
}

void normalized_adjacency_apply(const Graph& g, const std::vector<double>& inv_sqrt, const std::vector<double>& x,
                                std::vector<double>& y) {
    const std::size_t n = g.num_vertices();
    for (std::size_t v = 0; v < n; ++v) {
        double acc = 0.0;
        for (VertexId u : g.neighbors(VertexId(v))) acc += inv_sqrt[u] * x[u];
        // lazy operator (I + N) / 2, spectrum in [0, 1]
        y[v] = 0.5 * (x[v] + inv_sqrt[v] * acc);
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

double expansion_ratio(const Graph& g, std::span<const VertexId> s) {
    std::vector<char> mark;
    check_set(g, s, mark);
    return static_cast<double>(external_count(g, s, mark)) / static_cast<double>(s.size());
}

WorstSet brute_force_min_expansion(const Graph& g, int max_size, std::uint64_t budget) {
    const std::size_t n = g.num_vertices();
    if (n == 0) throw std::invalid_argument("brute_force_min_expansion: empty graph");
    if (max_size < 1) throw std::invalid_argument("brute_force_min_expansion: max_size must be >= 1");
    const std::uint64_t total = count_sets(n, max_size, budget);
    if (total > budget)
        throw std::length_error("brute_force_min_expansion: more than " + std::to_string(budget) + " sets");

    std::vector<char> mark(n, 0);
    WorstSet best;
    std::size_t best_ext = 0, best_size = 0;
    std::vector<VertexId> cur;
    const int top = static_cast<int>(std::min<std::size_t>(n, std::size_t(max_size)));
    for (int s = 1; s <= top; ++s) {
        cur.resize(s);
        std::iota(cur.begin(), cur.end(), 0);
        while (true) {
            for (VertexId v : cur) mark[v] = 1;
            const std::size_t ext = external_count(g, cur, mark);
            for (VertexId v : cur) mark[v] = 0;
            // compare ext/s against best_ext/best_size exactly
            const bool first = best_size == 0;
            const auto lhs = ext * best_size, rhs = best_ext * std::size_t(s);
            if (first || lhs < rhs || (lhs == rhs && std::lexicographical_compare(cur.begin(), cur.end(),
                                                                                 best.set.begin(), best.set.end()))) {
                best.set = cur;
                best_ext = ext;
                best_size = s;
            }
            int i = s - 1;
            while (i >= 0 && cur[i] == n - s + i) --i;
            if (i < 0) break;
            ++cur[i];
            for (int k = i + 1; k < s; ++k) cur[k] = cur[k - 1] + 1;
        }
    }
    best.ratio = static_cast<double>(best_ext) / static_cast<double>(best_size);
    return best;
}

WorstSet greedy_worst_set(const Graph& g, int restarts, double max_frac, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("greedy_worst_set: restarts must be >= 1");
    if (!(max_frac > 0.0 && max_frac < 1.0)) throw std::invalid_argument("greedy_worst_set: max_frac must lie in (0,1)");
    const std::size_t n = g.num_vertices();
    if (n == 0) throw std::invalid_argument("greedy_worst_set: empty graph");
    const std::size_t max_size = std::max<std::size_t>(1, static_cast<std::size_t>(max_frac * double(n)));
    const RandomTape tape(seed);
    GreedyRun run(g);
    WorstSet best;
    std::size_t best_ext = 0, best_size = 0;
    for (int r = 0; r < restarts; ++r) {
        const auto start = static_cast<VertexId>(tape.below(n, Purpose::Probe, 0, std::uint64_t(r)));
        std::size_t run_ext = 0, run_size = 0;
        run.run(start, max_size, [&](std::size_t size, std::size_t ext) {
            if (run_size == 0 || ext * run_size < run_ext * size) {
                run_ext = ext;
                run_size = size;
            }
        });
        if (best_size == 0 || run_ext * best_size < best_ext * run_size) {
            best_ext = run_ext;
            best_size = run_size;
            best.set.assign(run.order().begin(), run.order().begin() + run_size);
        }
    }
    std::sort(best.set.begin(), best.set.end());
    best.ratio = double(best_ext) / double(best_size);
    return best;
}

std::vector<double> greedy_profile(const Graph& g, int restarts, std::size_t max_size, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("greedy_profile: restarts must be >= 1");
    const std::size_t n = g.num_vertices();
    if (n == 0) throw std::invalid_argument("greedy_profile: empty graph");
    max_size = std::min(max_size, n);
    std::vector<double> best(max_size, kNaN);
    const RandomTape tape(seed);
    GreedyRun run(g);
    for (int r = 0; r < restarts; ++r) {
        const auto start = static_cast<VertexId>(tape.below(n, Purpose::Probe, 0, std::uint64_t(r)));
        run.run(start, max_size, [&](std::size_t size, std::size_t ext) {
            const double ratio = double(ext) / double(size);
            if (std::isnan(best[size - 1]) || ratio < best[size - 1]) best[size - 1] = ratio;
        });
    }
    while (!best.empty() && std::isnan(best.back())) best.pop_back();
    return best;
}

SpectralGap spectral_gap_dense(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n < 2) throw std::invalid_argument("spectral_gap: need at least 2 vertices");
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (VertexId v = 0; v < n; ++v) {
        if (g.degree(v) == 0) continue;
        lap(v, v) = 1.0;
        for (VertexId u : g.neighbors(v))
            lap(v, u) = -1.0 / std::sqrt(double(g.degree(v)) * double(g.degree(u)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral_gap: dense eigensolver failed");
    SpectralGap out;
    out.lambda2 = std::clamp(es.eigenvalues()(1), 0.0, 2.0);
    out.method = "dense";
    out.solved_size = n;
    return out;
}

SpectralGap spectral_gap_lanczos(const Graph& g, double rel_tol, int max_iterations) {
    const std::size_t n = g.num_vertices();
    if (n < 3) return spectral_gap_dense(g);
    std::vector<double> inv_sqrt(n), top(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (g.degree(VertexId(v)) == 0) throw std::domain_error("spectral_gap_lanczos: isolated vertex");
        const double sd = std::sqrt(double(g.degree(VertexId(v))));
        inv_sqrt[v] = 1.0 / sd;
        top[v] = sd;
    }
    const double tn = std::sqrt(dot(top, top));
    for (double& x : top) x /= tn;

    const RandomTape tape(0x5eedULL);
    std::vector<double> start(n);
    for (std::size_t v = 0; v < n; ++v) start[v] = tape.uniform(Purpose::Probe, 1, v) - 0.5;

    const std::size_t krylov = std::min<std::size_t>(n - 1, 250);
    SpectralGap out;
    out.method = "lanczos";
    out.solved_size = n;
    out.converged = false;
    std::vector<std::vector<double>> basis;
    std::vector<double> w(n);
    double theta = 0.0;
    int iterations = 0;
    while (iterations < max_iterations) {
        basis.clear();
        std::vector<double> alpha, beta;
        // deflate the top eigenvector and normalise
        axpy(-dot(start, top), top, start);
        double nrm = std::sqrt(dot(start, start));
        if (nrm == 0.0) throw std::runtime_error("spectral_gap_lanczos: degenerate start vector");
        for (double& x : start) x /= nrm;
        basis.push_back(start);
        Eigen::VectorXd ritz;
        bool restart = true;
        for (std::size_t j = 0; j < krylov && iterations < max_iterations; ++j) {
            ++iterations;
            normalized_adjacency_apply(g, inv_sqrt, basis[j], w);
            const double a = dot(w, basis[j]);
            alpha.push_back(a);
            // full reorthogonalisation, twice for stability
            for (int pass = 0; pass < 2; ++pass) {
                axpy(-dot(w, top), top, w);
                for (const auto& q : basis) axpy(-dot(w, q), q, w);
            }
            const double b = std::sqrt(dot(w, w));
            const auto m = Eigen::Index(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            theta = es.eigenvalues()(m - 1);
            ritz = es.eigenvectors().col(m - 1);
            const double residual = b * std::abs(ritz(m - 1));
            const double lambda = 2.0 * (1.0 - theta);
            if (residual <= 0.25 * rel_tol * std::max(lambda, 1e-12) || b < 1e-14) {
                out.converged = true;
                restart = false;
                break;
            }
            beta.push_back(b);
            for (double& x : w) x /= b;
            basis.push_back(w);
        }
        if (!restart) break;
        // explicit restart from the current Ritz vector
        std::fill(start.begin(), start.end(), 0.0);
        for (Eigen::Index i = 0; i < ritz.size(); ++i) axpy(ritz(i), basis[std::size_t(i)], start);
    }
    out.iterations = iterations;
    out.lambda2 = std::clamp(2.0 * (1.0 - theta), 0.0, 2.0);
    return out;
}

SpectralGap spectral_gap(const Graph& g, const SpectralOptions& opt) {
    if (g.num_vertices() < 2) throw std::invalid_argument("spectral_gap: need at least 2 vertices");
    const Components comps = connected_components(g);
    if (comps.count() > 1) {
        switch (opt.policy) {
            case DisconnectedPolicy::Throw:
                throw std::domain_error("spectral_gap: graph has " + std::to_string(comps.count()) + " components");
            case DisconnectedPolicy::ReportZero: {
                SpectralGap out;
                out.lambda2 = 0.0;
                out.connected = false;
                out.components = comps.count();
                out.method = "components";
                out.solved_size = g.num_vertices();
                return out;
            }
            case DisconnectedPolicy::LargestComponent: {
                const auto keep = largest_component(g);
                const Graph sub = SubgraphView(g, keep).materialize();
                SpectralGap out = sub.num_vertices() < 2 ? SpectralGap{} : spectral_gap(sub, opt);
                out.connected = false;
                out.components = comps.count();
                return out;
            }
        }
    }
    SpectralGap out = g.num_vertices() < opt.dense_cutoff ? spectral_gap_dense(g)
                                                          : spectral_gap_lanczos(g, opt.rel_tol, opt.max_iterations);
    out.components = 1;
    out.connected = true;
    return out;
}

CheegerBounds cheeger_bounds(double lambda2) {
    if (!(lambda2 >= 0.0 && lambda2 <= 2.0)) throw std::invalid_argument("cheeger_bounds: lambda2 must lie in [0,2]");
    return {lambda2 / 2.0, std::sqrt(2.0 * lambda2)};
}

double conductance(const Graph& g, std::span<const VertexId> s) {
    std::vector<char> in_s;
    check_set(g, s, in_s);
    std::size_t vol_s = 0, cut = 0, vol_all = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) vol_all += g.degree(v);
    for (VertexId v : s) {
        vol_s += g.degree(v);
        for (VertexId u : g.neighbors(v)) cut += !in_s[u];
    }
    const std::size_t denom = std::min(vol_s, vol_all - vol_s);
    if (denom == 0) return std::numeric_limits<double>::infinity();
    return double(cut) / double(denom);
}

const char* to_string(InduceMode m) {
    switch (m) {
        case InduceMode::WeightThreshold: return "weight_threshold";
        case InduceMode::WeightBand: return "weight_band";
        case InduceMode::DegreeThreshold: return "degree_threshold";
        case InduceMode::DegreeBand: return "degree_band";
    }
    return "?";
}

InduceMode induce_mode_from_string(const std::string& name) {
    std::string s = name;
    std::replace(s.begin(), s.end(), '-', '_');
    for (auto m : {InduceMode::WeightThreshold, InduceMode::WeightBand, InduceMode::DegreeThreshold,
                   InduceMode::DegreeBand})
        if (s == to_string(m)) return m;
    throw std::invalid_argument("unknown induce mode '" + name +
                                "' (weight_threshold, weight_band, degree_threshold, degree_band)");
}

std::pair<double, double> induce_bounds(InduceMode mode, std::int64_t n, double gamma, const ThresholdConstants& k) {
    if (n < 2) throw std::invalid_argument("induce: n must be >= 2");
    const double scale = std::pow(std::log(double(n)), gamma);
    switch (mode) {
        case InduceMode::WeightThreshold:
        case InduceMode::DegreeThreshold: return {k.c_prime * scale, kInfinity};
        default: return {k.c1 * scale, k.c2 * scale};
    }
}

SubgraphView induce(const Graph& g, InduceMode mode, double gamma, const ThresholdConstants& k) {
    const auto [lo, hi] = induce_bounds(mode, std::int64_t(g.num_vertices()), gamma, k);
    if (mode == InduceMode::WeightThreshold || mode == InduceMode::WeightBand) return induced_by_weight(g, lo, hi);
    return induced_by_degree(g, lo, hi);
}

double ExpansionReport::worst_at(std::int64_t s) const {
    double best = kNaN;
    for (const auto& r : rows)
        if (r.s == s && (std::isnan(best) || r.worst_ratio < best)) best = r.worst_ratio;
    return best;
}

namespace {

std::vector<std::int64_t> size_grid(std::int64_t smax, int points) {
    std::vector<std::int64_t> out{1};
    for (int k = 1; k < points; ++k) {
        const auto s = static_cast<std::int64_t>(std::llround(std::exp(std::log(double(smax)) * k / (points - 1))));
        if (s > out.back()) out.push_back(s);
    }
    if (out.back() < smax) out.push_back(smax);
    return out;
}

void bfs_set(const Graph& h, const RandomTape& tape, std::uint64_t tag, std::size_t s, std::vector<VertexId>& out,
             std::vector<char>& seen) {
    const std::size_t n = h.num_vertices();
    out.clear();
    std::fill(seen.begin(), seen.end(), 0);
    std::queue<VertexId> q;
    std::uint64_t draw = 0;
    while (out.size() < s) {
        if (q.empty()) {
            VertexId v;
            do v = static_cast<VertexId>(tape.below(n, Purpose::Probe, tag, draw++));
            while (seen[v]);
            seen[v] = 1;
            q.push(v);
        }
        const VertexId v = q.front();
        q.pop();
        out.push_back(v);
        for (VertexId u : h.neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                q.push(u);
            }
    }
}

}  // namespace

ExpansionReport theorem_check(const Graph& g, const TheoremCheckConfig& cfg) {
    const ProbePlan& plan = cfg.probes;
    if (!(plan.max_frac > 0.0 && plan.max_frac <= 1.0)) throw std::invalid_argument("theorem_check: max_frac must lie in (0,1]");
    if (plan.grid_points < 2) throw std::invalid_argument("theorem_check: grid_points must be >= 2");
    if (!(plan.c_d > 1.0)) throw std::invalid_argument("theorem_check: c_d must exceed 1");
    const auto n = std::int64_t(g.num_vertices());
    const SubgraphView view = induce(g, cfg.mode, cfg.gamma, cfg.constants);
    if (view.empty()) throw std::invalid_argument("theorem_check: induced vertex set is empty");
    const Graph h = view.materialize();
    const std::size_t nv = h.num_vertices();

    ExpansionReport rep;
    rep.v_prime = nv;
    const Components comps = connected_components(h);
    rep.components = comps.count();
    rep.connected = comps.count() == 1;
    rep.min_induced_degree = std::numeric_limits<std::size_t>::max();
    for (VertexId v = 0; v < nv; ++v) rep.min_induced_degree = std::min(rep.min_induced_degree, h.degree(v));

    const auto smax = std::max<std::int64_t>(1, std::int64_t(plan.max_frac * double(nv)));
    const auto grid = size_grid(smax, plan.grid_points);
    const double first_branch = std::pow(std::log(double(n)), cfg.gamma * (3.0 - cfg.tau));
    auto shape = [&](std::int64_t s, double c_d) {
        return std::min(first_branch, std::pow(double(nv) / double(s), 1.0 - 1.0 / c_d));
    };

    const RandomTape tape(plan.seed);
    std::vector<char> mark(nv, 0), seen(nv, 0);
    std::vector<VertexId> set, perm(nv);
    auto ratio_of = [&](std::span<const VertexId> s) {
        for (VertexId v : s) mark[v] = 1;
        const std::size_t ext = external_count(h, s, mark);
        for (VertexId v : s) mark[v] = 0;
        return double(ext) / double(s.size());
    };

    // strip ids of the kept vertices, when the graph has positions and strips exist
    std::vector<std::uint32_t> strip;
    std::int64_t strips = 0;
    int dim = 0;
    if (h.has_vertex_data() && n >= 3) {
        try {
            strips = strip_width(n, cfg.gamma).count;
        } catch (const std::invalid_argument&) {
            strips = 0;
        }
        if (strips > 0) {
            dim = int(h.vertex(0).position.dim());
            strip.resize(nv * dim);
            for (VertexId v = 0; v < nv; ++v)
                for (int i = 0; i < dim; ++i) strip[v * dim + i] = strip_id(h.vertex(v).position[i], strips);
        }
    }

    const std::vector<double> greedy = greedy_profile(h, std::max(1, plan.greedy_restarts), std::size_t(smax), plan.seed);

    for (std::int64_t s : grid) {
        const double pred = shape(s, plan.c_d);
        auto emit = [&](double r, const char* method) { rep.rows.push_back({s, r, pred, method}); };
        if (s == 1) {
            emit(double(rep.min_induced_degree), "exhaustive");
        }
        if (plan.random_sets > 0) {
            double worst = kInfinity;
            for (int r = 0; r < plan.random_sets; ++r) {
                std::iota(perm.begin(), perm.end(), 0);
                for (std::int64_t k = 0; k < s; ++k) {
                    const auto pick = k + tape.below(nv - k, Purpose::Probe, 2, (std::uint64_t(s) << 20) ^ (r << 8), k);
                    std::swap(perm[k], perm[pick]);
                }
                worst = std::min(worst, ratio_of({perm.data(), std::size_t(s)}));
            }
            emit(worst, "random");
        }
        if (plan.bfs_sets > 0) {
            double worst = kInfinity;
            for (int r = 0; r < plan.bfs_sets; ++r) {
                bfs_set(h, tape, (3ull << 40) ^ (std::uint64_t(s) << 16) ^ std::uint64_t(r), std::size_t(s), set, seen);
                worst = std::min(worst, ratio_of(set));
            }
            emit(worst, "bfs");
        }
        if (strips > 0 && plan.strip_sets > 0) {
            double worst = kInfinity;
            std::vector<std::pair<std::pair<std::int64_t, double>, VertexId>> key(nv);
            for (int r = 0; r < plan.strip_sets; ++r) {
                const std::uint64_t tag = (4ull << 40) ^ (std::uint64_t(s) << 16) ^ std::uint64_t(r);
                const int i = int(tape.below(std::uint64_t(dim), Purpose::Probe, tag, 0));
                const auto j0 = std::int64_t(tape.below(std::uint64_t(strips), Purpose::Probe, tag, 1));
                const int other = (i + 1) % dim;
                const double centre = tape.uniform(Purpose::Probe, tag, 2);
                for (VertexId v = 0; v < nv; ++v) {
                    const std::int64_t band = (std::int64_t(strip[v * dim + i]) - j0 + strips) % strips;
                    const double sec = dim > 1 ? torus_abs(h.vertex(v).position[other], centre) : 0.0;
                    key[v] = {{band, sec}, v};
                }
                std::partial_sort(key.begin(), key.begin() + s, key.end());
                set.clear();
                for (std::int64_t k = 0; k < s; ++k) set.push_back(key[k].second);
                worst = std::min(worst, ratio_of(set));
            }
            emit(worst, "strip");
        }
        if (std::size_t(s) <= greedy.size() && !std::isnan(greedy[s - 1])) emit(greedy[s - 1], "greedy");
    }
    std::stable_sort(rep.rows.begin(), rep.rows.end(),
                     [](const ExpansionRow& a, const ExpansionRow& b) { return a.s != b.s ? a.s < b.s : a.method < b.method; });

    // fit log(observed) = a + b log(|V'|/s), then c_d = 1 / (1 - b)
    std::vector<double> xs, ys;
    for (std::int64_t s : grid) {
        const double obs = rep.worst_at(s);
        if (obs > 0.0 && std::int64_t(nv) > s) {
            xs.push_back(std::log(double(nv) / double(s)));
            ys.push_back(std::log(obs));
        }
    }
    rep.fitted_c_d = kNaN;
    if (xs.size() >= 2) {
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / double(ys.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sxy += (xs[k] - mx) * (ys[k] - my);
            sxx += (xs[k] - mx) * (xs[k] - mx);
        }
        if (sxx > 0.0) {
            const double slope = sxy / sxx;
            if (slope > 0.0 && slope < 1.0) rep.fitted_c_d = 1.0 / (1.0 - slope);
        }
    }
    rep.fit_used = !std::isnan(rep.fitted_c_d);
    rep.c_d = rep.fit_used ? rep.fitted_c_d : plan.c_d;
    rep.epsilon = kInfinity;
    for (std::int64_t s : grid) {
        const double obs = rep.worst_at(s);
        if (!std::isnan(obs)) rep.epsilon = std::min(rep.epsilon, obs / shape(s, rep.c_d));
    }
    return rep;
}

std::size_t hyperplane_cut_edges(const Graph& g, int coordinate) {
    if (!g.has_vertex_data()) throw std::invalid_argument("hyperplane_cut_edges: graph has no positions");
    if (g.num_vertices() > 0 && (coordinate < 0 || std::size_t(coordinate) >= g.vertex(0).position.dim()))
        throw std::invalid_argument("hyperplane_cut_edges: coordinate out of range");
    std::size_t cut = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const bool side = g.vertex(v).position[coordinate] < 0.5;
        for (VertexId u : g.neighbors(v))
            if (u > v && (g.vertex(u).position[coordinate] < 0.5) != side) ++cut;
    }
    return cut;
}

}  // namespace girglab
