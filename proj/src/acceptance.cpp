#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "girglab/expansion.hpp"
#include "girglab/experiment.hpp"
#include "girglab/processes.hpp"
#include "girglab/sampler.hpp"
#include "girglab/strips.hpp"

namespace girglab {

namespace {

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Least-squares slope of y on x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / double(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

ModelParams base_params(std::int64_t n, std::uint64_t seed) {
    ModelParams p;
    p.n = n;
    p.d = 2;
    p.tau = 2.5;
    p.alpha = 1.5;
    p.kernel_c = 1.0;
    p.geometry = Geometry::MCD;
    p.seed = seed;
    return p;
}

/// Sampling only pairs inside the band reproduces the induced full draw, so
/// the strip gamma passed to the sampler just has to give M >= 1.
Graph sample_band(const ModelParams& p, double lo, double hi, int threads) {
    SamplerOptions opt;
    opt.threads = threads;
    opt.restrict_to = WeightBand{lo, hi};
    return sample_graph_bucketed(p, 1.0, opt);
}

struct Ctx {
    CriterionResult& r;
    std::string exp;
    void row(std::uint64_t seed, const std::string& metric, const std::string& key, double value) {
        r.rows.push_back({exp, seed, metric, key, value});
    }
};

void geometry_oracle(Ctx& c, std::uint64_t base, bool quick) {
    const std::int64_t points = quick ? 100000 : 1000000;
    const RandomTape tape(base);
    bool ok = true;
    double worst_z = 0;
    for (int d = 1; d <= 3; ++d) {
        const double radii[] = {0.05, 0.1, 0.25};
        std::int64_t in_min[3] = {0, 0, 0}, in_linf[3] = {0, 0, 0};
        for (std::int64_t k = 0; k < points; ++k) {
            double lo = 1.0, hi = 0.0;
            for (int i = 0; i < d; ++i) {
                const double x = tape.uniform(Purpose::Trial, std::uint64_t(d), std::uint64_t(k), std::uint64_t(i));
                const double t = std::min(x, 1.0 - x);
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            for (int j = 0; j < 3; ++j) {
                in_min[j] += lo <= radii[j];
                in_linf[j] += hi <= radii[j];
            }
        }
        for (int j = 0; j < 3; ++j) {
            for (int g = 0; g < 2; ++g) {
                const double exact = g == 0 ? volume_min(radii[j], d) : volume_linf(radii[j], d);
                const double freq = double(g == 0 ? in_min[j] : in_linf[j]) / double(points);
                const double se = std::sqrt(exact * (1 - exact) / double(points));
                const double z = se > 0 ? std::abs(freq - exact) / se : (freq == exact ? 0 : 1e9);
                worst_z = std::max(worst_z, z);
                ok = ok && z <= 3.0;
                const std::string key = std::string(g == 0 ? "mcd" : "linf") + ";d=" + std::to_string(d) +
                                        ";r=" + fmt("%g", radii[j]);
                c.row(base, "empirical", key, freq);
                c.row(base, "exact", key, exact);
                c.row(base, "z", key, z);
            }
        }
    }
    c.r.pass = ok;
    c.r.detail = fmt("largest |z| = %.3f over 18 checks (limit 3)", worst_z);
}

void weight_law(Ctx& c, std::uint64_t base, bool quick) {
    const std::int64_t draws = quick ? 100000 : 1000000;
    bool ok = true;
    double worst = 0;
    for (double tau : {2.2, 2.5, 2.8}) {
        const auto verts = sample_vertices(base, draws, 1, tau);
        for (double w : {2.0, 4.0, 8.0, 16.0}) {
            std::int64_t above = 0;
            for (const auto& v : verts) above += v.weight >= w;
            const double freq = double(above) / double(draws);
            const double exact = std::pow(w, 1.0 - tau);
            const double err = std::abs(std::log(freq / exact));
            worst = std::max(worst, err);
            ok = ok && err <= 0.05;
            const std::string key = "tau=" + fmt("%g", tau) + ";w=" + fmt("%g", w);
            c.row(base, "tail_frequency", key, freq);
            c.row(base, "tail_exact", key, exact);
            c.row(base, "log_error", key, err);
        }
    }
    c.r.pass = ok;
    c.r.detail = fmt("largest |log(freq/exact)| = %.4f (limit 0.05)", worst);
}

void sampler_equivalence(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const int cells = quick ? 6 : 30;
    const std::int64_t sizes[] = {300, 700, 1300, 2000};
    const double taus[] = {2.2, 2.5, 2.8};
    const double alphas[] = {1.2, 1.5, 3.0};
    int same = 0;
    for (int k = 0; k < cells; ++k) {
        ModelParams p = base_params(quick ? 200 + 50 * k : sizes[(k / 4) % 4], base + std::uint64_t(k));
        p.d = 1 + k % 2;
        p.geometry = (k / 2) % 2 ? Geometry::LINF : Geometry::MCD;
        p.tau = taus[k % 3];
        p.alpha = alphas[(k / 3) % 3];
        p.kernel_c = k % 5 == 4 ? 0.5 : 1.0;
        SamplerOptions opt;
        opt.threads = threads;
        const Graph a = sample_graph_naive(p);
        const Graph b = sample_graph_bucketed(p, 1.0, opt);
        const bool eq = a.edges() == b.edges();
        same += eq;
        const std::string key = "cell=" + std::to_string(k) + ";n=" + std::to_string(p.n) + ";d=" +
                                std::to_string(p.d) + ";geometry=" + to_string(p.geometry);
        c.row(p.seed, "naive_edges", key, double(a.num_edges()));
        c.row(p.seed, "bucketed_edges", key, double(b.num_edges()));
        c.row(p.seed, "identical", key, eq ? 1.0 : 0.0);
    }
    c.r.pass = same == cells;
    c.r.detail = std::to_string(same) + "/" + std::to_string(cells) + " cells identical";
}

void subgraph_scaling(Ctx& c, std::uint64_t base, bool quick) {
    const double gamma = 1.2, tau = 2.5;
    const std::vector<std::int64_t> ns = quick ? std::vector<std::int64_t>{2000, 5000}
                                               : std::vector<std::int64_t>{10000, 30000, 100000};
    const int seeds = quick ? 4 : 20;
    std::vector<double> means;
    for (auto n : ns) {
        const double threshold = std::pow(std::log(double(n)), gamma);
        const double scale = double(n) * std::pow(std::log(double(n)), gamma * (1 - tau));
        double sum = 0;
        for (int s = 0; s < seeds; ++s) {
            const auto verts = sample_vertices(base + std::uint64_t(s), n, 2, tau);
            std::int64_t nv = 0;
            for (const auto& v : verts) nv += v.weight >= threshold;
            const double ratio = double(nv) / scale;
            sum += ratio;
            c.row(base + std::uint64_t(s), "vprime_ratio", "n=" + std::to_string(n), ratio);
        }
        means.push_back(sum / seeds);
        c.row(base, "vprime_ratio_mean", "n=" + std::to_string(n), means.back());
    }
    const double hi = *std::max_element(means.begin(), means.end());
    const double lo = *std::min_element(means.begin(), means.end());
    const double spread = lo > 0 ? hi / lo : INFINITY;
    c.row(base, "vprime_ratio_spread", "max/min", spread);
    c.r.pass = spread <= 2.0;
    c.r.detail = fmt("mean ratio spread max/min = %.3f (limit 2)", spread);
}

void same_strip(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const double gamma = 1.2;
    const std::vector<std::int64_t> ns = quick ? std::vector<std::int64_t>{5000, 20000}
                                               : std::vector<std::int64_t>{10000, 100000};
    const int seeds = quick ? 3 : 20;
    std::vector<double> med_by_n;
    int good_top = 0;
    for (std::size_t a = 0; a < ns.size(); ++a) {
        const auto n = ns[a];
        const double t = std::pow(std::log(double(n)), gamma);
        std::vector<double> medians;
        for (int s = 0; s < seeds; ++s) {
            const ModelParams p = base_params(n, base + std::uint64_t(s));
            const Graph g = sample_band(p, t, kInfinity, threads);
            const SubgraphView vp = induced_by_weight(g, t);
            const StripIndex idx(g, gamma);
            std::vector<double> counts;
            for (VertexId v : vp.kept()) counts.push_back(double(same_strip_neighbors(vp, idx, v, 0, t, 2 * t)));
            const double mn = counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
            const double md = median(counts);
            medians.push_back(md);
            if (a + 1 == ns.size() && mn >= 1) ++good_top;
            const std::string key = "n=" + std::to_string(n);
            c.row(p.seed, "vprime", key, double(vp.size()));
            c.row(p.seed, "same_strip_min", key, mn);
            c.row(p.seed, "same_strip_median", key, md);
            c.row(p.seed, "strips", key, double(idx.strips()));
        }
        med_by_n.push_back(median(medians));
        c.row(base, "same_strip_median_over_seeds", "n=" + std::to_string(n), med_by_n.back());
    }
    const int need = quick ? seeds : 18;
    const bool grows = med_by_n.back() >= med_by_n.front();
    c.r.pass = good_top >= need && grows;
    c.r.detail = "min >= 1 in " + std::to_string(good_top) + "/" + std::to_string(seeds) + " seeds at n=" +
                 std::to_string(ns.back()) + " (need " + std::to_string(need) + "); median " +
                 fmt("%g -> %g", med_by_n.front(), med_by_n.back());
}

/// gamma in the middle of the interval where floor(n / ln(n)^{2 gamma}) = m.
double gamma_for_strips(std::int64_t n, std::int64_t m) {
    const double l = std::log(std::log(double(n)));
    const double lo = std::log(double(n) / double(m + 1)) / l / 2, hi = std::log(double(n) / double(m)) / l / 2;
    return 0.5 * (lo + hi);
}

void cover_validity(Ctx& c, std::uint64_t base, bool quick) {
    const std::int64_t n = 200;
    const double gamma = gamma_for_strips(n, 5);
    const auto sw = strip_width(n, gamma);
    ModelParams p = base_params(n, base);
    const std::int64_t trials = quick ? 60 : 500;
    bool ok = sw.count == 5;
    c.row(base, "strips", "gamma=" + fmt("%.6f", gamma), double(sw.count));
    for (std::int64_t s : {3, 4, 5})
        for (std::int64_t k : {1, 2}) {
            const CoverEstimate est = empirical_cover_probability(p, gamma, s, k, trials);
            const std::string key = "s=" + std::to_string(s) + ";k=" + std::to_string(k);
            c.row(base, "frequency", key, est.frequency);
            c.row(base, "mean_bound", key, est.mean_bound);
            c.row(base, "mean_vprime", key, est.mean_nv);
            ok = ok && est.frequency <= est.mean_bound && !est.upper_estimate;
        }
    const double anchor = cover_bound({10, 3, 1, 5, 2});
    c.row(base, "cover_bound", "nv=10;s=3;k=1;M=5;d=2", anchor);
    const bool anchor_ok = anchor == 0.192;
    c.r.pass = ok && anchor_ok;
    c.r.detail = std::string(ok ? "frequency <= bound in all 6 cells" : "bound violated or M != 5") +
                 fmt("; cover_bound(10,3,5,1,2) = %.15g", anchor);
}

void expansion_desk(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const std::int64_t n = quick ? 4000 : 10000;
    const double gamma = 1.2;
    const int seeds = quick ? 3 : 20;
    const double t = std::pow(std::log(double(n)), gamma);
    int good = 0;
    bool sound = true;
    for (int s = 0; s < seeds; ++s) {
        const ModelParams p = base_params(n, base + std::uint64_t(s));
        const Graph g = sample_band(p, t, 2 * t, threads);
        TheoremCheckConfig cfg;
        cfg.gamma = gamma;
        cfg.tau = p.tau;
        cfg.mode = InduceMode::WeightBand;
        const SubgraphView band = induce(g, cfg.mode, gamma, cfg.constants);
        const auto smax = std::max<std::int64_t>(1, std::int64_t(band.size()) / 10);
        cfg.probes.max_frac = std::min(1.0, double(smax) / double(std::max<std::size_t>(1, band.size())) + 1e-12);
        cfg.probes.grid_points = int(std::max<std::int64_t>(2, smax));
        cfg.probes.random_sets = 50;
        cfg.probes.bfs_sets = 50;
        cfg.probes.strip_sets = 50;
        cfg.probes.greedy_restarts = 50;
        cfg.probes.seed = p.seed;
        double worst = INFINITY;
        if (band.size() > 0) {
            const ExpansionReport rep = theorem_check(g, cfg);
            for (const auto& row : rep.rows)
                if (row.s <= smax) worst = std::min(worst, row.worst_ratio);
            c.row(p.seed, "epsilon_fit", "n=" + std::to_string(n), rep.epsilon);
            // brute-force soundness on a patch of at most 300 vertices
            const Graph h = band.materialize();
            std::vector<VertexId> patch(std::min<std::size_t>(300, h.num_vertices()));
            std::iota(patch.begin(), patch.end(), 0);
            const Graph ph = SubgraphView(h, patch).materialize();
            const int bsize = ph.num_vertices() > 150 ? 2 : 3;
            const WorstSet exact = brute_force_min_expansion(ph, bsize);
            const auto prof = greedy_profile(ph, 20, std::size_t(bsize), p.seed);
            for (std::size_t k = 0; k < prof.size(); ++k) sound = sound && prof[k] >= exact.ratio;
            const WorstSet gw = greedy_worst_set(ph, 20, std::min(0.99, double(bsize) / double(ph.num_vertices())), p.seed);
            sound = sound && gw.ratio >= exact.ratio;
            c.row(p.seed, "brute_force_min", "patch=" + std::to_string(ph.num_vertices()), exact.ratio);
        }
        const std::string key = "n=" + std::to_string(n);
        c.row(p.seed, "vband", key, double(band.size()));
        c.row(p.seed, "min_ratio", key, worst);
        if (worst >= 1.0) ++good;
    }
    const int need = quick ? seeds - 1 : 18;
    c.r.pass = good >= need && sound;
    c.r.detail = "min ratio >= 1 in " + std::to_string(good) + "/" + std::to_string(seeds) + " seeds (need " +
                 std::to_string(need) + "); brute-force soundness " + (sound ? "ok" : "VIOLATED");
}

void tightness(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const std::int64_t n = quick ? 20000 : 100000;
    const int seeds = quick ? 10 : 100;
    int low_hits = 0, high_hits = 0;
    for (double gamma : {1.0, 2.5}) {
        const double t = std::pow(std::log(double(n)), gamma);
        std::vector<double> iso;
        for (int s = 0; s < seeds; ++s) {
            const ModelParams p = base_params(n, base + std::uint64_t(s));
            const Graph g = sample_band(p, t, kInfinity, threads);
            const SubgraphView vp = induced_by_weight(g, t);
            const auto k = isolated_count(vp);
            const std::string key = "gamma=" + fmt("%g", gamma);
            c.row(p.seed, "isolated", key, double(k));
            c.row(p.seed, "vprime", key, double(vp.size()));
            if (gamma < 2 && k >= 1) ++low_hits;
            if (gamma > 2 && k == 0) ++high_hits;
        }
    }
    const int need = quick ? seeds - 1 : 95;
    c.r.pass = low_hits >= need && high_hits >= need;
    c.r.detail = "gamma=1: isolated >= 1 in " + std::to_string(low_hits) + "/" + std::to_string(seeds) +
                 "; gamma=2.5: no isolated in " + std::to_string(high_hits) + "/" + std::to_string(seeds) +
                 " (need " + std::to_string(need) + " each)";
}

void separator_contrast(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const std::vector<std::int64_t> ns = quick ? std::vector<std::int64_t>{2000, 4000, 8000}
                                               : std::vector<std::int64_t>{10000, 30000, 100000};
    const int seeds = quick ? 3 : 20;
    double exps[2] = {0, 0};
    for (int gi = 0; gi < 2; ++gi) {
        const Geometry geo = gi == 0 ? Geometry::LINF : Geometry::MCD;
        std::vector<double> x, y;
        for (auto n : ns)
            for (int s = 0; s < seeds; ++s) {
                ModelParams p = base_params(n, base + std::uint64_t(s));
                p.geometry = geo;
                SamplerOptions opt;
                opt.threads = threads;
                const Graph g = sample_graph_bucketed(p, 1.0, opt);
                const auto cut = hyperplane_cut_edges(g, 0);
                c.row(p.seed, "cut_edges", std::string(to_string(geo)) + ";n=" + std::to_string(n), double(cut));
                x.push_back(std::log(double(n)));
                y.push_back(std::log(std::max<double>(1.0, double(cut))));
            }
        exps[gi] = slope(x, y);
        c.row(base, "cut_exponent", to_string(geo), exps[gi]);
    }
    c.r.pass = exps[0] < 0.95 && exps[1] >= 0.95;
    c.r.detail = fmt("fitted exponent linf = %.3f (need < 0.95), mcd = %.3f (need >= 0.95)", exps[0], exps[1]);
}

void spectral_mixing(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const std::int64_t n = quick ? 4000 : 10000;
    const double gamma = 1.2;
    const int seeds = quick ? 3 : 20;
    const double t = std::pow(std::log(double(n)), gamma);
    int gap_ok = 0, mix_ok = 0;
    bool oracle_ok = true;
    double worst_oracle = 0;
    auto oracle = [&](const Graph& g, const std::string& key, std::uint64_t seed, double expect) {
        const double dense = spectral_gap_dense(g).lambda2;
        const double lan = spectral_gap_lanczos(g).lambda2;
        const double routed = spectral_gap(g).lambda2;
        double err = std::max(std::abs(lan - dense), std::abs(routed - dense)) / std::max(dense, 1e-300);
        if (!std::isnan(expect)) err = std::max(err, std::abs(dense - expect) / expect);
        worst_oracle = std::max(worst_oracle, err);
        oracle_ok = oracle_ok && err <= 1e-6;
        c.row(seed, "lambda2_dense", key, dense);
        c.row(seed, "lambda2_lanczos", key, lan);
    };
    oracle(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), "K4", base, 4.0 / 3.0);
    oracle(Graph(3, {{0, 1}, {1, 2}}), "P3", base, 1.0);
    for (int s = 0; s < seeds; ++s) {
        const ModelParams p = base_params(n, base + std::uint64_t(s));
        const Graph g = sample_band(p, t, 2 * t, threads);
        const Graph h = induced_by_weight(g, t, 2 * t).materialize();
        const std::string key = "n=" + std::to_string(n);
        if (h.num_vertices() < 2) {
            c.row(p.seed, "lambda2", key, 0.0);
            continue;
        }
        const SpectralGap gap = spectral_gap(h);
        c.row(p.seed, "lambda2", key, gap.lambda2);
        c.row(p.seed, "components", key, double(gap.components));
        if (gap.lambda2 >= 0.01) ++gap_ok;
        // the walk needs a connected graph; use the largest component and its own gap
        const Graph giant = SubgraphView(h, largest_component(h)).materialize();
        if (giant.num_vertices() < 2) continue;
        if (giant.num_vertices() < 500) oracle(giant, key + ";giant", p.seed, std::nan(""));
        const double lam = spectral_gap(giant).lambda2;
        const double budget = 10.0 * std::log(double(giant.num_vertices())) / lam;
        const auto mix = estimate_mixing_time(giant, 0.05, VertexId(0), std::int64_t(std::ceil(budget)));
        c.row(p.seed, "mixing_steps", key, double(mix.steps));
        c.row(p.seed, "mixing_budget", key, budget);
        if (mix.within_budget && double(mix.steps) <= budget) ++mix_ok;
    }
    const int need = quick ? seeds - 1 : 18;
    c.r.pass = gap_ok >= need && mix_ok == seeds && oracle_ok;
    c.r.detail = "lambda2 >= 0.01 in " + std::to_string(gap_ok) + "/" + std::to_string(seeds) + " (need " +
                 std::to_string(need) + "); mixed within budget in " + std::to_string(mix_ok) + "/" +
                 std::to_string(seeds) + fmt("; dense oracle max rel error %.2e", worst_oracle);
}

void rumor_shape(Ctx& c, std::uint64_t base, bool quick, int threads) {
    const std::vector<std::int64_t> ns = quick ? std::vector<std::int64_t>{1000, 10000}
                                               : std::vector<std::int64_t>{1000, 100000};
    const int seeds = quick ? 5 : 20;
    std::vector<double> med;
    for (auto n : ns) {
        std::vector<double> rounds;
        for (int s = 0; s < seeds; ++s) {
            const ModelParams p = base_params(n, base + std::uint64_t(s));
            SamplerOptions opt;
            opt.threads = threads;
            const Graph g = sample_graph_bucketed(p, 1.0, opt);
            const Graph giant = SubgraphView(g, largest_component(g)).materialize();
            const RandomTape tape(p.seed);
            const auto source = VertexId(tape.below(giant.num_vertices(), Purpose::Trial, 11));
            const auto r = push_rumor(giant, source, 0.5, p.seed);
            rounds.push_back(double(r.rounds));
            c.row(p.seed, "rounds", "n=" + std::to_string(n), double(r.rounds));
            c.row(p.seed, "giant", "n=" + std::to_string(n), double(giant.num_vertices()));
        }
        med.push_back(median(rounds));
        c.row(base, "median_rounds", "n=" + std::to_string(n), med.back());
    }
    const double diff = med.back() - med.front();
    c.r.pass = diff <= 3.0;
    c.r.detail = fmt("median rounds %g -> %g", med.front(), med.back()) + fmt(" (difference %g, limit 3)", diff);
}

}  // namespace

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names{
        "geometry_oracle",  "weight_law",         "sampler_equivalence", "subgraph_scaling",
        "same_strip",       "cover_bound",        "expansion",           "tightness",
        "separator",        "spectral_mixing",    "rumor_shape",         "determinism"};
    return names;
}

CriterionResult run_criterion(int id, std::uint64_t base, bool quick, int threads) {
    if (id < 1 || id > 11) throw std::invalid_argument("run_criterion: id must lie in 1..11");
    CriterionResult r;
    r.id = id;
    r.name = criterion_names()[std::size_t(id - 1)];
    Ctx c{r, std::to_string(id) + "." + r.name};
    switch (id) {
        case 1: geometry_oracle(c, base, quick); break;
        case 2: weight_law(c, base, quick); break;
        case 3: sampler_equivalence(c, base, quick, threads); break;
        case 4: subgraph_scaling(c, base, quick); break;
        case 5: same_strip(c, base, quick, threads); break;
        case 6: cover_validity(c, base, quick); break;
        case 7: expansion_desk(c, base, quick, threads); break;
        case 8: tightness(c, base, quick, threads); break;
        case 9: separator_contrast(c, base, quick, threads); break;
        case 10: spectral_mixing(c, base, quick, threads); break;
        case 11: rumor_shape(c, base, quick, threads); break;
    }
    return r;
}

}  // namespace girglab
