#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "girglab/experiment.hpp"
#include "girglab/sampler.hpp"

using namespace girglab;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::optional<std::string> format;
    std::optional<std::int64_t> n;
    std::optional<int> d;
    std::optional<double> tau, alpha, kernel_c, gamma;
    std::optional<std::string> geometry, mode, target;
    bool allow_subcritical = false;
    bool no_graphs = false;
    bool traces = false;
    std::optional<std::int64_t> trials, cover_s, cover_k;
    std::optional<double> coverage, beta, eps_tv;
    std::optional<int> coordinate;
    std::vector<std::int64_t> sizes;
    std::vector<int> criteria;
    bool quick = false;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "single seed, replaces the config's seed list");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--threads", o.threads, "worker threads (default GIRG_LAB_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "results table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-n,--n", o.n, "number of vertices");
    sub->add_option("-d,--dim", o.d, "dimension");
    sub->add_option("--tau", o.tau, "power-law exponent");
    sub->add_option("--alpha", o.alpha, "long-range parameter");
    sub->add_option("--kernel-c", o.kernel_c, "kernel constant");
    sub->add_option("--geometry", o.geometry)->check(CLI::IsMember({"mcd", "linf"}));
    sub->add_option("--gamma", o.gamma, "threshold exponent");
    sub->add_flag("--allow-subcritical", o.allow_subcritical, "permit gamma <= 1/(3-tau)");
    sub->add_option("--mode", o.mode, "weight-threshold, weight-band, degree-threshold or degree-band");
}

ExperimentConfig build(const Overrides& o, const std::string& analysis) {
    ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
    if (!analysis.empty()) {
        cfg.analyses = {analysis};
        cfg.name = analysis;
    }
    if (o.seed) cfg.seeds = {*o.seed};
    if (o.out) cfg.output.dir = *o.out;
    if (o.threads)
        cfg.threads = *o.threads;
    else if (std::getenv("GIRG_LAB_THREADS"))
        cfg.threads = default_thread_count();
    if (o.format) cfg.output.format = *o.format;
    if (o.n) cfg.model.n = *o.n;
    if (o.d) cfg.model.d = *o.d;
    if (o.tau) cfg.model.tau = *o.tau;
    if (o.alpha) cfg.model.alpha = *o.alpha;
    if (o.kernel_c) cfg.model.kernel_c = *o.kernel_c;
    if (o.geometry) cfg.model.geometry = geometry_from_string(*o.geometry);
    AnalysisParams& a = cfg.analysis;
    if (o.gamma) a.gamma = *o.gamma;
    if (o.allow_subcritical) a.allow_subcritical = true;
    if (o.mode) a.mode = induce_mode_from_string(*o.mode);
    if (o.target) a.target = *o.target;
    if (o.no_graphs) cfg.output.write_graphs = false;
    if (o.traces) cfg.output.traces = true;
    if (o.trials) a.trials = *o.trials;
    if (o.cover_s) a.cover_s = *o.cover_s;
    if (o.cover_k) a.cover_k = *o.cover_k;
    if (o.coverage) a.coverage = *o.coverage;
    if (o.beta) a.beta = *o.beta;
    if (o.eps_tv) a.eps_tv = *o.eps_tv;
    if (o.coordinate) a.coordinate = *o.coordinate;
    if (!o.sizes.empty()) a.sizes = o.sizes;
    if (!o.criteria.empty()) a.criteria = o.criteria;
    if (o.quick) a.scale = "quick";
    cfg.validate();
    return cfg;
}

void report(const ExperimentOutcome& r) {
    for (const auto& c : r.criteria)
        std::printf("%s %2d %-22s %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.detail.c_str());
    if (r.criteria.empty())
        for (const auto& row : r.rows)
            std::printf("%llu %s %s %s\n", static_cast<unsigned long long>(row.seed), row.metric.c_str(),
                        row.key.empty() ? "-" : row.key.c_str(), format_real(row.value).c_str());
    for (const auto& f : r.files) std::fprintf(stderr, "wrote %s\n", f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"girg_lab: sample and analyse geometric inhomogeneous random graphs"};
    app.require_subcommand(1);
    Overrides o;

    struct Cmd {
        const char* name;
        const char* analysis;
        const char* help;
    };
    const Cmd cmds[] = {
        {"generate", "generate", "sample a graph and write edge/vertex files"},
        {"induce", "induce", "size and degrees of the weight- or degree-induced subgraph"},
        {"strips", "strips", "strip counts and same-strip neighbours in the induced subgraph"},
        {"cover-bound", "cover_bound", "Monte Carlo strip covering frequency against the analytic bound"},
        {"expansion", "expansion", "adversarial expansion probes on the band subgraph"},
        {"spectral", "spectral", "normalized Laplacian gap and Cheeger bounds"},
        {"walk", "walk", "lazy random walk mixing time"},
        {"rumor", "rumor", "push rumor rounds to the coverage target"},
        {"si", "si", "SI epidemic rounds to the coverage target"},
        {"cut-contrast", "cut_contrast", "hyperplane cut edges for L-infinity and MCD geometries"},
        {"run", "", "run the analyses listed in --config"},
    };
    std::vector<std::pair<CLI::App*, std::string>> subs;
    for (const Cmd& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, o);
        subs.emplace_back(sub, c.analysis);
    }
    app.get_subcommand("generate")->add_flag("--no-graphs", o.no_graphs, "skip writing graph files");
    app.get_subcommand("cover-bound")->add_option("--trials", o.trials);
    app.get_subcommand("cover-bound")->add_option("-s", o.cover_s, "set size");
    app.get_subcommand("cover-bound")->add_option("-k", o.cover_k, "strips per coordinate");
    app.get_subcommand("strips")->add_option("--coordinate", o.coordinate);
    app.get_subcommand("cut-contrast")->add_option("--coordinate", o.coordinate);
    app.get_subcommand("cut-contrast")->add_option("--sizes", o.sizes, "graph sizes to compare");
    for (const char* name : {"spectral", "walk", "rumor", "si"})
        app.get_subcommand(name)
            ->add_option("--target", o.target, "induced, giant or full")
            ->check(CLI::IsMember({"induced", "giant", "full"}));
    app.get_subcommand("walk")->add_option("--eps", o.eps_tv, "total variation target");
    for (const char* name : {"rumor", "si"}) {
        app.get_subcommand(name)->add_option("--coverage", o.coverage);
        app.get_subcommand(name)->add_flag("--trace", o.traces, "write per-round trace files");
    }
    app.get_subcommand("si")->add_option("--beta", o.beta, "per-edge infection probability");
    app.get_subcommand("run")->add_option("--criteria", o.criteria, "acceptance checks to run");
    app.get_subcommand("run")->add_flag("--quick", o.quick, "reduced acceptance scale");

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& [sub, analysis] : subs) {
            if (!sub->parsed()) continue;
            if (analysis.empty() && o.config.empty()) throw ConfigError("run: --config is required");
            const ExperimentOutcome r = run_experiment(build(o, analysis));
            report(r);
            return r.exit_status;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "girg_lab: %s\n", e.what());
        return 2;
    }
    return 0;
}
