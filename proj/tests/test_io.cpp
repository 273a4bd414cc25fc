#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "girglab/experiment.hpp"
#include "girglab/io.hpp"
#include "girglab/sampler.hpp"

using namespace girglab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("girglab_test_" + name);
    fs::remove_all(p);
    return p;
}

Graph from_text(const std::string& edges) {
    std::istringstream is(edges);
    return read_graph(is);
}

}  // namespace

TEST_CASE("config defaults") {
    const ExperimentConfig c = parse_config("{}");
    CHECK(c.model.kernel_c == 1.0);
    CHECK(c.analysis.c_prime == 1.0);
    CHECK(c.analysis.c1 == 1.0);
    CHECK(c.analysis.c2 == 2.0);
    CHECK(c.seeds == std::vector<std::uint64_t>{0});
    CHECK(c.output.format == "csv");
    const ExperimentConfig d = parse_config(R"({"model": {"n": 500, "geometry": "linf"}, "seeds": [3, 4]})");
    CHECK(d.model.n == 500);
    CHECK(d.model.geometry == Geometry::LINF);
    CHECK(d.seeds.size() == 2);
    CHECK(parse_config(config_to_json(d)).model.n == 500);
    CHECK(config_to_json(parse_config(config_to_json(d))) == config_to_json(d));
}

TEST_CASE("config errors name the field") {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"model": {"tau": 1.5}})").find("model.tau") != std::string::npos);
    const std::string g = message(R"({"analysis": {"gamma": 1.0}})");
    CHECK(g.find("analysis.gamma") != std::string::npos);
    CHECK(g.find("1/(3-tau) = 2") != std::string::npos);
    CHECK(message(R"({"analysis": {"gamma": 1.0, "allow_subcritical": true}})").empty());
    CHECK(message(R"({"model": {"nn": 5}})").find("model.nn") != std::string::npos);
    CHECK(message(R"({"seeds": []})").find("seeds") != std::string::npos);
    CHECK(message(R"({"analyses": ["bogus"]})").find("bogus") != std::string::npos);
    CHECK(message(R"({"model": {"n": "ten"}})").find("model.n") != std::string::npos);
    CHECK(message("{").find("parse error") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("graph files") {
    const Graph empty(2, {});
    std::ostringstream e0;
    write_edges(e0, empty);
    CHECK(e0.str() == "girg-edges v1 n=2 m=0\n");

    ModelParams p;
    p.n = 300;
    p.seed = 12;
    const Graph g = sample_graph_naive(p);
    const fs::path dir = scratch("roundtrip");
    fs::create_directories(dir);
    save_graph(g, (dir / "e1").string(), (dir / "v1").string());
    const Graph h = load_graph((dir / "e1").string(), (dir / "v1").string());
    save_graph(h, (dir / "e2").string(), (dir / "v2").string());
    CHECK(slurp(dir / "e1") == slurp(dir / "e2"));
    CHECK(slurp(dir / "v1") == slurp(dir / "v2"));
    CHECK(h.edges() == g.edges());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        CHECK(h.vertex(v).weight == g.vertex(v).weight);
        CHECK(h.vertex(v).position == g.vertex(v).position);
    }
    fs::remove_all(dir);
}

TEST_CASE("malformed graph files") {
    CHECK(from_text("girg-edges v1 n=3 m=1\n0 2\n").num_edges() == 1);
    CHECK_THROWS_AS(from_text("girg-edges v1 n=3 m=2\n0 1\n0 1\n"), FormatError);
    CHECK_THROWS_AS(from_text("girg-edges v1 n=3 m=2\n0 1\n1 0\n"), FormatError);
    CHECK_THROWS_AS(from_text("girg-edges v1 n=3 m=2\n0 1\n"), FormatError);
    CHECK_THROWS_AS(from_text("girg-edges v2 n=3 m=0\n"), FormatError);
    CHECK_THROWS_AS(from_text("girg-edges v1 n=3 m=1\n0 3\n"), FormatError);
    CHECK_THROWS_AS(from_text("girg-edges v1 n=3 m=1\n1 1\n"), FormatError);
    CHECK_THROWS_AS(from_text(""), FormatError);
    std::istringstream e("girg-edges v1 n=2 m=0\n"), v("girg-verts v1 n=3 d=1\n0 1 0.5\n1 1 0.5\n2 1 0.5\n");
    CHECK_THROWS_AS(read_graph(e, &v), FormatError);
}

TEST_CASE("results csv") {
    const std::string csv = results_csv({{"a.b", 3, "m", "k=1;x", 0.1}, {"c", 4, "m,2", "", 2.0}});
    CHECK(csv == "experiment,seed,metric,key,value\na.b,3,m,k=1;x,0.10000000000000001\nc,4,\"m,2\",,2\n");
    CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("generation-only experiments write just the graph files") {
    const fs::path dir = scratch("generate");
    ExperimentConfig cfg;
    cfg.model.n = 200;
    cfg.seeds = {1, 2};
    cfg.output.dir = dir.string();
    const ExperimentOutcome out = run_experiment(cfg);
    CHECK(out.exit_status == 0);
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"edges_1.txt", "edges_2.txt", "verts_1.txt", "verts_2.txt"});
    fs::remove_all(dir);
}

TEST_CASE("unknown analyses fail before sampling") {
    const fs::path dir = scratch("unknown");
    ExperimentConfig cfg;
    cfg.analyses = {"generate", "telepathy"};
    cfg.output.dir = dir.string();
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("experiments are reproducible") {
    ExperimentConfig cfg;
    cfg.model.n = 600;
    cfg.seeds = {5, 6};
    cfg.analysis.gamma = 1.2;
    cfg.analysis.allow_subcritical = true;
    cfg.analysis.target = "giant";
    cfg.analyses = {"generate", "induce", "strips", "spectral", "walk", "rumor", "si", "plot"};
    cfg.output.write_graphs = false;
    cfg.output.dir = scratch("repeat_a").string();
    const ExperimentOutcome a = run_experiment(cfg);
    cfg.output.dir = scratch("repeat_b").string();
    const ExperimentOutcome b = run_experiment(cfg);
    CHECK(slurp(a.results_path) == slurp(b.results_path));
    CHECK(slurp(a.summary_path).size() == slurp(b.summary_path).size());
    CHECK(fs::exists(fs::path(a.results_path).parent_path() / "plot_nodes_5.csv"));
    CHECK(a.rows.size() > 20);
    fs::remove_all(fs::path(a.results_path).parent_path());
    fs::remove_all(fs::path(b.results_path).parent_path());
}

TEST_CASE("module errors carry experiment context") {
    ExperimentConfig cfg;
    cfg.model.n = 50;
    cfg.analysis.gamma = 2.5;
    cfg.analyses = {"strips"};
    cfg.output.dir = scratch("context").string();
    try {
        run_experiment(cfg);
        FAIL("expected an error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("analysis 'strips'") != std::string::npos);
    }
    fs::remove_all(cfg.output.dir);
}
