#include "girglab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace girglab {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) { throw ConfigError(field + ": " + msg); }

void reject_unknown(const ordered_json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }) == keys.end())
            fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
    }
}

template <class T>
void read(const ordered_json& obj, const char* key, const std::string& where, T& out) {
    if (!obj.contains(key)) return;
    const std::string field = where.empty() ? key : where + "." + key;
    try {
        out = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(field, "has the wrong type");
    }
}

void require_object(const ordered_json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "must be an object");
}

}  // namespace

const std::vector<std::string>& known_analyses() {
    static const std::vector<std::string> names{"generate", "induce", "strips",      "cover_bound", "expansion",
                                                "spectral", "walk",   "rumor",       "si",          "cut_contrast",
                                                "plot",     "acceptance"};
    return names;
}

void check_gamma(double gamma, double tau, bool allow_subcritical) {
    if (!(gamma > 0) || !std::isfinite(gamma)) fail("analysis.gamma", "must be positive");
    if (allow_subcritical) return;
    if (tau >= 3.0)
        fail("analysis.gamma", "no gamma exceeds 1/(3-tau) when tau >= 3; set analysis.allow_subcritical to proceed");
    const double hint = 1.0 / (3.0 - tau);
    if (!(gamma > hint)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g", hint);
        fail("analysis.gamma", "must exceed 1/(3-tau) = " + std::string(buf) +
                                   "; set analysis.allow_subcritical to run below the threshold");
    }
}

void ExperimentConfig::validate() const {
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model.") + e.what());
    }
    if (seeds.empty()) fail("seeds", "must be a nonempty list");
    if (analyses.empty()) fail("analyses", "must name at least one analysis");
    for (const auto& a : analyses)
        if (std::find(known_analyses().begin(), known_analyses().end(), a) == known_analyses().end())
            fail("analyses", "unknown analysis '" + a + "'");
    const AnalysisParams& an = analysis;
    check_gamma(an.gamma, model.tau, an.allow_subcritical);
    if (!(an.c_prime > 0)) fail("analysis.c_prime", "must be positive");
    if (!(an.c1 > 0)) fail("analysis.c1", "must be positive");
    if (!(an.c2 >= an.c1)) fail("analysis.c2", "must be >= analysis.c1");
    if (an.trials < 1) fail("analysis.trials", "must be >= 1");
    if (an.cover_s < 1) fail("analysis.cover_s", "must be >= 1");
    if (an.cover_k < 1) fail("analysis.cover_k", "must be >= 1");
    if (an.target != "induced" && an.target != "giant" && an.target != "full")
        fail("analysis.target", "must be one of induced, giant, full");
    if (!(an.eps_tv > 0 && an.eps_tv < 1)) fail("analysis.eps_tv", "must lie in (0,1)");
    if (an.walk_budget < 0) fail("analysis.walk_budget", "must be >= 0");
    if (!(an.coverage > 0 && an.coverage <= 1)) fail("analysis.coverage", "must lie in (0,1]");
    if (!(an.beta > 0 && an.beta <= 1)) fail("analysis.beta", "must lie in (0,1]");
    if (an.coordinate < 0 || an.coordinate >= model.d) fail("analysis.coordinate", "must lie in [0, d)");
    for (auto s : an.sizes)
        if (s < 2) fail("analysis.sizes", "entries must be >= 2");
    for (int c : an.criteria)
        if (c < 1 || c > 12) fail("analysis.criteria", "ids must lie in 1..12");
    if (an.scale != "full" && an.scale != "quick") fail("analysis.scale", "must be full or quick");
    const ProbePlan& p = an.probes;
    if (p.grid_points < 2) fail("analysis.probes.grid_points", "must be >= 2");
    if (!(p.max_frac > 0 && p.max_frac <= 1)) fail("analysis.probes.max_frac", "must lie in (0,1]");
    if (p.random_sets < 0 || p.bfs_sets < 0 || p.strip_sets < 0) fail("analysis.probes", "set counts must be >= 0");
    if (p.greedy_restarts < 1) fail("analysis.probes.greedy_restarts", "must be >= 1");
    if (!(p.c_d > 1)) fail("analysis.probes.c_d", "must exceed 1");
    if (output.format != "csv" && output.format != "json") fail("output.format", "must be csv or json");
    if (output.dir.empty()) fail("output.dir", "must not be empty");
    if (threads < 1) fail("threads", "must be >= 1");
}

ExperimentConfig parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    require_object(j, "config");
    reject_unknown(j, "", {"name", "model", "seeds", "analyses", "analysis", "output", "threads"});
    ExperimentConfig c;
    read(j, "name", "", c.name);
    read(j, "seeds", "", c.seeds);
    read(j, "analyses", "", c.analyses);
    read(j, "threads", "", c.threads);
    if (j.contains("model")) {
        const auto& m = j["model"];
        require_object(m, "model");
        reject_unknown(m, "model", {"n", "d", "tau", "alpha", "kernel_c", "geometry"});
        read(m, "n", "model", c.model.n);
        read(m, "d", "model", c.model.d);
        read(m, "tau", "model", c.model.tau);
        read(m, "alpha", "model", c.model.alpha);
        read(m, "kernel_c", "model", c.model.kernel_c);
        std::string geo = to_string(c.model.geometry);
        read(m, "geometry", "model", geo);
        try {
            c.model.geometry = geometry_from_string(geo);
        } catch (const std::invalid_argument&) {
            fail("model.geometry", "unknown geometry '" + geo + "'");
        }
    }
    if (j.contains("analysis")) {
        const auto& a = j["analysis"];
        require_object(a, "analysis");
        reject_unknown(a, "analysis",
                       {"gamma", "c_prime", "c1", "c2", "mode", "allow_subcritical", "probes", "trials", "cover_s",
                        "cover_k", "target", "eps_tv", "walk_budget", "coverage", "beta", "coordinate", "sizes",
                        "criteria", "scale"});
        AnalysisParams& an = c.analysis;
        read(a, "gamma", "analysis", an.gamma);
        read(a, "c_prime", "analysis", an.c_prime);
        read(a, "c1", "analysis", an.c1);
        read(a, "c2", "analysis", an.c2);
        std::string mode = to_string(an.mode);
        read(a, "mode", "analysis", mode);
        try {
            an.mode = induce_mode_from_string(mode);
        } catch (const std::invalid_argument&) {
            fail("analysis.mode", "unknown mode '" + mode + "'");
        }
        read(a, "allow_subcritical", "analysis", an.allow_subcritical);
        read(a, "trials", "analysis", an.trials);
        read(a, "cover_s", "analysis", an.cover_s);
        read(a, "cover_k", "analysis", an.cover_k);
        read(a, "target", "analysis", an.target);
        read(a, "eps_tv", "analysis", an.eps_tv);
        read(a, "walk_budget", "analysis", an.walk_budget);
        read(a, "coverage", "analysis", an.coverage);
        read(a, "beta", "analysis", an.beta);
        read(a, "coordinate", "analysis", an.coordinate);
        read(a, "sizes", "analysis", an.sizes);
        read(a, "criteria", "analysis", an.criteria);
        read(a, "scale", "analysis", an.scale);
        if (a.contains("probes")) {
            const auto& p = a["probes"];
            require_object(p, "analysis.probes");
            reject_unknown(p, "analysis.probes",
                           {"grid_points", "max_frac", "random_sets", "bfs_sets", "strip_sets", "greedy_restarts",
                            "c_d", "seed"});
            ProbePlan& pp = an.probes;
            read(p, "grid_points", "analysis.probes", pp.grid_points);
            read(p, "max_frac", "analysis.probes", pp.max_frac);
            read(p, "random_sets", "analysis.probes", pp.random_sets);
            read(p, "bfs_sets", "analysis.probes", pp.bfs_sets);
            read(p, "strip_sets", "analysis.probes", pp.strip_sets);
            read(p, "greedy_restarts", "analysis.probes", pp.greedy_restarts);
            read(p, "c_d", "analysis.probes", pp.c_d);
            read(p, "seed", "analysis.probes", pp.seed);
        }
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        require_object(o, "output");
        reject_unknown(o, "output", {"dir", "format", "write_graphs", "traces"});
        read(o, "dir", "output", c.output.dir);
        read(o, "format", "output", c.output.format);
        read(o, "write_graphs", "output", c.output.write_graphs);
        read(o, "traces", "output", c.output.traces);
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["name"] = c.name;
    j["model"] = {{"n", c.model.n},       {"d", c.model.d},
                  {"tau", c.model.tau},   {"alpha", c.model.alpha},
                  {"kernel_c", c.model.kernel_c}, {"geometry", to_string(c.model.geometry)}};
    j["seeds"] = c.seeds;
    j["analyses"] = c.analyses;
    const AnalysisParams& a = c.analysis;
    const ProbePlan& p = a.probes;
    j["analysis"] = {{"gamma", a.gamma},
                     {"c_prime", a.c_prime},
                     {"c1", a.c1},
                     {"c2", a.c2},
                     {"mode", to_string(a.mode)},
                     {"allow_subcritical", a.allow_subcritical},
                     {"probes",
                      {{"grid_points", p.grid_points},
                       {"max_frac", p.max_frac},
                       {"random_sets", p.random_sets},
                       {"bfs_sets", p.bfs_sets},
                       {"strip_sets", p.strip_sets},
                       {"greedy_restarts", p.greedy_restarts},
                       {"c_d", p.c_d},
                       {"seed", p.seed}}},
                     {"trials", a.trials},
                     {"cover_s", a.cover_s},
                     {"cover_k", a.cover_k},
                     {"target", a.target},
                     {"eps_tv", a.eps_tv},
                     {"walk_budget", a.walk_budget},
                     {"coverage", a.coverage},
                     {"beta", a.beta},
                     {"coordinate", a.coordinate},
                     {"sizes", a.sizes},
                     {"criteria", a.criteria},
                     {"scale", a.scale}};
    j["output"] = {{"dir", c.output.dir}, {"format", c.output.format}, {"write_graphs", c.output.write_graphs},
                   {"traces", c.output.traces}};
    j["threads"] = c.threads;
    return j.dump(2);
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_edges(std::ostream& os, const Graph& g) {
    const auto edges = g.edges();
    os << "girg-edges v1 n=" << g.num_vertices() << " m=" << edges.size() << '\n';
    for (auto [u, v] : edges) os << u << ' ' << v << '\n';
}

void write_vertices(std::ostream& os, const Graph& g) {
    if (!g.has_vertex_data()) throw std::invalid_argument("write_vertices: graph has no vertex data");
    const std::size_t d = g.num_vertices() ? g.vertex(0).position.dim() : 0;
    os << "girg-verts v1 n=" << g.num_vertices() << " d=" << d << '\n';
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const VertexData& vd = g.vertex(v);
        os << v << ' ' << format_real(vd.weight);
        for (std::size_t i = 0; i < d; ++i) os << ' ' << format_real(vd.position[i]);
        os << '\n';
    }
}

void save_graph(const Graph& g, const std::string& edges_path, const std::string& verts_path) {
    std::ofstream e(edges_path, std::ios::binary);
    if (!e) throw std::runtime_error("cannot write '" + edges_path + "'");
    write_edges(e, g);
    if (g.has_vertex_data()) {
        std::ofstream v(verts_path, std::ios::binary);
        if (!v) throw std::runtime_error("cannot write '" + verts_path + "'");
        write_vertices(v, g);
    }
}

namespace {

// "key=<unsigned>" token
std::uint64_t header_field(const std::string& tok, const char* key, const char* file) {
    const std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0) throw FormatError(std::string(file) + ": malformed header, expected " + prefix);
    std::uint64_t v = 0;
    const char* b = tok.data() + prefix.size();
    const char* e = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e) throw FormatError(std::string(file) + ": bad value in header field " + key);
    return v;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* file) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty())
        throw FormatError(std::string(file) + " line " + std::to_string(line) + ": expected an unsigned integer");
    return v;
}

double parse_real(const std::string& tok, std::size_t line, const char* file) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v))
        throw FormatError(std::string(file) + " line " + std::to_string(line) + ": expected a finite real");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Graph read_graph(std::istream& edges, std::istream* verts) {
    std::string line;
    if (!std::getline(edges, line)) throw FormatError("edges: missing header");
    auto head = split(line);
    if (head.size() != 4 || head[0] != "girg-edges" || head[1] != "v1")
        throw FormatError("edges: malformed header, expected 'girg-edges v1 n=<n> m=<m>'");
    const std::uint64_t n = header_field(head[2], "n", "edges");
    const std::uint64_t m = header_field(head[3], "m", "edges");
    if (n > std::uint64_t(std::numeric_limits<VertexId>::max())) throw FormatError("edges: n too large");
    std::vector<Edge> list;
    std::set<Edge> seen;
    std::size_t lineno = 1;
    while (std::getline(edges, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tok = split(line);
        if (tok.size() != 2) throw FormatError("edges line " + std::to_string(lineno) + ": expected 'u v'");
        const auto u = parse_uint(tok[0], lineno, "edges"), v = parse_uint(tok[1], lineno, "edges");
        if (u >= n || v >= n) throw FormatError("edges line " + std::to_string(lineno) + ": vertex id out of range");
        if (u == v) throw FormatError("edges line " + std::to_string(lineno) + ": self-loop");
        const Edge e{VertexId(std::min(u, v)), VertexId(std::max(u, v))};
        if (!seen.insert(e).second) throw FormatError("edges line " + std::to_string(lineno) + ": duplicate pair");
        list.push_back(e);
    }
    if (list.size() != m)
        throw FormatError("edges: header says m=" + std::to_string(m) + " but found " + std::to_string(list.size()));

    std::vector<VertexData> data;
    if (verts) {
        if (!std::getline(*verts, line)) throw FormatError("verts: missing header");
        head = split(line);
        if (head.size() != 4 || head[0] != "girg-verts" || head[1] != "v1")
            throw FormatError("verts: malformed header, expected 'girg-verts v1 n=<n> d=<d>'");
        const std::uint64_t vn = header_field(head[2], "n", "verts");
        const std::uint64_t d = header_field(head[3], "d", "verts");
        if (vn != n) throw FormatError("verts: n=" + std::to_string(vn) + " does not match edges n=" + std::to_string(n));
        if (d < 1 || d > 1024) throw FormatError("verts: bad dimension");
        lineno = 1;
        std::vector<double> coords(d);
        while (std::getline(*verts, line)) {
            ++lineno;
            if (line.empty()) continue;
            const auto tok = split(line);
            if (tok.size() != d + 2)
                throw FormatError("verts line " + std::to_string(lineno) + ": expected id, weight and " +
                                  std::to_string(d) + " coordinates");
            if (parse_uint(tok[0], lineno, "verts") != data.size())
                throw FormatError("verts line " + std::to_string(lineno) + ": ids must run 0..n-1 in order");
            const double w = parse_real(tok[1], lineno, "verts");
            if (!(w > 0)) throw FormatError("verts line " + std::to_string(lineno) + ": weight must be positive");
            for (std::size_t i = 0; i < d; ++i) {
                coords[i] = parse_real(tok[2 + i], lineno, "verts");
                if (!(coords[i] >= 0.0 && coords[i] < 1.0))
                    throw FormatError("verts line " + std::to_string(lineno) + ": coordinate outside [0,1)");
            }
            data.push_back({w, TorusPoint(coords)});
        }
        if (data.size() != n)
            throw FormatError("verts: header says n=" + std::to_string(n) + " but found " + std::to_string(data.size()));
    }
    return Graph(n, std::move(list), std::move(data));
}

Graph load_graph(const std::string& edges_path, const std::optional<std::string>& verts_path) {
    std::ifstream e(edges_path);
    if (!e) throw FormatError("cannot read '" + edges_path + "'");
    if (!verts_path) return read_graph(e, nullptr);
    std::ifstream v(*verts_path);
    if (!v) throw FormatError("cannot read '" + *verts_path + "'");
    return read_graph(e, &v);
}

}  // namespace girglab
