#include "girglab/strips.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "girglab/sampler.hpp"

namespace girglab {

namespace {

std::int64_t strip_count(std::int64_t n, double gamma) {
    const double v = static_cast<double>(n) / std::pow(std::log(static_cast<double>(n)), 2.0 * gamma);
    return static_cast<std::int64_t>(std::floor(v));
}

double log_choose(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

double entropy_choose(double n, double k) {
    if (k <= 0 || k >= n) return 0.0;
    const double x = k / n;
    return -n * (x * std::log(x) + (1 - x) * std::log1p(-x));
}

}  // namespace

std::int64_t min_n_for_strips(double gamma) {
    if (!(gamma > 0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive");
    // n / ln(n)^{2 gamma} decreases up to e^{2 gamma} and increases after it
    const double turn = std::exp(2.0 * gamma);
    std::int64_t n = 3;
    for (; n < turn && n < 1'000'000; ++n)
        if (strip_count(n, gamma) >= 1) return n;
    std::int64_t lo = n, hi = n;
    while (strip_count(hi, gamma) < 1) {
        lo = hi;
        if (hi > (std::int64_t{1} << 61)) throw std::domain_error("gamma too large for any practical n");
        hi *= 2;
    }
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (strip_count(mid, gamma) >= 1) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

StripWidth strip_width(std::int64_t n, double gamma) {
    if (n < 3) throw std::invalid_argument("strip_width: n must be >= 3, got " + std::to_string(n));
    if (!(gamma > 0) || !std::isfinite(gamma)) throw std::invalid_argument("strip_width: gamma must be positive");
    const std::int64_t m = strip_count(n, gamma);
    if (m < 1)
        throw std::invalid_argument("strip_width: n=" + std::to_string(n) + " gives no strip for gamma=" +
                                    std::to_string(gamma) + "; need n >= " + std::to_string(min_n_for_strips(gamma)));
    return {m, 1.0 / static_cast<double>(m)};
}

std::uint32_t strip_id(double x, std::int64_t strips) {
    const auto id = static_cast<std::int64_t>(x * static_cast<double>(strips));
    return static_cast<std::uint32_t>(std::clamp<std::int64_t>(id, 0, strips - 1));
}

StripIndex::StripIndex(std::span<const VertexData> vertices, std::int64_t n, double gamma)
    : n_(n), m_(strip_width(n, gamma).count) {
    build(vertices);
}

StripIndex::StripIndex(const Graph& g, double gamma)
    : n_(static_cast<std::int64_t>(g.num_vertices())), m_(strip_width(n_, gamma).count) {
    if (!g.has_vertex_data()) throw std::invalid_argument("StripIndex needs vertex positions");
    build(g.vertex_data());
}

StripIndex::StripIndex(std::span<const VertexData> vertices, std::int64_t strips)
    : n_(static_cast<std::int64_t>(vertices.size())), m_(strips) {
    if (strips < 1) throw std::invalid_argument("StripIndex: strip count must be >= 1");
    build(vertices);
}

void StripIndex::build(std::span<const VertexData> vertices) {
    if (vertices.empty()) throw std::invalid_argument("StripIndex: no vertices");
    d_ = static_cast<int>(vertices.front().position.dim());
    if (d_ < 1) throw std::invalid_argument("StripIndex: vertices have no coordinates");
    ids_.resize(vertices.size() * d_);
    start_.assign(d_, std::vector<std::size_t>(std::size_t(m_) + 1, 0));
    members_.assign(d_, std::vector<VertexId>(vertices.size()));
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (vertices[v].position.dim() != std::size_t(d_)) throw std::invalid_argument("StripIndex: mixed dimensions");
        for (int i = 0; i < d_; ++i) {
            const auto s = strip_id(vertices[v].position[i], m_);
            ids_[v * d_ + i] = s;
            ++start_[i][s + 1];
        }
    }
    for (int i = 0; i < d_; ++i) {
        auto& st = start_[i];
        for (std::size_t s = 0; s < std::size_t(m_); ++s) st[s + 1] += st[s];
        std::vector<std::size_t> fill(st.begin(), st.end() - 1);
        for (std::size_t v = 0; v < vertices.size(); ++v) members_[i][fill[ids_[v * d_ + i]]++] = VertexId(v);
    }
}

std::span<const VertexId> StripIndex::bucket(int i, std::uint32_t strip) const {
    if (i < 0 || i >= d_ || strip >= m_) throw std::out_of_range("StripIndex::bucket");
    const auto& st = start_[i];
    return {members_[i].data() + st[strip], members_[i].data() + st[strip + 1]};
}

StripSpread strip_spread(const StripIndex& idx, std::span<const VertexId> s) {
    if (s.empty()) throw std::invalid_argument("strip_spread: empty set");
    StripSpread best;
    std::vector<std::uint32_t> ids(s.size());
    for (int i = 0; i < idx.dim(); ++i) {
        for (std::size_t k = 0; k < s.size(); ++k) ids[k] = idx.strip_of(s[k], i);
        std::sort(ids.begin(), ids.end());
        const auto distinct = std::unique(ids.begin(), ids.end()) - ids.begin();
        if (distinct > best.k_star) best = {distinct, i};
    }
    return best;
}

std::size_t same_strip_neighbors(const SubgraphView& view, const StripIndex& idx, VertexId v, int i, double lo,
                                 double hi) {
    const auto local = view.local_id(v);
    if (!local) throw std::invalid_argument("same_strip_neighbors: vertex not kept");
    if (i < 0 || i >= idx.dim()) throw std::invalid_argument("same_strip_neighbors: bad coordinate");
    const Graph& g = view.parent();
    const auto strip = idx.strip_of(v, i);
    std::size_t count = 0;
    for (VertexId u : g.neighbors(v)) {
        if (!view.contains(u) || idx.strip_of(u, i) != strip) continue;
        const double w = g.vertex(u).weight;
        if (w >= lo && w <= hi) ++count;
    }
    return count;
}

void CoverBoundInput::validate() const {
    if (d < 1) throw std::invalid_argument("cover bound: d must be >= 1");
    if (strips < 1) throw std::invalid_argument("cover bound: M must be >= 1");
    if (s < 1 || s > nv) throw std::invalid_argument("cover bound: need 1 <= s <= nv");
    if (k < 1 || k > strips) throw std::invalid_argument("cover bound: need 1 <= k <= M");
}

double log_cover_bound(const CoverBoundInput& in) {
    in.validate();
    const double m = static_cast<double>(in.strips), k = static_cast<double>(in.k);
    return log_choose(double(in.nv), double(in.s)) + in.d * log_choose(m, k) +
           in.d * double(in.s) * std::log(k / m);
}

double log_cover_bound_stirling(const CoverBoundInput& in) {
    in.validate();
    const double m = static_cast<double>(in.strips), k = static_cast<double>(in.k);
    return entropy_choose(double(in.nv), double(in.s)) + in.d * entropy_choose(m, k) +
           in.d * double(in.s) * std::log(k / m);
}

namespace {

// C(nv,s) C(M,k)^d k^{ds} / M^{ds} as an integer ratio while every factor stays exact
std::optional<double> exact_cover_bound(const CoverBoundInput& in) {
    constexpr long double limit = 0x1p63L;
    auto choose = [&](std::int64_t n, std::int64_t k) -> std::optional<long double> {
        long double r = 1;
        for (std::int64_t i = 1; i <= k; ++i) {
            r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
            if (r >= limit) return std::nullopt;
        }
        return r;
    };
    auto num = choose(in.nv, in.s);
    auto cm = choose(in.strips, in.k);
    if (!num || !cm) return std::nullopt;
    long double top = *num, bottom = 1;
    for (int i = 0; i < in.d; ++i) top *= *cm;
    for (std::int64_t i = 0; i < std::int64_t(in.d) * in.s; ++i) {
        top *= static_cast<long double>(in.k);
        bottom *= static_cast<long double>(in.strips);
        if (top >= limit || bottom >= limit) return std::nullopt;
    }
    return static_cast<double>(top / bottom);
}

}  // namespace

double cover_bound(const CoverBoundInput& in) {
    in.validate();
    if (auto exact = exact_cover_bound(in)) return std::min(1.0, *exact);
    return std::min(1.0, std::exp(log_cover_bound(in)));
}

namespace {

struct CoverSearch {
    const StripIndex& idx;
    std::int64_t s;
    std::int64_t k;
    int dims;
    std::int64_t budget;
    std::int64_t nodes = 0;
    bool exhausted = false;

    // k fullest strips of coordinate i hold at least s of the set
    bool last(std::span<const VertexId> set, int i) const {
        std::vector<std::int64_t> count(std::size_t(idx.strips()), 0);
        for (VertexId v : set) ++count[idx.strip_of(v, i)];
        std::sort(count.begin(), count.end(), std::greater<>());
        std::int64_t total = 0;
        for (std::int64_t j = 0; j < std::min<std::int64_t>(k, idx.strips()); ++j) total += count[j];
        return total >= s;
    }

    bool search(std::span<const VertexId> set, int i) {
        if (std::int64_t(set.size()) < s) return false;
        if (i == dims - 1) return last(set, i);
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        std::vector<std::uint32_t> occupied;
        for (VertexId v : set) occupied.push_back(idx.strip_of(v, i));
        std::sort(occupied.begin(), occupied.end());
        occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
        const std::size_t pick = std::min<std::size_t>(std::size_t(k), occupied.size());
        std::vector<bool> chosen(occupied.size(), false);
        std::fill(chosen.begin(), chosen.begin() + pick, true);
        std::vector<char> in(std::size_t(idx.strips()), 0);
        std::vector<VertexId> sub;
        // lexicographic walk over pick-subsets of the occupied strips
        do {
            std::fill(in.begin(), in.end(), 0);
            for (std::size_t j = 0; j < occupied.size(); ++j)
                if (chosen[j]) in[occupied[j]] = 1;
            sub.clear();
            for (VertexId v : set)
                if (in[idx.strip_of(v, i)]) sub.push_back(v);
            if (search(sub, i + 1)) return true;
            if (exhausted) return false;
        } while (std::prev_permutation(chosen.begin(), chosen.end()));
        return false;
    }
};

}  // namespace

CoverDecision covered_by_strips(const StripIndex& idx, std::span<const VertexId> members, std::int64_t s,
                                std::int64_t k, std::int64_t budget) {
    if (s < 1 || k < 1) throw std::invalid_argument("covered_by_strips: s and k must be >= 1");
    if (std::int64_t(members.size()) < s) return {false, true};
    if (k >= idx.strips()) return {true, true};
    CoverSearch full{idx, s, k, idx.dim(), budget};
    const bool hit = full.search(members, 0);
    if (!full.exhausted) return {hit, true};
    CoverSearch relaxed{idx, s, k, std::min(2, idx.dim()), std::numeric_limits<std::int64_t>::max()};
    return {relaxed.search(members, 0), false};
}

CoverEstimate empirical_cover_probability(const ModelParams& p, double gamma, std::int64_t s, std::int64_t k,
                                          std::int64_t trials, double c_prime) {
    p.validate();
    if (trials < 1) throw std::invalid_argument("empirical_cover_probability: trials must be >= 1");
    if (s < 1 || k < 1) throw std::invalid_argument("empirical_cover_probability: s and k must be >= 1");
    const StripWidth sw = strip_width(p.n, gamma);
    const double threshold = c_prime * std::pow(std::log(double(p.n)), gamma);
    CoverEstimate out;
    out.trials = trials;
    std::int64_t hits = 0;
    double bound_sum = 0.0, nv_sum = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        ModelParams q = p;
        q.seed = derive_seed(p.seed, std::uint64_t(t));
        const auto verts = sample_vertices(q);
        const StripIndex idx(verts, sw.count);
        std::vector<VertexId> members;
        for (std::size_t v = 0; v < verts.size(); ++v)
            if (verts[v].weight >= threshold) members.push_back(VertexId(v));
        const auto nv = std::int64_t(members.size());
        nv_sum += double(nv);
        if (nv >= s) {
            const std::int64_t kk = std::min({k, s, sw.count});
            bound_sum += kk < k ? 1.0 : cover_bound({nv, s, k, sw.count, p.d});
            const CoverDecision dec = covered_by_strips(idx, members, s, k);
            if (dec.covered) ++hits;
            if (!dec.exact) out.upper_estimate = true;
        }
    }
    out.frequency = double(hits) / double(trials);
    out.mean_bound = bound_sum / double(trials);
    out.mean_nv = nv_sum / double(trials);
    return out;
}

}  // namespace girglab
