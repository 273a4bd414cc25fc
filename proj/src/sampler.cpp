#include "girglab/sampler.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "girglab/strips.hpp"
#include "slot_index.hpp"

namespace girglab {

namespace detail {

namespace {

int layer_of(double w) { return w < 2.0 ? 0 : std::ilogb(w); }

int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1)); }

}  // namespace

SlotIndex::SlotIndex(const ModelParams& p, std::span<const VertexData> vertices)
    : p_(p), tape_(p.seed), n_(static_cast<std::size_t>(p.n)), d_(p.d) {
    p.validate();
    if (vertices.size() != n_)
        throw std::invalid_argument("expected " + std::to_string(n_) + " vertex records, got " +
                                    std::to_string(vertices.size()));
    linf_ = p.geometry == Geometry::LINF;
    systems_ = linf_ ? 1 : d_;
    if (linf_) {
        bits_ = std::max(1, (ceil_log2(n_) + d_ - 1) / d_);
        if (bits_ * d_ > 62) throw std::invalid_argument("dimension too large for the L-infinity sampler grid");
        keys_total_ = std::uint64_t{1} << (bits_ * d_);
        max_class_ = bits_ - 1;
    } else {
        bits_ = std::max(1, ceil_log2(n_));
        keys_total_ = std::uint64_t{1} << bits_;
        max_class_ = bits_;
    }
    const double scale = std::ldexp(1.0, bits_);
    const std::uint32_t top_cell = static_cast<std::uint32_t>((std::uint64_t{1} << bits_) - 1);

    weight_.resize(n_);
    layer_.resize(n_);
    pos_.resize(n_ * d_);
    cell_.resize(n_ * d_);
    int top = 0;
    for (std::size_t v = 0; v < n_; ++v) {
        const VertexData& vd = vertices[v];
        if (!(vd.weight >= 1.0) || !std::isfinite(vd.weight))
            throw std::invalid_argument("vertex " + std::to_string(v) + " has weight below 1");
        if (vd.position.dim() != static_cast<std::size_t>(d_))
            throw std::invalid_argument("vertex " + std::to_string(v) + " has wrong dimension");
        weight_[v] = vd.weight;
        layer_[v] = static_cast<std::uint8_t>(std::min(layer_of(vd.weight), 255));
        top = std::max<int>(top, layer_[v]);
        for (int i = 0; i < d_; ++i) {
            const double x = vd.position[i];
            pos_[v * d_ + i] = x;
            // exact: scale is a power of two
            cell_[v * d_ + i] = std::min(static_cast<std::uint32_t>(x * scale), top_cell);
        }
    }
    num_layers_ = top + 1;

    const std::size_t groups = std::size_t(systems_) * num_layers_;
    order_.resize(groups);
    keys_.resize(groups);
    start_.resize(groups);
    rank_.resize(std::size_t(systems_) * n_);
    std::vector<std::uint64_t> key(n_);
    for (int i = 0; i < systems_; ++i) {
        for (std::size_t v = 0; v < n_; ++v) {
            key[v] = linf_ ? morton({cell_.data() + v * d_, std::size_t(d_)}, bits_) : cell(VertexId(v), i);
            order_[slot(i, layer_[v])].push_back(static_cast<VertexId>(v));
        }
        for (int j = 0; j < num_layers_; ++j) {
            auto& ord = order_[slot(i, j)];
            std::sort(ord.begin(), ord.end(),
                      [&](VertexId a, VertexId b) { return key[a] != key[b] ? key[a] < key[b] : a < b; });
            auto& keys = keys_[slot(i, j)];
            keys.resize(ord.size());
            for (std::size_t r = 0; r < ord.size(); ++r) {
                keys[r] = key[ord[r]];
                rank_[std::size_t(i) * n_ + ord[r]] = static_cast<std::uint32_t>(r);
            }
            if (keys_total_ <= (std::uint64_t{1} << 26) && ord.size() * 32 >= keys_total_) {
                auto& start = start_[slot(i, j)];
                start.assign(keys_total_ + 1, 0);
                for (std::uint64_t k : keys) ++start[k + 1];
                for (std::size_t c = 0; c < keys_total_; ++c) start[c + 1] += start[c];
            }
        }
    }
}

std::uint64_t SlotIndex::morton(std::span<const std::uint32_t> block, int bits) const {
    std::uint64_t code = 0;
    for (int b = bits - 1; b >= 0; --b)
        for (int i = 0; i < d_; ++i) code = (code << 1) | ((block[i] >> b) & 1u);
    return code;
}

std::uint32_t SlotIndex::offset(VertexId a, VertexId b, int i) const {
    const std::uint32_t mask = static_cast<std::uint32_t>(keys_total_ - 1);
    const std::uint32_t delta = (cell(b, i) - cell(a, i)) & mask;
    return std::min(delta, static_cast<std::uint32_t>(keys_total_ - delta));
}

int SlotIndex::touch_level(VertexId a, VertexId b) const {
    int level = bits_;
    for (int i = 0; i < d_ && level > 0; ++i) {
        const std::uint32_t ca = cell(a, i), cb = cell(b, i);
        while (level > 0) {
            const int shift = bits_ - level;
            const std::uint32_t nb = std::uint32_t{1} << level;
            const std::uint32_t diff = ((cb >> shift) - (ca >> shift)) & (nb - 1);
            if (std::min(diff, nb - diff) <= 1) break;
            --level;
        }
    }
    return level;
}

int SlotIndex::canonical_system(VertexId a, VertexId b) const {
    if (systems_ == 1) return 0;
    int best = 0;
    std::uint32_t best_m = offset(a, b, 0);
    for (int i = 1; i < d_; ++i) {
        const std::uint32_t m = offset(a, b, i);
        if (m < best_m) {
            best_m = m;
            best = i;
        }
    }
    return best;
}

int SlotIndex::pair_class(VertexId a, VertexId b, int i) const {
    if (linf_) return bits_ - touch_level(a, b);
    const std::uint32_t m = offset(a, b, i);
    return m == 0 ? 0 : static_cast<int>(std::bit_width(m));
}

std::uint32_t SlotIndex::lower(int i, int j, std::uint64_t key) const {
    const auto& keys = keys_[slot(i, j)];
    if (key >= keys_total_) return static_cast<std::uint32_t>(keys.size());
    const auto& start = start_[slot(i, j)];
    if (!start.empty()) return start[key];
    return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), key) - keys.begin());
}

void SlotIndex::push_cells(Segments& s, int i, int j, std::int64_t first, std::int64_t count) const {
    const auto c = static_cast<std::int64_t>(keys_total_);
    const std::int64_t f = ((first % c) + c) % c;
    if (f + count <= c) {
        s.push({lower(i, j, f), lower(i, j, f + count)});
    } else {
        s.push({lower(i, j, f), lower(i, j, c)});
        s.push({lower(i, j, 0), lower(i, j, f + count - c)});
    }
}

void SlotIndex::mcd_segments(int i, int j, std::uint32_t c, int t, Segments& s) const {
    const auto cells = static_cast<std::int64_t>(keys_total_);
    const std::int64_t lo = t == 0 ? 0 : std::int64_t{1} << (t - 1);
    const std::int64_t hi = t == 0 ? 1 : std::int64_t{1} << t;
    // offsets up to C/2 inclusive on the right, strictly below C/2 on the left,
    // so the antipodal cell is counted once
    const std::int64_t right_end = std::min<std::int64_t>(hi, cells / 2 + 1);
    if (right_end > lo) push_cells(s, i, j, std::int64_t(c) + lo, right_end - lo);
    if (t > 0) {
        const std::int64_t left_end = std::min<std::int64_t>(hi, (cells + 1) / 2);
        if (left_end > lo) push_cells(s, i, j, std::int64_t(c) - (left_end - 1), left_end - lo);
    }
}

void SlotIndex::linf_segments(int j, VertexId a, int t, Segments& s) const {
    const int level = bits_ - t;
    const int shift = bits_ - level;
    const std::uint32_t nb = std::uint32_t{1} << level;
    // distinct neighbouring block indices per coordinate
    std::vector<std::array<std::uint32_t, 3>> opts(d_);
    std::vector<int> count(d_);
    for (int i = 0; i < d_; ++i) {
        const std::uint32_t b = cell(a, i) >> shift;
        if (nb <= 2) {
            count[i] = static_cast<int>(nb);
            opts[i] = {0, 1, 0};
        } else {
            count[i] = 3;
            opts[i] = {(b + nb - 1) & (nb - 1), b, (b + 1) & (nb - 1)};
        }
    }
    std::vector<int> pick(d_, 0);
    std::vector<std::uint32_t> block(d_);
    const int span_bits = shift * d_;
    while (true) {
        for (int i = 0; i < d_; ++i) block[i] = opts[i][pick[i]];
        const std::uint64_t first = morton(block, level) << span_bits;
        s.push({lower(0, j, first), lower(0, j, first + (std::uint64_t{1} << span_bits))});
        int i = d_ - 1;
        while (i >= 0 && ++pick[i] == count[i]) pick[i--] = 0;
        if (i < 0) break;
    }
}

void SlotIndex::segments(int i, int j, VertexId a, int t, Segments& out) const {
    out.clear();
    if (layer_size(i, j) == 0) return;
    if (linf_) linf_segments(j, a, t, out);
    else mcd_segments(i, j, cell(a, i), t, out);
}

VertexId SlotIndex::at(int i, int j, const Segments& s, std::uint32_t pos) const {
    const auto& ord = order_[slot(i, j)];
    for (const Range& r : s.r) {
        if (pos < r.size()) return ord[r.begin + pos];
        pos -= r.size();
    }
    throw std::logic_error("slot beyond segment total");
}

std::uint32_t SlotIndex::locate(int i, VertexId b, const Segments& s) const {
    const std::uint32_t rank = rank_[std::size_t(i) * n_ + b];
    std::uint32_t base = 0;
    for (const Range& r : s.r) {
        if (rank >= r.begin && rank < r.end) return base + (rank - r.begin);
        base += r.size();
    }
    throw std::logic_error("vertex not inside its slot group");
}

double SlotIndex::envelope(double w_owner, int j, int t) const {
    if (p_.kernel_c <= 0.0) return 0.0;
    double r_lo = 0.0;
    if (linf_) {
        if (t > 0) r_lo = std::ldexp(1.0, -(bits_ - t + 1));
    } else if (t > 1) {
        r_lo = std::ldexp(static_cast<double>((std::uint64_t{1} << (t - 1)) - 1), -bits_);
    }
    const double vol = volume(p_.geometry, r_lo, d_);
    // the other endpoint is below both the layer's upper edge and the owner
    const double w_max = std::min(w_owner, std::ldexp(1.0, j + 1));
    const double num = w_owner * w_max;
    const double den = static_cast<double>(p_.n) * vol;
    double q = num >= den ? p_.kernel_c : p_.kernel_c * std::pow(num / den, p_.alpha);
    // slack for rounding in the pair's own distance computation
    q *= 1.0 + 1e-9;
    return std::min(1.0, q);
}

double SlotIndex::probability(VertexId a, VertexId b) const {
    return connection_probability(weight_[a], weight_[b], distance(p_.geometry, position(a), position(b)), p_);
}

double SlotIndex::skip(VertexId owner, std::uint64_t group, std::uint64_t k, double q) const {
    if (q >= 1.0) return 0.0;
    const double u = tape_.open_uniform(Purpose::EdgeSkip, owner, group, k);
    return std::floor(std::log(u) / std::log1p(-q));
}

}  // namespace detail

using detail::Segments;
using detail::SlotIndex;

std::vector<VertexData> sample_vertices(std::uint64_t seed, std::int64_t n, int d, double tau) {
    if (n < 1) throw std::invalid_argument("sample_vertices: n must be >= 1");
    if (d < 1) throw std::invalid_argument("sample_vertices: d must be >= 1");
    const RandomTape tape(seed);
    std::vector<VertexData> out;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<double> coords(static_cast<std::size_t>(d));
    for (std::int64_t v = 0; v < n; ++v) {
        for (int k = 0; k < d; ++k) coords[k] = tape.uniform(Purpose::Position, v, k);
        out.push_back({sample_weight(tape.open_uniform(Purpose::Weight, v), tau), TorusPoint(coords)});
    }
    return out;
}

std::vector<VertexData> sample_vertices(const ModelParams& p) {
    p.validate();
    return sample_vertices(p.seed, p.n, p.d, p.tau);
}

CoinTape::CoinTape(const ModelParams& p, std::span<const VertexData> vertices)
    : index_(std::make_unique<SlotIndex>(p, vertices)) {}
CoinTape::~CoinTape() = default;
CoinTape::CoinTape(CoinTape&&) noexcept = default;
CoinTape& CoinTape::operator=(CoinTape&&) noexcept = default;

const ModelParams& CoinTape::params() const { return index_->params(); }
std::size_t CoinTape::num_vertices() const { return index_->n(); }

namespace {

struct PairGroup {
    VertexId owner;
    VertexId other;
    int system;
    int cls;
    int layer;
    Segments seg;
    std::uint32_t slot;
    double q;
};

PairGroup group_of(const SlotIndex& s, VertexId u, VertexId v) {
    if (u == v) throw std::invalid_argument("pair_coin needs two distinct vertices");
    if (u >= s.n() || v >= s.n()) throw std::invalid_argument("pair_coin: vertex out of range");
    PairGroup g{};
    g.owner = s.owns(u, v) ? u : v;
    g.other = g.owner == u ? v : u;
    g.system = s.canonical_system(g.owner, g.other);
    g.cls = s.pair_class(g.owner, g.other, g.system);
    g.layer = s.layer(g.other);
    s.segments(g.system, g.layer, g.owner, g.cls, g.seg);
    g.slot = s.locate(g.system, g.other, g.seg);
    g.q = s.envelope(s.weight(g.owner), g.layer, g.cls);
    return g;
}

}  // namespace

double CoinTape::pair_coin(VertexId u, VertexId v) const {
    const SlotIndex& s = *index_;
    const PairGroup g = group_of(s, u, v);
    const std::uint64_t key = SlotIndex::pack(g.system, g.cls, g.layer);
    bool candidate = false;
    if (g.q >= 1.0) {
        candidate = true;
    } else if (g.q > 0.0) {
        double pos = s.skip(g.owner, key, 0, g.q);
        for (std::uint64_t k = 1; pos < g.slot; ++k) pos += 1.0 + s.skip(g.owner, key, k, g.q);
        candidate = pos == g.slot;
    }
    if (candidate) return g.q * s.candidate_uniform(g.owner, key, g.slot);
    return g.q + (1.0 - g.q) * s.rest_uniform(g.owner, key, g.slot);
}

double CoinTape::envelope(VertexId u, VertexId v) const { return group_of(*index_, u, v).q; }

Graph sample_graph_naive(const ModelParams& p, std::vector<VertexData> vertices) {
    p.validate();
    const CoinTape tape(p, vertices);
    const SlotIndex& s = tape.index();
    std::vector<Edge> edges;
    for (VertexId a = 0; a < s.n(); ++a)
        for (VertexId b = a + 1; b < s.n(); ++b) {
            const double prob = s.probability(a, b);
            if (prob > 0.0 && tape.pair_coin(a, b) < prob) edges.emplace_back(a, b);
        }
    return Graph(s.n(), std::move(edges), std::move(vertices));
}

Graph sample_graph_naive(const ModelParams& p) { return sample_graph_naive(p, sample_vertices(p)); }

namespace {

void sample_owner(const SlotIndex& s, VertexId a, const std::optional<WeightBand>& band, Segments& seg,
                  std::vector<Edge>& out) {
    const double wa = s.weight(a);
    int j_lo = 0;
    int j_hi = s.layer(a);
    if (band) {
        if (band->lo >= 2.0) j_lo = std::ilogb(band->lo);
        if (std::isfinite(band->hi)) j_hi = std::min(j_hi, band->hi < 2.0 ? 0 : std::ilogb(band->hi));
    }
    for (int i = 0; i < s.systems(); ++i) {
        for (int j = j_lo; j <= j_hi; ++j) {
            if (s.layer_size(i, j) == 0) continue;
            for (int t = 0; t <= s.max_class(); ++t) {
                const double q = s.envelope(wa, j, t);
                if (q <= 0.0) continue;
                s.segments(i, j, a, t, seg);
                if (seg.total == 0) continue;
                const std::uint64_t key = SlotIndex::pack(i, t, j);
                // cursor over the ranges; slots only move forward
                std::size_t r = 0;
                std::uint32_t base = 0;
                double pos = s.skip(a, key, 0, q);
                for (std::uint64_t k = 1; pos < seg.total; ++k) {
                    const auto slot = static_cast<std::uint32_t>(pos);
                    while (slot >= base + seg.r[r].size()) base += seg.r[r++].size();
                    const VertexId b = s.member(i, j, seg.r[r].begin + (slot - base));
                    if (b != a && s.owns(a, b) && (!band || band->contains(s.weight(b))) &&
                        s.canonical_system(a, b) == i && s.pair_class(a, b, i) == t) {
                        const double prob = s.probability(a, b);
                        if (prob > 0.0 && q * s.candidate_uniform(a, key, slot) < prob)
                            out.emplace_back(std::min(a, b), std::max(a, b));
                    }
                    pos += 1.0 + s.skip(a, key, k, q);
                }
            }
        }
    }
}

}  // namespace

Graph sample_graph_bucketed(const ModelParams& p, double gamma, std::vector<VertexData> vertices,
                            const SamplerOptions& opt) {
    p.validate();
    strip_width(p.n, gamma);
    const SlotIndex s(p, vertices);

    std::vector<VertexId> owners;
    for (VertexId v = 0; v < s.n(); ++v)
        if (!opt.restrict_to || opt.restrict_to->contains(s.weight(v))) owners.push_back(v);

    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(owners.size() / 64 + 1)));
    std::vector<std::vector<Edge>> parts(threads);
    auto work = [&](int w) {
        const std::size_t lo = owners.size() * w / threads;
        const std::size_t hi = owners.size() * (w + 1) / threads;
        Segments seg;
        for (std::size_t k = lo; k < hi; ++k) sample_owner(s, owners[k], opt.restrict_to, seg, parts[w]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    std::vector<Edge> edges;
    for (auto& part : parts) edges.insert(edges.end(), part.begin(), part.end());
    return Graph(s.n(), std::move(edges), std::move(vertices));
}

Graph sample_graph_bucketed(const ModelParams& p, double gamma, const SamplerOptions& opt) {
    return sample_graph_bucketed(p, gamma, sample_vertices(p), opt);
}

int default_thread_count() {
    if (const char* env = std::getenv("GIRG_LAB_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

}  // namespace girglab
