#pragma once

#include <cstdint>

namespace girglab {

/// Stream tags. Each purpose owns an independent region of the tape.
enum class Purpose : std::uint64_t {
    Weight = 1,
    Position = 2,
    EdgeSkip = 3,
    EdgeCoin = 4,
    EdgeCoinRest = 5,
    Rumor = 6,
    Infection = 7,
    Probe = 8,
    Trial = 9,
};

/// Counter-based random source: every (seed, purpose, address) maps to a fixed
/// uniform value, so results never depend on evaluation order.
class RandomTape {
public:
    explicit RandomTape(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits(Purpose tag, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
        std::uint64_t h = mix(seed_ ^ (static_cast<std::uint64_t>(tag) * 0xD1B54A32D192ED03ull));
        h = mix(h + kGolden + a);
        h = mix(h + kGolden + b);
        h = mix(h + kGolden + c);
        return h;
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform(Purpose tag, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
        return static_cast<double>(bits(tag, a, b, c) >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0,1).
    double open_uniform(Purpose tag, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
        return (static_cast<double>(bits(tag, a, b, c) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound, Purpose tag, std::uint64_t a, std::uint64_t b = 0,
                        std::uint64_t c = 0) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(tag, a, b, c)) * bound) >> 64);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    std::uint64_t seed_;
};

/// Seed for the t-th sub-experiment of a run, e.g. trial t of a Monte Carlo loop.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t t) { return seed + t; }

}  // namespace girglab
