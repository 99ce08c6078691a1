#pragma once

#include <cstdint>
#include <random>

namespace plcc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of an independent substream identified by a path of integers below a
// master seed, e.g. derive_seed(master, replicate, tree, edge).
template <typename... Ids>
std::uint64_t derive_seed(std::uint64_t master, Ids... ids) {
    std::uint64_t s = splitmix64(master);
    ((s = splitmix64(s ^ splitmix64(static_cast<std::uint64_t>(ids) + 0x632be59bd9b4e019ULL))), ...);
    return s;
}

// Seeded random stream. Every draw the library makes goes through one of these.
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        std::poisson_distribution<std::uint64_t> dist(mean);
        return dist(engine_);
    }

    engine_type& engine() { return engine_; }

private:
    engine_type engine_;
};

}  // namespace plcc
