#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hctgen {

// Deterministic random stream. All bounded draws are implemented on top of
// the raw mt19937_64 output so that results are identical across platforms
// and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives an independent stream from a seed and a path of labels,
    // e.g. {domain, template_name, "replica", "3"}. Same inputs, same stream.
    static Rng derive(std::uint64_t seed, const std::vector<std::string>& path) {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ mix(seed);
        for (const auto& part : path) {
            for (unsigned char c : part) {
                h ^= c;
                h *= 0x100000001b3ULL;
            }
            h ^= 0x9e3779b97f4a7c15ULL;
            h = mix(h);
        }
        return Rng(h);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        if (hi <= lo) return lo;
        const std::uint64_t range = hi - lo + 1;  // range >= 2
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return lo + v % range;
    }

    std::size_t index(std::size_t size) {
        return static_cast<std::size_t>(uniform(0, size ? size - 1 : 0));
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    // Uniform real in [lo, hi).
    double real(double lo, double hi) {
        const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + unit * (hi - lo);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform(0, i - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[index(v.size())];
    }

    // k distinct indices from [0, n), returned sorted ascending.
    std::vector<std::size_t> pick_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        shuffle(all);
        all.resize(std::min(k, n));
        std::sort(all.begin(), all.end());
        return all;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace hctgen
