#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace convexdyn {

/*
 * Deterministic, cross-platform RNG: xoshiro256++ seeded through splitmix64.
 * std::mt19937 + std::uniform_real_distribution are avoided on purpose: the
 * distribution's output is not pinned by the standard and reproducibility of
 * artifacts across toolchains is a hard requirement here.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /* uniform in [0, 1), 53-bit resolution */
    double uniform01() { return std::ldexp(static_cast<double>(next() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /* Dirichlet(1,...,1): normalized exponentials; falls back to the uniform
       vector in the (probability-zero) all-zeros corner. */
    std::vector<double> dirichlet(std::size_t m) {
        std::vector<double> g(m);
        double sum = 0.0;
        for (auto& v : g) {
            v = -std::log1p(-uniform01());
            sum += v;
        }
        if (sum <= 0.0) {
            for (auto& v : g) v = 1.0 / static_cast<double>(m);
            return g;
        }
        for (auto& v : g) v /= sum;
        return g;
    }

private:
    std::uint64_t s_[4];
};

}  // namespace convexdyn
